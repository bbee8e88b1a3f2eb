#include "hsl/lattice.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hsl {

IntVector make_vector(std::initializer_list<long> entries) {
  IntVector v;
  v.reserve(entries.size());
  for (long e : entries) v.emplace_back(e);
  return v;
}

Int dot(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IntVector add(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: length mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVector subtract(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("subtract: length mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

IntVector scale(const Int& c, std::span<const Int> a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool is_zero(std::span<const Int> a) {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return sgn(x) == 0; });
}

std::string to_string(std::span<const Int> a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ',';
    os << a[i].get_str();
  }
  os << ')';
  return os.str();
}

std::size_t IntVectorHash::operator()(const IntVector& v) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
  for (const Int& x : v) {
    auto k = static_cast<std::size_t>(mpz_get_si(x.get_mpz_t()));
    h ^= std::hash<std::size_t>{}(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged rows");
    for (long e : r) data_.emplace_back(e);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows,
                               std::size_t cols_if_empty) {
  std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

IntVector IntMatrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return {s.begin(), s.end()};
}

IntVector IntMatrix::column_vector(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

IntVector multiply(std::span<const Int> row, const IntMatrix& m) {
  if (row.size() != m.rows()) throw std::invalid_argument("multiply: shape mismatch");
  IntVector r(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (sgn(row[k]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += row[k] * m(k, j);
  }
  return r;
}

IntVector multiply(const IntMatrix& m, std::span<const Int> column) {
  if (column.size() != m.cols()) throw std::invalid_argument("multiply: shape mismatch");
  IntVector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) r[i] = dot(m.row(i), column);
  return r;
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

// row[dst] -= q * row[src]
void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (sgn(q) == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= q * m(src, c);
}

void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& q) {
  if (sgn(q) == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= q * m(r, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (auto& x : m.row(r)) x = -x;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int trunc_div(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteDecomposition hermite_normal_form(const IntMatrix& a) {
  HermiteDecomposition out{a, IntMatrix::identity(a.rows()), 0};
  IntMatrix& h = out.H;
  IntMatrix& u = out.U;
  const std::size_t m = h.rows();
  std::size_t pivot = 0;

  for (std::size_t col = 0; col < h.cols() && pivot < m; ++col) {
    for (;;) {
      // smallest nonzero magnitude at or below the pivot row
      std::optional<std::size_t> best;
      for (std::size_t r = pivot; r < m; ++r) {
        if (sgn(h(r, col)) == 0) continue;
        if (!best || abs(h(r, col)) < abs(h(*best, col))) best = r;
      }
      if (!best) break;
      h.swap_rows(pivot, *best);
      u.swap_rows(pivot, *best);
      bool clear = true;
      for (std::size_t r = pivot + 1; r < m; ++r) {
        if (sgn(h(r, col)) == 0) continue;
        Int q = trunc_div(h(r, col), h(pivot, col));
        row_axpy(h, r, pivot, q);
        row_axpy(u, r, pivot, q);
        if (sgn(h(r, col)) != 0) clear = false;
      }
      if (clear) break;
    }
    if (sgn(h(pivot, col)) == 0) continue;
    if (sgn(h(pivot, col)) < 0) {
      negate_row(h, pivot);
      negate_row(u, pivot);
    }
    for (std::size_t r = 0; r < pivot; ++r) {
      Int q = floor_div(h(r, col), h(pivot, col));
      row_axpy(h, r, pivot, q);
      row_axpy(u, r, pivot, q);
    }
    ++pivot;
  }
  out.rank = pivot;
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  SmithDecomposition out{a, IntMatrix::identity(a.rows()),
                         IntMatrix::identity(a.cols()), {}};
  IntMatrix& d = out.D;
  IntMatrix& u = out.U;
  IntMatrix& v = out.V;
  const std::size_t m = d.rows(), n = d.cols();
  const std::size_t diag = std::min(m, n);

  for (std::size_t t = 0; t < diag; ++t) {
    // move the smallest nonzero entry of the trailing block to (t, t)
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t r = t; r < m; ++r)
      for (std::size_t c = t; c < n; ++c)
        if (sgn(d(r, c)) != 0 &&
            (!best || abs(d(r, c)) < abs(d(best->first, best->second))))
          best = {r, c};
    if (!best) break;
    d.swap_rows(t, best->first);
    u.swap_rows(t, best->first);
    d.swap_cols(t, best->second);
    v.swap_cols(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (sgn(d(r, t)) == 0) continue;
        Int q = trunc_div(d(r, t), d(t, t));
        row_axpy(d, r, t, q);
        row_axpy(u, r, t, q);
        if (sgn(d(r, t)) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (sgn(d(t, c)) == 0) continue;
        Int q = trunc_div(d(t, c), d(t, t));
        col_axpy(d, c, t, q);
        col_axpy(v, c, t, q);
        if (sgn(d(t, c)) != 0) clean = false;
      }
      if (!clean) {
        // a nonzero remainder is smaller than the pivot; bring it in
        std::pair<std::size_t, std::size_t> pos{t, t};
        for (std::size_t r = t + 1; r < m; ++r)
          if (sgn(d(r, t)) != 0 && abs(d(r, t)) < abs(d(pos.first, pos.second)))
            pos = {r, t};
        for (std::size_t c = t + 1; c < n; ++c)
          if (sgn(d(t, c)) != 0 && abs(d(t, c)) < abs(d(pos.first, pos.second)))
            pos = {t, c};
        d.swap_rows(t, pos.first);
        u.swap_rows(t, pos.first);
        d.swap_cols(t, pos.second);
        v.swap_cols(t, pos.second);
        continue;
      }
      // divisibility: pivot must divide the whole trailing block
      std::optional<std::size_t> offending;
      for (std::size_t r = t + 1; r < m && !offending; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (!mpz_divisible_p(d(r, c).get_mpz_t(), d(t, t).get_mpz_t())) {
            offending = r;
            break;
          }
      if (!offending) break;
      row_axpy(d, t, *offending, Int(-1));
      row_axpy(u, t, *offending, Int(-1));
    }
    if (sgn(d(t, t)) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
  }
  out.invariant_factors.reserve(diag);
  for (std::size_t t = 0; t < diag; ++t) out.invariant_factors.push_back(d(t, t));
  return out;
}

std::size_t rank(const IntMatrix& a) {
  if (a.empty()) return 0;
  return hermite_normal_form(a).rank;
}

Int determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant: not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(m(r, k)) == 0) ++r;
      if (r == n) return 0;
      m.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<IntVector> kernel_basis(const IntMatrix& a) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) {
    std::vector<IntVector> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(IntMatrix::identity(n).row_vector(i));
    return basis;
  }
  auto hnf = hermite_normal_form(a.transpose());
  std::vector<IntVector> raw;
  for (std::size_t r = hnf.rank; r < n; ++r) raw.push_back(hnf.U.row_vector(r));
  if (raw.empty()) return raw;
  // canonical representative of the same lattice
  auto canon = hermite_normal_form(IntMatrix::from_rows(raw));
  std::vector<IntVector> basis;
  for (std::size_t r = 0; r < canon.rank; ++r) basis.push_back(canon.H.row_vector(r));
  return basis;
}

namespace {

// y with y * H = v for H in Hermite form with `rank` nonzero rows.
std::optional<IntVector> back_solve(const IntMatrix& h, std::size_t rank,
                                    std::span<const Int> v) {
  IntVector y(rank);
  std::size_t col = 0;
  for (std::size_t j = 0; j < rank; ++j) {
    while (sgn(h(j, col)) == 0) ++col;
    Int rest = v[col];
    for (std::size_t i = 0; i < j; ++i) rest -= y[i] * h(i, col);
    if (!mpz_divisible_p(rest.get_mpz_t(), h(j, col).get_mpz_t())) return std::nullopt;
    mpz_divexact(y[j].get_mpz_t(), rest.get_mpz_t(), h(j, col).get_mpz_t());
  }
  IntVector check(h.cols());
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t c = 0; c < h.cols(); ++c) check[c] += y[i] * h(i, c);
  if (!std::equal(check.begin(), check.end(), v.begin(), v.end())) return std::nullopt;
  return y;
}

}  // namespace

std::optional<IntVector> solve_in_lattice(std::span<const IntVector> basis,
                                          std::span<const Int> v) {
  if (basis.empty()) {
    if (is_zero(v)) return IntVector{};
    return std::nullopt;
  }
  auto hnf = hermite_normal_form(IntMatrix::from_rows(basis));
  if (hnf.rank != basis.size())
    throw std::invalid_argument("solve_in_lattice: basis is linearly dependent");
  auto y = back_solve(hnf.H, hnf.rank, v);
  if (!y) return std::nullopt;
  return multiply(*y, hnf.U);
}

std::optional<IntVector> solve_over_generators(
    std::span<const IntVector> generators, std::span<const Int> v) {
  if (generators.empty()) {
    if (is_zero(v)) return IntVector{};
    return std::nullopt;
  }
  auto hnf = hermite_normal_form(IntMatrix::from_rows(generators));
  auto y = back_solve(hnf.H, hnf.rank, v);
  if (!y) return std::nullopt;
  IntVector c(generators.size());
  for (std::size_t i = 0; i < hnf.rank; ++i)
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += (*y)[i] * hnf.U(i, j);
  return c;
}

IntVector primitive(std::span<const Int> v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  if (sgn(g) == 0) throw std::invalid_argument("primitive: zero vector");
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    mpz_divexact(r[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// Factoring

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

unsigned long valuation(const Int& n, const Int& p) {
  if (sgn(n) == 0) throw std::invalid_argument("valuation: zero");
  if (p < 2) throw std::invalid_argument("valuation: base must be >= 2");
  Int m = abs(n);
  unsigned long e = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

namespace {

constexpr unsigned long kTrialBound = 10000;

// Brent's variant of Pollard rho. Deterministic: the polynomial constant
// and starting point run through a fixed sequence.
Int rho_split(const Int& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, q = 1, g = 1, ys;
    const unsigned long block = 128;
    unsigned long r = 1;
    auto f = [&](const Int& z) {
      Int t = z * z + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y);
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += block;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_large_factors(const Int& n, Int& best) {
  if (n == 1) return;
  if (is_prime(n)) {
    if (n > best) best = n;
    return;
  }
  Int d = rho_split(n);
  collect_large_factors(d, best);
  collect_large_factors(n / d, best);
}

}  // namespace

Int largest_prime_factor(const Int& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("largest_prime_factor: n must be >= 1");
  Int m = n;
  Int best = 0;
  for (unsigned long d = 2; d <= kTrialBound && d * d <= m; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      best = d;
      do {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
      } while (mpz_divisible_ui_p(m.get_mpz_t(), d));
    }
  }
  collect_large_factors(m, best);
  return best;
}

}  // namespace hsl
