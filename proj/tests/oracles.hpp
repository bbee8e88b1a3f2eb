#pragma once

// Slow, obviously-correct reference computations used to check the library.
// None of these call into the normal-form or cone code they are checking.

#include "hsl/lattice.hpp"

#include <gmpxx.h>

#include <optional>
#include <queue>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using hsl::Int;
using hsl::IntVector;

inline Int dot(const IntVector& a, const IntVector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVector add(const IntVector& a, const IntVector& b) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline IntVector scale(const Int& k, const IntVector& a) {
  IntVector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = k * a[i];
  return c;
}

/// All sums of generators whose grade (dot with `grading`) is at most
/// `max_grade`. The grading must be positive on every generator.
inline std::set<IntVector> enumerate_semigroup(const std::vector<IntVector>& gens,
                                               const IntVector& grading, const Int& max_grade) {
  std::set<IntVector> seen;
  std::queue<IntVector> todo;
  IntVector zero(grading.size());
  seen.insert(zero);
  todo.push(zero);
  while (!todo.empty()) {
    IntVector v = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      IntVector w = add(v, g);
      if (dot(grading, w) > max_grade) continue;
      if (seen.insert(w).second) todo.push(w);
    }
  }
  return seen;
}

/// Membership in a numerical semigroup by dynamic programming up to n.
inline bool numerical_member(const std::vector<long>& gens, long n) {
  if (n < 0) return false;
  std::vector<char> reach(static_cast<std::size_t>(n) + 1, 0);
  reach[0] = 1;
  for (long x = 1; x <= n; ++x)
    for (long g : gens)
      if (g <= x && reach[static_cast<std::size_t>(x - g)]) reach[static_cast<std::size_t>(x)] = 1;
  return reach[static_cast<std::size_t>(n)];
}

/// Solution of the square system A^T mu = v over the rationals (rows of
/// `rows` are the columns of the system), or nullopt if singular.
inline std::optional<std::vector<mpq_class>> rational_coordinates(
    const std::vector<IntVector>& rows, const IntVector& v) {
  const std::size_t n = v.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = rows[c][r];
    a[r][n] = v[r];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<mpq_class> mu(n);
  for (std::size_t r = 0; r < n; ++r) {
    mu[r] = a[r][n] / a[r][r];
    mu[r].canonicalize();
  }
  return mu;
}

/// Lattice points of the half-open parallelepiped of `rays`, found by
/// scanning the bounding box of the closed parallelepiped.
inline std::set<IntVector> parallelepiped_by_box(const std::vector<IntVector>& rays) {
  const std::size_t n = rays.size();
  IntVector lo(n), hi(n);
  for (const auto& r : rays)
    for (std::size_t k = 0; k < n; ++k) (r[k] < 0 ? lo[k] : hi[k]) += r[k];
  std::set<IntVector> out;
  IntVector v = lo;
  for (bool more = true; more;) {
    auto mu = rational_coordinates(rays, v);
    bool inside = true;
    for (const auto& m : *mu)
      if (m < 0 || m >= 1) inside = false;
    if (inside) out.insert(v);
    more = false;
    for (std::size_t k = n; k-- > 0;) {
      if (v[k] < hi[k]) {
        ++v[k];
        more = true;
        break;
      }
      v[k] = lo[k];
    }
  }
  return out;
}

/// Determinant by cofactor expansion.
inline Int cofactor_determinant(const std::vector<IntVector>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<IntVector> minor;
    for (std::size_t r = 1; r < n; ++r) {
      IntVector row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    Int term = m[0][c] * cofactor_determinant(minor);
    det += (c % 2 == 0) ? term : Int(-term);
  }
  return det;
}

/// Largest prime factor by trial division (0 for 1).
inline long trial_largest_prime_factor(long n) {
  long best = 0;
  for (long d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      best = d;
      n /= d;
    }
  if (n > 1) best = std::max(best, n);
  return best;
}

inline Int random_int(std::mt19937_64& rng, long lo, long hi) {
  return Int(std::uniform_int_distribution<long>(lo, hi)(rng));
}

}  // namespace oracle
