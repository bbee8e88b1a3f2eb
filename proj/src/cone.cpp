#include "hsl/cone.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hsl {

namespace {

IntMatrix adjugate(const IntMatrix& a) {
  const std::size_t n = a.rows();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IntMatrix minor(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // cofactor C_ij goes to adj(j, i)
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      Int cof = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Int(-cof);
    }
  return adj;
}

std::size_t rank_of_subset(std::span<const IntVector> rows,
                           const std::vector<std::size_t>& idx, std::size_t n) {
  if (idx.empty()) return 0;
  std::vector<IntVector> sel;
  sel.reserve(idx.size());
  for (auto i : idx) sel.push_back(rows[i]);
  return rank(IntMatrix::from_rows(sel, n));
}

}  // namespace

std::vector<IntVector> support_forms(std::span<const IntVector> generators,
                                     std::size_t n) {
  if (generators.empty()) throw std::invalid_argument("support_forms: no generators");
  for (const auto& g : generators) {
    if (g.size() != n) throw std::invalid_argument("support_forms: length mismatch");
    if (is_zero(g)) throw std::invalid_argument("support_forms: zero generator");
  }
  if (rank(IntMatrix::from_rows(generators)) != n)
    throw std::invalid_argument("support_forms: generators are not full rank");

  // Dual cone {u : g.u >= 0 for all g}. Start from n independent
  // inequalities, whose cone is simplicial, then add the rest one at a time.
  std::vector<std::size_t> initial;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (initial.size() < n) {
      auto trial = initial;
      trial.push_back(i);
      if (rank_of_subset(generators, trial, n) == trial.size()) {
        initial = std::move(trial);
        continue;
      }
    }
    rest.push_back(i);
  }

  std::vector<IntVector> basis_rows;
  for (auto i : initial) basis_rows.push_back(generators[i]);
  IntMatrix a_s = IntMatrix::from_rows(basis_rows);
  Int det = determinant(a_s);
  IntMatrix adj = adjugate(a_s);
  std::vector<IntVector> rays;
  for (std::size_t k = 0; k < n; ++k) {
    IntVector col = adj.column_vector(k);
    if (sgn(det) < 0) col = scale(Int(-1), col);
    rays.push_back(primitive(col));
  }

  std::vector<std::size_t> processed = initial;
  for (std::size_t idx : rest) {
    const IntVector& g = generators[idx];
    std::vector<IntVector> pos, zero, neg;
    for (auto& r : rays) {
      int s = sgn(dot(g, r));
      (s > 0 ? pos : s == 0 ? zero : neg).push_back(std::move(r));
    }
    std::vector<IntVector> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    if (n >= 2) {
      auto tight = [&](const IntVector& r) {
        std::vector<std::size_t> t;
        for (auto i : processed)
          if (sgn(dot(generators[i], r)) == 0) t.push_back(i);
        return t;
      };
      std::vector<std::vector<std::size_t>> tight_pos, tight_neg;
      for (const auto& r : pos) tight_pos.push_back(tight(r));
      for (const auto& r : neg) tight_neg.push_back(tight(r));
      for (std::size_t a = 0; a < pos.size(); ++a)
        for (std::size_t b = 0; b < neg.size(); ++b) {
          std::vector<std::size_t> common;
          std::set_intersection(tight_pos[a].begin(), tight_pos[a].end(),
                                tight_neg[b].begin(), tight_neg[b].end(),
                                std::back_inserter(common));
          if (common.size() + 2 < n) continue;
          if (rank_of_subset(generators, common, n) != n - 2) continue;
          Int sp = dot(g, pos[a]);
          Int sn = dot(g, neg[b]);
          IntVector combo = subtract(scale(sp, neg[b]), scale(sn, pos[a]));
          next.push_back(primitive(combo));
        }
    }
    rays = std::move(next);
    processed.push_back(idx);
    std::sort(processed.begin(), processed.end());
  }

  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

  // keep only forms whose zero set among the generators has rank n - 1
  std::vector<IntVector> forms;
  for (auto& u : rays) {
    std::vector<std::size_t> z;
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (sgn(dot(generators[i], u)) == 0) z.push_back(i);
    if (rank_of_subset(generators, z, n) == n - 1) forms.push_back(std::move(u));
  }
  return forms;
}

Cone::Cone(std::vector<IntVector> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw std::invalid_argument("Cone: no generators");
  dim_ = generators_.front().size();
  forms_ = hsl::support_forms(generators_, dim_);

  facet_gens_.resize(forms_.size());
  for (std::size_t i = 0; i < forms_.size(); ++i)
    for (std::size_t g = 0; g < generators_.size(); ++g)
      if (sgn(dot(forms_[i], generators_[g])) == 0) facet_gens_[i].push_back(g);

  if (!is_pointed(*this)) return;

  IntVector grading(dim_);
  for (const auto& u : forms_) grading = add(grading, u);

  // generators lying on an extreme ray: tight forms have rank n - 1
  std::vector<IntVector> ray_keys;
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    std::vector<IntVector> tight;
    for (const auto& u : forms_)
      if (sgn(dot(u, generators_[g])) == 0) tight.push_back(u);
    if (rank(IntMatrix::from_rows(tight, dim_)) != dim_ - 1) continue;
    IntVector key = primitive(generators_[g]);
    auto it = std::find(ray_keys.begin(), ray_keys.end(), key);
    if (it == ray_keys.end()) {
      ray_keys.push_back(std::move(key));
      ray_reps_.push_back(g);
      continue;
    }
    std::size_t& rep = ray_reps_[static_cast<std::size_t>(it - ray_keys.begin())];
    Int lg = dot(grading, generators_[g]);
    Int lr = dot(grading, generators_[rep]);
    if (lg < lr || (lg == lr && generators_[g] < generators_[rep])) rep = g;
  }
}

std::vector<Int> Cone::evaluate(std::span<const Int> v) const {
  std::vector<Int> vals;
  vals.reserve(forms_.size());
  for (const auto& u : forms_) vals.push_back(dot(u, v));
  return vals;
}

bool Cone::contains(std::span<const Int> v) const {
  return std::all_of(forms_.begin(), forms_.end(),
                     [&](const IntVector& u) { return sgn(dot(u, v)) >= 0; });
}

bool is_pointed(const Cone& cone) {
  const auto& forms = cone.support_forms();
  if (rank(IntMatrix::from_rows(forms, cone.dim())) != cone.dim()) return false;
  // a generator g with -g in the cone means a line
  for (const auto& g : cone.generators()) {
    bool all_zero = std::all_of(forms.begin(), forms.end(),
                                [&](const IntVector& u) { return sgn(dot(u, g)) == 0; });
    if (all_zero) return false;
  }
  return true;
}

Classification classify(const Cone& cone, std::span<const Int> v) {
  if (v.size() != cone.dim()) throw std::invalid_argument("classify: length mismatch");
  auto vals = cone.evaluate(v);
  std::size_t pos = 0, neg = 0;
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    int s = sgn(vals[i]);
    if (s > 0) ++pos;
    else if (s < 0) ++neg;
    else zeros.push_back(i);
  }
  Classification c;
  if (neg == 0) {
    c.sigma.region = zeros.empty() ? Region::Interior : Region::Boundary;
    if (!zeros.empty()) c.sigma.zero_facets = zeros;
  }
  if (pos == 0) {
    c.neg.region = zeros.empty() ? Region::Interior : Region::Boundary;
    if (!zeros.empty()) c.neg.zero_facets = zeros;
  }
  return c;
}

std::string region_name(const RegionTag& tag, bool negative_side) {
  std::string prefix = negative_side ? "Neg" : "Sigma";
  switch (tag.region) {
    case Region::Interior: return prefix + "Interior";
    case Region::Boundary: return prefix + "Boundary";
    case Region::Outside: return negative_side ? "OutsideNeg" : "OutsideSigma";
  }
  return {};
}

std::vector<IntVector> subcone_rays(const Cone& cone, const SimplicialSubcone& sub) {
  std::vector<IntVector> rays;
  for (auto k : sub.ray_indices)
    rays.push_back(cone.generators()[cone.extreme_ray_reps()[k]]);
  return rays;
}

std::vector<SimplicialSubcone> triangulate(const Cone& cone) {
  const std::size_t n = cone.dim();
  const auto& reps = cone.extreme_ray_reps();
  if (reps.empty()) throw std::invalid_argument("triangulate: cone is not pointed");
  auto ray = [&](std::size_t k) -> const IntVector& { return cone.generators()[reps[k]]; };

  std::vector<std::size_t> first;
  std::vector<std::size_t> pending;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    if (first.size() < n) {
      std::vector<IntVector> trial;
      for (auto j : first) trial.push_back(ray(j));
      trial.push_back(ray(k));
      if (rank(IntMatrix::from_rows(trial)) == trial.size()) {
        first.push_back(k);
        continue;
      }
    }
    pending.push_back(k);
  }
  if (first.size() != n) throw std::invalid_argument("triangulate: cone is not full-dimensional");

  std::vector<std::vector<std::size_t>> simplices{first};
  for (std::size_t r : pending) {
    // boundary facets of the current union are those used by one simplex
    std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> facets;
    for (const auto& s : simplices)
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<std::size_t> f;
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) f.push_back(s[j]);
        std::sort(f.begin(), f.end());
        auto& entry = facets[f];
        ++entry.first;
        entry.second = s[drop];
      }
    std::vector<std::vector<std::size_t>> added;
    for (const auto& [f, entry] : facets) {
      if (entry.first != 1) continue;
      std::vector<IntVector> frows;
      for (auto j : f) frows.push_back(ray(j));
      auto normal = kernel_basis(IntMatrix::from_rows(frows, n)).front();
      int inside = sgn(dot(normal, ray(entry.second)));
      int beyond = sgn(dot(normal, ray(r)));
      if (beyond != 0 && beyond != inside) {
        auto s = f;
        s.push_back(r);
        std::sort(s.begin(), s.end());
        added.push_back(std::move(s));
      }
    }
    simplices.insert(simplices.end(), added.begin(), added.end());
  }

  std::vector<SimplicialSubcone> out;
  for (auto& s : simplices) {
    std::sort(s.begin(), s.end());
    std::vector<IntVector> rows;
    for (auto j : s) rows.push_back(ray(j));
    out.push_back({s, abs(determinant(IntMatrix::from_rows(rows)))});
  }
  return out;
}

namespace {

struct RayFrame {
  IntMatrix rays;
  IntMatrix adj;
  Int det;
};

RayFrame make_frame(std::span<const IntVector> rays) {
  RayFrame f{IntMatrix::from_rows(rays), {}, 0};
  if (f.rays.rows() != f.rays.cols())
    throw std::invalid_argument("parallelepiped: need n rays in rank n");
  f.det = determinant(f.rays);
  if (sgn(f.det) == 0) throw std::invalid_argument("parallelepiped: rays are dependent");
  f.adj = adjugate(f.rays);
  return f;
}

// floor of the rational coordinates of x in the ray basis
std::vector<Int> floor_coordinates(const RayFrame& f, std::span<const Int> x) {
  IntVector num = multiply(x, f.adj);
  std::vector<Int> fl(num.size());
  for (std::size_t k = 0; k < num.size(); ++k)
    mpz_fdiv_q(fl[k].get_mpz_t(), num[k].get_mpz_t(), f.det.get_mpz_t());
  return fl;
}

}  // namespace

std::vector<IntVector> parallelepiped_points(std::span<const IntVector> rays) {
  RayFrame frame = make_frame(rays);
  const std::size_t n = frame.rays.rows();
  // Z^n / (row lattice) has the box [0, h_ii) as representatives when the
  // lattice basis is upper triangular.
  auto hnf = hermite_normal_form(frame.rays);
  std::vector<Int> bounds(n);
  for (std::size_t i = 0; i < n; ++i) bounds[i] = hnf.H(i, i);

  std::vector<IntVector> points;
  IntVector x(n, Int(0));
  for (;;) {
    auto fl = floor_coordinates(frame, x);
    IntVector q = multiply(fl, frame.rays);
    points.push_back(subtract(x, q));
    std::size_t k = 0;
    while (k < n) {
      ++x[k];
      if (x[k] < bounds[k]) break;
      x[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  std::sort(points.begin(), points.end());
  return points;
}

Decomposition decompose(const Cone& cone,
                        std::span<const SimplicialSubcone> triangulation,
                        std::span<const Int> s) {
  if (!cone.contains(s)) throw std::invalid_argument("decompose: point outside the cone");
  for (std::size_t t = 0; t < triangulation.size(); ++t) {
    RayFrame frame = make_frame(subcone_rays(cone, triangulation[t]));
    IntVector num = multiply(s, frame.adj);
    bool inside = std::all_of(num.begin(), num.end(), [&](const Int& x) {
      return sgn(x) == 0 || sgn(x) == sgn(frame.det);
    });
    if (!inside) continue;
    Decomposition d;
    d.subcone = t;
    d.ray_multiples = floor_coordinates(frame, s);
    d.q = multiply(d.ray_multiples, frame.rays);
    d.residue = subtract(s, d.q);
    return d;
  }
  throw std::logic_error("decompose: triangulation does not cover the point");
}

}  // namespace hsl
