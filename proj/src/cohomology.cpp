#include "hsl/cohomology.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <thread>

namespace hsl {

std::string to_string(ZeroRoute route) {
  switch (route) {
    case ZeroRoute::InSemigroup: return "in_semigroup";
    case ZeroRoute::FacetLattice: return "facet_lattice";
    case ZeroRoute::ConductorShift: return "conductor_shift";
    case ZeroRoute::Search: return "search";
    case ZeroRoute::Case2Scaling: return "case2_scaling";
    case ZeroRoute::FrobeniusScaling: return "frobenius_scaling";
  }
  return {};
}

std::string to_string(NonzeroReason reason) {
  switch (reason) {
    case NonzeroReason::NegInterior: return "neg_interior";
    case NonzeroReason::BoundaryLattice: return "boundary_lattice";
    case NonzeroReason::TrivialFacets: return "trivial_facets";
  }
  return {};
}

namespace {

Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

IntVector combine(std::span<const IntVector> gens, std::span<const Int> coeff, std::size_t n) {
  IntVector w(n);
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (sgn(coeff[j]) != 0) w = add(w, scale(coeff[j], gens[j]));
  return w;
}

}  // namespace

ZeroClassOracle::ZeroClassOracle(const AffineSemigroup& s, const GammaCertificate& cert,
                                 std::span<const FacetData> facets, Int cap)
    : s_(s), cert_(cert), facets_(facets), cap_(std::move(cap)) {
  if (facets_.size() != s_.cone().facet_count())
    throw std::invalid_argument("ZeroClassOracle: facet data does not match the cone");
  const std::size_t n = s_.rank();
  facet_elements_.resize(facets_.size());
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    const auto& gens = facets_[i].facet_gens;
    using Entry = std::pair<Int, IntVector>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    std::map<IntVector, std::vector<Int>> coeff_of;
    std::vector<Int> zero_coeff(gens.size());
    coeff_of.emplace(IntVector(n), zero_coeff);
    frontier.emplace(Int(0), IntVector(n));
    while (!frontier.empty()) {
      auto [grade, w] = frontier.top();
      frontier.pop();
      const auto base = coeff_of.at(w);
      if (sgn(grade) > 0) facet_elements_[i].push_back({w, base});
      for (std::size_t j = 0; j < gens.size(); ++j) {
        IntVector next = add(w, gens[j]);
        Int g = s_.grade(next);
        if (g > cap_ || coeff_of.count(next)) continue;
        auto c = base;
        ++c[j];
        coeff_of.emplace(next, std::move(c));
        frontier.emplace(std::move(g), std::move(next));
      }
    }
  }
}

ZeroClassResult ZeroClassOracle::operator()(std::span<const Int> v) const {
  const std::size_t n = s_.rank();
  if (v.size() != n) throw DimensionMismatchError("zero_class: length mismatch");

  if (s_.member(v, &cert_)) {
    ZeroVerdict z;
    z.facet = 0;
    z.facet_coefficients.assign(facets_.front().facet_gens.size(), Int(0));
    z.witness = IntVector(n);
    z.route = ZeroRoute::InSemigroup;
    return z;
  }

  const Classification where = classify(s_.cone(), v);
  if (where.neg.region == Region::Interior) {
    NonzeroVerdict nz{NonzeroReason::NegInterior, {}};
    for (std::size_t i = 0; i < facets_.size(); ++i) nz.facets_checked.push_back(i);
    return nz;
  }

  if (where.neg.region == Region::Boundary) {
    // a witness on facet i forces u_i(v) = 0 and v + w in F_i, i.e. v in gr(F_i)
    for (auto i : where.neg.zero_facets) {
      const auto& gens = facets_[i].facet_gens;
      auto c = solve_over_generators(gens, v);
      if (!c) continue;
      ZeroVerdict z;
      z.facet = i;
      for (const auto& cj : *c) z.facet_coefficients.push_back(sgn(cj) < 0 ? Int(-cj) : Int(0));
      z.witness = combine(gens, z.facet_coefficients, n);
      z.route = ZeroRoute::FacetLattice;
      if (!s_.member(add(v, z.witness), &cert_))
        throw std::logic_error("facet lattice witness is not in the semigroup");
      return z;
    }
    return NonzeroVerdict{NonzeroReason::BoundaryLattice, where.neg.zero_facets};
  }

  // v outside -sigma
  const auto vals = s_.cone().evaluate(v);
  std::optional<ZeroVerdict> best;
  Int best_grade;
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    if (vals[i] < cert_.facet_values[i]) continue;
    const auto& wstar = facets_[i].interior_element;
    const auto wvals = s_.cone().evaluate(wstar);
    Int lambda = 0;
    for (std::size_t j = 0; j < facets_.size(); ++j) {
      if (j == i || vals[j] >= cert_.facet_values[j]) continue;
      Int need = ceil_div(cert_.facet_values[j] - vals[j], wvals[j]);
      if (need > lambda) lambda = need;
    }
    IntVector w = scale(lambda, wstar);
    Int g = s_.grade(w);
    if (best && g >= best_grade) continue;
    ZeroVerdict z;
    z.facet = i;
    z.facet_coefficients.assign(facets_[i].facet_gens.size(), lambda);
    z.witness = std::move(w);
    z.route = ZeroRoute::ConductorShift;
    best = std::move(z);
    best_grade = g;
  }
  if (best) {
    if (!s_.member(add(v, best->witness), &cert_))
      throw std::logic_error("conductor shift witness is not in the semigroup");
    return *best;
  }

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < facets_.size(); ++i)
    if (sgn(vals[i]) >= 0) candidates.push_back(i);

  bool all_trivial = std::all_of(candidates.begin(), candidates.end(), [&](std::size_t i) {
    return facets_[i].facet_gens.empty();
  });
  if (all_trivial) return NonzeroVerdict{NonzeroReason::TrivialFacets, candidates};

  for (auto i : candidates)
    for (const auto& e : facet_elements_[i]) {
      if (!s_.member(add(v, e.w), &cert_)) continue;
      return ZeroVerdict{i, e.coefficients, e.w, ZeroRoute::Search};
    }
  return UnknownVerdict{cap_, candidates};
}

std::optional<ZeroVerdict> ZeroClassOracle::case2_witness(std::span<const Int> v,
                                                          const Int& m) const {
  if (m < cert_.m_q || sgn(m) <= 0) return std::nullopt;
  const auto vals = s_.cone().evaluate(v);
  auto it = std::find_if(vals.begin(), vals.end(), [](const Int& x) { return sgn(x) > 0; });
  if (it == vals.end()) return std::nullopt;
  const auto i = static_cast<std::size_t>(it - vals.begin());

  const auto& wstar = facets_[i].interior_element;
  const auto wvals = s_.cone().evaluate(wstar);
  Int lambda = 0;
  for (std::size_t j = 0; j < vals.size(); ++j) {
    if (j == i || sgn(vals[j]) > 0) continue;
    // least lambda with vals[j] + lambda * wvals[j] >= 1
    Int need = ceil_div(1 - vals[j], wvals[j]);
    if (need > lambda) lambda = need;
  }
  ZeroVerdict z;
  z.facet = i;
  z.facet_coefficients.assign(facets_[i].facet_gens.size(), Int(m * lambda));
  z.witness = scale(m * lambda, wstar);
  z.route = ZeroRoute::Case2Scaling;
  if (!s_.member(add(scale(m, v), z.witness), &cert_))
    throw std::logic_error("case 2 witness failed: " + to_string(v));
  return z;
}

bool ZeroClassOracle::check_witness(std::span<const Int> v, const ZeroVerdict& z) const {
  if (z.facet >= facets_.size()) return false;
  const auto& gens = facets_[z.facet].facet_gens;
  if (z.facet_coefficients.size() != gens.size()) return false;
  for (const auto& c : z.facet_coefficients)
    if (sgn(c) < 0) return false;
  if (combine(gens, z.facet_coefficients, s_.rank()) != z.witness) return false;
  if (sgn(dot(s_.cone().support_forms()[z.facet], z.witness)) != 0) return false;
  return s_.member(add(v, z.witness));
}

ZeroClassResult zero_class(const AffineSemigroup& s, const GammaCertificate& cert,
                           std::span<const FacetData> facets, std::span<const Int> v,
                           const Int& cap) {
  return ZeroClassOracle(s, cert, facets, cap)(v);
}

// ---------------------------------------------------------------------------

OrbitReport frobenius_orbit(const ZeroClassOracle& oracle, std::span<const Int> v,
                            const Int& p, unsigned long e_max) {
  if (!is_prime(p)) throw std::invalid_argument("frobenius_orbit: p must be prime");
  const AffineSemigroup& s = oracle.semigroup();
  OrbitReport rep;
  rep.v.assign(v.begin(), v.end());
  rep.p = p;
  rep.region = classify(s.cone(), v);
  const bool outside = rep.region.neg.region == Region::Outside;

  Int pe = 1;
  for (unsigned long e = 0; e <= e_max; ++e, pe *= p) {
    IntVector ve = scale(pe, v);
    std::optional<ZeroClassResult> status;
    if (outside && pe >= oracle.certificate().m_q) {
      auto z = oracle.case2_witness(v, pe);
      if (!z) throw std::logic_error("case 2 witness unavailable outside -sigma");
      status = *z;
    } else {
      status = oracle(ve);
    }
    if (is_unknown_class(*status) && e > 0 && is_zero_class(rep.statuses.back())) {
      const auto& prev = std::get<ZeroVerdict>(rep.statuses.back());
      ZeroVerdict z{prev.facet, {}, scale(p, prev.witness), ZeroRoute::FrobeniusScaling};
      for (const auto& c : prev.facet_coefficients) z.facet_coefficients.push_back(p * c);
      if (!s.member(add(ve, z.witness), &oracle.certificate()))
        throw std::logic_error("scaled Frobenius witness failed");
      status = z;
    }
    rep.statuses.push_back(std::move(*status));
  }

  auto first_zero = std::find_if(rep.statuses.begin(), rep.statuses.end(), is_zero_class);
  auto first_open = std::find_if(rep.statuses.begin(), first_zero, is_unknown_class);
  if (first_zero != rep.statuses.end() && first_open == first_zero) {
    rep.order = {NilpotencyOrder::Kind::Finite,
                 static_cast<unsigned long>(first_zero - rep.statuses.begin()), std::nullopt};
    return rep;
  }
  if (first_zero != rep.statuses.end()) {
    rep.order = {NilpotencyOrder::Kind::Unknown,
                 static_cast<unsigned long>(first_open - rep.statuses.begin()),
                 static_cast<unsigned long>(first_zero - rep.statuses.begin())};
    return rep;
  }

  if (rep.region.neg.region == Region::Interior) {
    // u_i(p^e v) = p^e u_i(v) < 0 for every e
    rep.order = {NilpotencyOrder::Kind::NotNilpotent, 0, std::nullopt};
    return rep;
  }
  if (rep.region.neg.region == Region::Boundary) {
    // p^e v enters gr(F_i) for some e iff it does once p^e carries the full
    // p-part of the exponent of gr(sigma_i cap M) / gr(F_i).
    bool reachable = false;
    for (auto i : rep.region.neg.zero_facets) {
      const auto& f = oracle.facets()[i];
      unsigned long ei = 0;
      if (!f.invariant_factors.empty()) ei = valuation(f.invariant_factors.back(), p);
      Int pei;
      mpz_pow_ui(pei.get_mpz_t(), p.get_mpz_t(), ei);
      if (solve_over_generators(f.facet_gens, scale(pei, v))) reachable = true;
    }
    if (!reachable) {
      rep.order = {NilpotencyOrder::Kind::NotNilpotent, 0, std::nullopt};
      return rep;
    }
  }
  unsigned long open = first_open == rep.statuses.end()
                           ? e_max + 1
                           : static_cast<unsigned long>(first_open - rep.statuses.begin());
  rep.order = {NilpotencyOrder::Kind::Unknown, open, std::nullopt};
  return rep;
}

std::optional<unsigned long> theoretical_bound(const GammaCertificate& cert, const Int& nq,
                                               const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("theoretical_bound: p must be prime");
  if (p <= nq) return std::nullopt;
  unsigned long e = 0;
  Int pe = 1;
  while (pe < cert.m_q) {
    pe *= p;
    ++e;
  }
  return e;
}

HslReport empirical_hsl(const ZeroClassOracle& oracle, const Int& nq, const Int& p,
                        long window, unsigned long e_max, unsigned threads) {
  if (window < 0) throw std::invalid_argument("empirical_hsl: negative window");
  const AffineSemigroup& s = oracle.semigroup();
  const std::size_t n = s.rank();

  HslReport rep;
  rep.p = p;
  rep.window = window;
  rep.e_max = e_max;
  rep.cap = oracle.cap();
  rep.m_q = oracle.certificate().m_q;
  rep.n_q = nq;
  rep.theoretical_bound = theoretical_bound(oracle.certificate(), nq, p);

  std::vector<IntVector> degrees;
  IntVector v(n, Int(-window));
  for (bool more = true; more;) {
    degrees.push_back(v);
    more = false;
    for (std::size_t k = n; k-- > 0;) {
      if (v[k] < window) {
        ++v[k];
        more = true;
        break;
      }
      v[k] = -window;
    }
  }

  std::vector<OrbitReport> orbits(degrees.size());
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, degrees.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < degrees.size(); k += workers)
          orbits[k] = frobenius_orbit(oracle, degrees[k], p, e_max);
      });
  }

  for (const auto& orb : orbits) {
    ++rep.classes;
    RegionStats* stats = &rep.outside_neg;
    if (orb.region.neg.region == Region::Interior) stats = &rep.neg_interior;
    else if (orb.region.neg.region == Region::Boundary) stats = &rep.neg_boundary;
    ++stats->classes;
    switch (orb.order.kind) {
      case NilpotencyOrder::Kind::Finite:
        ++stats->nilpotent;
        if (orb.order.value == 0) ++stats->zero;
        stats->max_order = std::max(stats->max_order, orb.order.value);
        rep.empirical_max = std::max(rep.empirical_max, orb.order.value);
        if (rep.theoretical_bound && orb.order.value > *rep.theoretical_bound)
          rep.violations.emplace_back(orb.v, orb.order.value);
        break;
      case NilpotencyOrder::Kind::NotNilpotent:
        ++stats->not_nilpotent;
        break;
      case NilpotencyOrder::Kind::Unknown:
        ++stats->unresolved;
        rep.unresolved.push_back(orb.v);
        // not certified nonzero up to value, so the order is at least value
        if (rep.theoretical_bound && orb.order.upper_bound && orb.order.value > *rep.theoretical_bound)
          rep.violations.emplace_back(orb.v, orb.order.value);
        break;
    }
    if (!rep.theoretical_bound && orb.region.neg.region == Region::Boundary) {
      bool flagged = false;
      for (auto i : orb.region.neg.zero_facets)
        for (const auto& d : oracle.facets()[i].invariant_factors)
          if (mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t())) flagged = true;
      if (flagged) rep.small_characteristic_flags.push_back(orb.v);
    }
  }
  return rep;
}

unsigned long hsl_exact_dim1(const AffineSemigroup& s, const Int& p) {
  if (s.rank() != 1) throw DimensionMismatchError("hsl_exact_dim1 needs a rank-1 semigroup");
  if (!is_prime(p)) throw std::invalid_argument("hsl_exact_dim1: p must be prime");
  // the support form of a rank-1 cone is +-1 and equals the generator w of M in sigma
  const IntVector& w = s.cone().support_forms().front();
  unsigned long e = 0;
  Int pe = 1;
  while (!s.member(scale(pe, w))) {
    pe *= p;
    ++e;
  }
  return e;
}

}  // namespace hsl
