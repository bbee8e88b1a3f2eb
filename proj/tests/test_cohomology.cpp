#include "hsl/cohomology.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace hsl;

namespace {

std::vector<IntVector> vecs(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> out;
  for (auto r : rows) out.push_back(make_vector(r));
  return out;
}

const auto kPlane = vecs({{5, 1}, {4, 1}, {1, 3}, {1, 4}});
const auto kNq2 = vecs({{2, 0}, {1, 1}, {1, 2}});
const auto kOctant = vecs({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}, {1, 0, 1}, {0, 1, 1}});

// Everything an oracle needs, owned in one place.
struct Fixture {
  AffineSemigroup s;
  GammaCertificate cert;
  std::vector<FacetData> facets;
  Int nq;

  explicit Fixture(const std::vector<IntVector>& gens)
      : s(AffineSemigroup::build(gens)), cert(find_gamma(s)), facets(all_facet_data(s)),
        nq(n_q(facets)) {}

  ZeroClassOracle oracle(const Int& cap) const { return ZeroClassOracle(s, cert, facets, cap); }
  ZeroClassOracle oracle() const { return oracle(10 * cert.m_q); }
};

std::vector<IntVector> box(std::size_t n, long radius) {
  std::vector<IntVector> out;
  IntVector v(n, Int(-radius));
  for (bool more = true; more;) {
    out.push_back(v);
    more = false;
    for (std::size_t k = n; k-- > 0;) {
      if (v[k] < radius) {
        ++v[k];
        more = true;
        break;
      }
      v[k] = -radius;
    }
  }
  return out;
}

// Exhaustive witness search: facet elements of grade <= cap, membership from
// enumeration of Q up to `top`.
bool brute_zero(const Fixture& f, const IntVector& v, const Int& cap,
                const std::set<IntVector>& q) {
  const auto& forms = f.s.cone().support_forms();
  for (std::size_t i = 0; i < forms.size(); ++i) {
    std::vector<IntVector> facet_gens;
    for (const auto& g : f.s.generators())
      if (oracle::dot(forms[i], g) == 0) facet_gens.push_back(g);
    for (const auto& w : oracle::enumerate_semigroup(facet_gens, f.s.grading(), cap))
      if (q.count(oracle::add(v, w))) return true;
  }
  return false;
}

}  // namespace

TEST(ZeroClass, RoutesOnPlane) {
  Fixture f(kPlane);
  auto oracle = f.oracle();

  auto in_q = oracle(make_vector({5, 1}));
  ASSERT_TRUE(is_zero_class(in_q));
  EXPECT_EQ(std::get<ZeroVerdict>(in_q).route, ZeroRoute::InSemigroup);

  auto interior = oracle(make_vector({-1, -1}));
  ASSERT_TRUE(is_nonzero_class(interior));
  EXPECT_EQ(std::get<NonzeroVerdict>(interior).reason, NonzeroReason::NegInterior);

  // on the facet u_1 = 0, and (5,1) generates that facet's group
  auto edge = oracle(make_vector({-5, -1}));
  ASSERT_TRUE(is_zero_class(edge));
  EXPECT_EQ(std::get<ZeroVerdict>(edge).route, ZeroRoute::FacetLattice);
  EXPECT_EQ(std::get<ZeroVerdict>(edge).witness, make_vector({5, 1}));

  auto outside = oracle(make_vector({-1, 0}));
  ASSERT_TRUE(is_zero_class(outside));
  EXPECT_TRUE(oracle.check_witness(make_vector({-1, 0}), std::get<ZeroVerdict>(outside)));
}

TEST(ZeroClass, BoundaryOutsideFacetGroup) {
  Fixture f(kNq2);
  auto oracle = f.oracle();
  // u = (0,1) vanishes on (-1,0); the facet group there is 2Z x 0
  auto r = oracle(make_vector({-1, 0}));
  ASSERT_TRUE(is_nonzero_class(r));
  EXPECT_EQ(std::get<NonzeroVerdict>(r).reason, NonzeroReason::BoundaryLattice);
  EXPECT_TRUE(is_zero_class(oracle(make_vector({-2, 0}))));
}

TEST(ZeroClass, NumericalSemigroup) {
  Fixture f(vecs({{3}, {5}}));
  auto oracle = f.oracle();
  EXPECT_EQ(std::get<NonzeroVerdict>(oracle(make_vector({-1}))).reason, NonzeroReason::NegInterior);
  // the only facet is {0}: nothing can be added to 1, 2, 4, 7
  for (long x : {1, 2, 4, 7}) {
    auto r = oracle(make_vector({x}));
    ASSERT_TRUE(is_nonzero_class(r)) << x;
    EXPECT_EQ(std::get<NonzeroVerdict>(r).reason, NonzeroReason::TrivialFacets);
  }
  for (long x : {0, 3, 5, 6, 8, 9, 100}) EXPECT_TRUE(is_zero_class(oracle(make_vector({x})))) << x;
}

TEST(ZeroClass, WitnessAndRegionSoundness) {
  for (const auto& gens : {kPlane, kNq2, kOctant}) {
    Fixture f(gens);
    auto oracle = f.oracle();
    auto pts = box(f.s.rank(), f.s.rank() == 3 ? 3 : 10);
    Int top = 0;
    for (const auto& v : pts) top = std::max(top, f.s.grade(v));
    std::set<IntVector> q;
    bool enumerated = false;
    for (const auto& v : pts) {
      auto r = oracle(v);
      auto vals = f.s.cone().evaluate(v);
      if (auto* z = std::get_if<ZeroVerdict>(&r)) {
        ASSERT_TRUE(oracle.check_witness(v, *z)) << to_string(v);
        if (!enumerated) {
          q = oracle::enumerate_semigroup(f.s.generators(), f.s.grading(), top + 40 * f.cert.m_q);
          enumerated = true;
        }
        IntVector sum = oracle::add(v, z->witness);
        if (f.s.grade(sum) <= top + 40 * f.cert.m_q) EXPECT_EQ(q.count(sum), 1u) << to_string(v);
      } else if (auto* nz = std::get_if<NonzeroVerdict>(&r)) {
        if (nz->reason == NonzeroReason::NegInterior)
          for (const auto& x : vals) EXPECT_LT(x, 0);
        if (nz->reason == NonzeroReason::BoundaryLattice)
          for (const auto& x : vals) EXPECT_LE(x, 0);
      }
    }
  }
}

TEST(ZeroClass, AgreesWithExhaustiveSearch) {
  for (const auto& gens : {kNq2, kOctant}) {
    Fixture f(gens);
    const Int cap = 30;
    auto oracle = f.oracle(cap);
    auto pts = box(f.s.rank(), f.s.rank() == 3 ? 2 : 6);
    Int top = cap;
    for (const auto& v : pts) top = std::max(top, Int(f.s.grade(v) + cap));
    auto q = oracle::enumerate_semigroup(f.s.generators(), f.s.grading(), top);
    for (const auto& v : pts) {
      auto r = oracle(v);
      if (is_unknown_class(r)) continue;
      bool brute = brute_zero(f, v, cap, q);
      if (is_nonzero_class(r)) EXPECT_FALSE(brute) << to_string(v);
      if (is_zero_class(r)) {
        const auto& z = std::get<ZeroVerdict>(r);
        EXPECT_TRUE(oracle.check_witness(v, z));
        // witnesses above the cap are outside what the search can see
        if (f.s.grade(z.witness) <= cap) EXPECT_TRUE(brute) << to_string(v);
      }
    }
  }
}

TEST(ZeroClass, Case2Witness) {
  Fixture f(kPlane);
  auto oracle = f.oracle();
  for (const auto& v : box(2, 8)) {
    auto where = classify(f.s.cone(), v);
    auto z = oracle.case2_witness(v, f.cert.m_q);
    if (where.neg.region == Region::Outside) {
      ASSERT_TRUE(z.has_value()) << to_string(v);
      EXPECT_TRUE(oracle.check_witness(scale(f.cert.m_q, v), *z));
    } else {
      EXPECT_FALSE(z.has_value());
    }
  }
  EXPECT_FALSE(oracle.case2_witness(make_vector({1, 0}), f.cert.m_q - 1).has_value());
}

TEST(Frobenius, NumericalOrbit) {
  Fixture f(vecs({{3}, {5}}));
  auto oracle = f.oracle();
  auto orb = frobenius_orbit(oracle, make_vector({1}), Int(2), 5);
  EXPECT_EQ(orb.order.kind, NilpotencyOrder::Kind::Finite);
  EXPECT_EQ(orb.order.value, 3u);
  ASSERT_EQ(orb.statuses.size(), 6u);
  EXPECT_TRUE(is_nonzero_class(orb.statuses[2]));
  EXPECT_TRUE(is_zero_class(orb.statuses[3]));
  auto neg = frobenius_orbit(oracle, make_vector({-1}), Int(2), 5);
  EXPECT_EQ(neg.order.kind, NilpotencyOrder::Kind::NotNilpotent);
  EXPECT_THROW(frobenius_orbit(oracle, make_vector({1}), Int(4), 5), std::invalid_argument);
}

TEST(Frobenius, BoundaryNeedsTheRightPrime) {
  Fixture f(kNq2);
  auto oracle = f.oracle();
  auto two = frobenius_orbit(oracle, make_vector({-1, 0}), Int(2), 4);
  EXPECT_EQ(two.order.kind, NilpotencyOrder::Kind::Finite);
  EXPECT_EQ(two.order.value, 1u);
  auto three = frobenius_orbit(oracle, make_vector({-1, 0}), Int(3), 4);
  EXPECT_EQ(three.order.kind, NilpotencyOrder::Kind::NotNilpotent);
}

// 500 random nilpotent classes: once zero, every further Frobenius power is
// zero, witnessed by the scaled witness.
TEST(FrobeniusProperty, WitnessScalingMonotone) {
  std::mt19937_64 rng(1234);
  std::vector<std::unique_ptr<Fixture>> fixtures;
  for (const auto& g : {kPlane, kNq2, kOctant}) fixtures.push_back(std::make_unique<Fixture>(g));
  std::vector<ZeroClassOracle> oracles;
  for (const auto& f : fixtures) oracles.push_back(f->oracle());
  const long primes[] = {2, 3, 5, 7};

  int done = 0;
  while (done < 500) {
    std::size_t k = rng() % fixtures.size();
    const auto& f = *fixtures[k];
    const auto& oracle = oracles[k];
    IntVector v(f.s.rank());
    for (auto& x : v) x = oracle::random_int(rng, -12, 12);
    Int p = primes[rng() % 4];
    auto orb = frobenius_orbit(oracle, v, p, 4);
    if (orb.order.kind != NilpotencyOrder::Kind::Finite) continue;
    ++done;
    for (std::size_t e = orb.order.value; e + 1 < orb.statuses.size(); ++e) {
      const auto& z = std::get<ZeroVerdict>(orb.statuses[e]);
      ASSERT_TRUE(is_zero_class(orb.statuses[e + 1]));
      ZeroVerdict scaled{z.facet, {}, scale(p, z.witness), ZeroRoute::FrobeniusScaling};
      for (const auto& c : z.facet_coefficients) scaled.facet_coefficients.push_back(p * c);
      Int pe;
      mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e + 1);
      ASSERT_TRUE(oracle.check_witness(scale(pe, v), scaled)) << to_string(v) << " e=" << e;
    }
  }
}

TEST(Bound, TheoreticalBound) {
  auto s = AffineSemigroup::build(kPlane);
  auto cert = *verify_gamma(s, make_vector({14, 9}));
  EXPECT_EQ(theoretical_bound(cert, 0, 2), 6u);   // 2^6 = 64 >= 47 > 32
  EXPECT_EQ(theoretical_bound(cert, 0, 3), 4u);   // 81 >= 47 > 27
  EXPECT_EQ(theoretical_bound(cert, 0, 47), 1u);
  EXPECT_EQ(theoretical_bound(cert, 0, 53), 1u);
  EXPECT_FALSE(theoretical_bound(cert, 53, 53).has_value());
  EXPECT_THROW(theoretical_bound(cert, 0, 6), std::invalid_argument);
  cert.m_q = 1;
  EXPECT_EQ(theoretical_bound(cert, 0, 2), 0u);
}

TEST(Dim1, ExactValues) {
  auto a = AffineSemigroup::build(vecs({{3}, {5}}));
  EXPECT_EQ(hsl_exact_dim1(a, 2), 3u);
  EXPECT_EQ(hsl_exact_dim1(a, 3), 1u);
  auto b = AffineSemigroup::build(vecs({{2}, {3}}));
  EXPECT_EQ(hsl_exact_dim1(b, 5), 1u);
  EXPECT_EQ(hsl_exact_dim1(b, 7), 1u);
  // negative orientation: the generator of M in sigma is -1
  auto c = AffineSemigroup::build(vecs({{-3}, {-5}}));
  EXPECT_EQ(hsl_exact_dim1(c, 2), 3u);
  EXPECT_THROW(hsl_exact_dim1(AffineSemigroup::build(kPlane), 2), DimensionMismatchError);
}

TEST(Dim1, AgreesWithEnumeration) {
  for (const auto& gens : std::vector<std::vector<long>>{{3, 5}, {2, 3}, {4, 7, 9}, {5, 6, 13}}) {
    std::vector<IntVector> g;
    for (long x : gens) g.push_back(make_vector({x}));
    auto s = AffineSemigroup::build(g);
    for (long p : {2, 3, 5, 7, 11, 13}) {
      unsigned long e = 0;
      long pe = 1;
      while (!oracle::numerical_member(gens, pe)) {
        pe *= p;
        ++e;
      }
      EXPECT_EQ(hsl_exact_dim1(s, p), e) << p;
    }
  }
}

TEST(Empirical, MatchesDim1) {
  for (const auto& gens : {vecs({{3}, {5}}), vecs({{2}, {3}}), vecs({{4}, {7}, {9}})}) {
    Fixture f(gens);
    auto oracle = f.oracle();
    for (long p : {2, 3, 5, 7, 11}) {
      auto rep = empirical_hsl(oracle, f.nq, p, 20, 8, 2);
      EXPECT_EQ(rep.empirical_max, hsl_exact_dim1(f.s, p));
      EXPECT_TRUE(rep.violations.empty());
      EXPECT_TRUE(rep.unresolved.empty());
    }
  }
}

TEST(Empirical, PlaneHasNoViolations) {
  Fixture f(kPlane);
  auto oracle = f.oracle();
  for (long p : {2, 3, 5, 7, 53}) {
    auto bound = theoretical_bound(f.cert, f.nq, p);
    auto rep = empirical_hsl(oracle, f.nq, p, 6, *bound + 2, 1);
    EXPECT_EQ(rep.classes, 169u);
    EXPECT_EQ(rep.neg_interior.classes + rep.neg_boundary.classes + rep.outside_neg.classes, 169u);
    EXPECT_EQ(rep.neg_interior.not_nilpotent, rep.neg_interior.classes);
    EXPECT_TRUE(rep.violations.empty());
    EXPECT_LE(rep.empirical_max, *bound);
  }
}

TEST(Empirical, DegenerateWindowAndDeterminism) {
  Fixture f(kOctant);
  auto oracle = f.oracle();
  auto zero = empirical_hsl(oracle, f.nq, 2, 0, 3);
  EXPECT_EQ(zero.classes, 1u);
  EXPECT_EQ(zero.empirical_max, 0u);

  auto one = empirical_hsl(oracle, f.nq, 3, 2, 4, 1);
  auto many = empirical_hsl(oracle, f.nq, 3, 2, 4, 5);
  EXPECT_EQ(one.empirical_max, many.empirical_max);
  EXPECT_EQ(one.unresolved, many.unresolved);
  EXPECT_EQ(one.violations, many.violations);
  EXPECT_EQ(one.outside_neg.zero, many.outside_neg.zero);
  EXPECT_THROW(empirical_hsl(oracle, f.nq, 3, -1, 4), std::invalid_argument);
}

TEST(Empirical, SmallCharacteristicFlags) {
  Fixture f(kNq2);
  auto oracle = f.oracle();
  auto rep = empirical_hsl(oracle, f.nq, 2, 3, 6);
  EXPECT_FALSE(rep.theoretical_bound.has_value());
  EXPECT_TRUE(rep.violations.empty());
  // (-1,0), (-2,0), (-3,0) sit on the facet whose factor is 2
  EXPECT_NE(std::find(rep.small_characteristic_flags.begin(), rep.small_characteristic_flags.end(),
                      make_vector({-1, 0})),
            rep.small_characteristic_flags.end());
  auto odd = empirical_hsl(oracle, f.nq, 3, 3, 6);
  EXPECT_TRUE(odd.small_characteristic_flags.empty());
}
