#pragma once

// Monomial classes [x^v] in the top local cohomology H^n_m(k[Q]) and the
// Frobenius action on them, which multiplies degrees by p.
//
// Reduction to monomials: H^n_m(k[Q]) is a quotient of k[M], so every
// M-graded piece is at most one-dimensional and is spanned by the class of
// a single monomial x^v. Frobenius sends degree v to degree p v, which is
// injective on degrees, so a class is killed by F^e iff each of its
// monomial components is. The nilpotency behaviour of the whole module is
// therefore determined degree by degree, which is what this module
// measures.
//
// A monomial class is zero iff v + w lies in Q for some facet i and some w
// in the facet semigroup F_i = sigma_i intersected with Q.

#include "hsl/semigroup.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hsl {

enum class ZeroRoute {
  InSemigroup,       // v itself is in Q, w = 0
  FacetLattice,      // boundary of -sigma, v in the group of F_i
  ConductorShift,    // v + lambda w_i* lands in gamma + Q_sat
  Search,            // bounded enumeration of F_i
  Case2Scaling,      // m (v + lambda w_i*) in Q for m >= m_Q
  FrobeniusScaling,  // p times the witness of the previous Frobenius power
};

struct ZeroVerdict {
  std::size_t facet = 0;
  /// w = sum_j facet_coefficients[j] * facet_gens[j], all coefficients >= 0.
  std::vector<Int> facet_coefficients;
  IntVector witness;
  ZeroRoute route = ZeroRoute::InSemigroup;
};

enum class NonzeroReason {
  NegInterior,      // u_i(v) < 0 for all i, so u_i(v + w) < 0 for any facet witness
  BoundaryLattice,  // v on the boundary of -sigma but in no zero facet's group
  TrivialFacets,    // every candidate facet semigroup is {0} and v is not in Q
};

struct NonzeroVerdict {
  NonzeroReason reason = NonzeroReason::NegInterior;
  std::vector<std::size_t> facets_checked;
};

struct UnknownVerdict {
  Int cap;
  std::vector<std::size_t> facets_searched;
};

using ZeroClassResult = std::variant<ZeroVerdict, NonzeroVerdict, UnknownVerdict>;

inline bool is_zero_class(const ZeroClassResult& r) {
  return std::holds_alternative<ZeroVerdict>(r);
}
inline bool is_nonzero_class(const ZeroClassResult& r) {
  return std::holds_alternative<NonzeroVerdict>(r);
}
inline bool is_unknown_class(const ZeroClassResult& r) {
  return std::holds_alternative<UnknownVerdict>(r);
}

std::string to_string(ZeroRoute route);
std::string to_string(NonzeroReason reason);

/// Decides [x^v] = 0 by region of v relative to -sigma. Holds references to
/// its inputs; they must outlive the oracle. Safe to share across threads.
class ZeroClassOracle {
 public:
  /// `cap` bounds the grading of facet elements tried by the fallback search.
  ZeroClassOracle(const AffineSemigroup& s, const GammaCertificate& cert,
                  std::span<const FacetData> facets, Int cap);

  ZeroClassResult operator()(std::span<const Int> v) const;

  /// Witness for [x^{m v}] = 0 built from a facet i with u_i(v) > 0: with
  /// lambda least such that v + lambda w_i* is interior, m (v + lambda w_i*)
  /// is in Q whenever m >= m_Q. Returns nullopt when v lies in -sigma or
  /// m < m_Q. Throws std::logic_error if the constructed witness fails.
  std::optional<ZeroVerdict> case2_witness(std::span<const Int> v, const Int& m) const;

  /// Recheck a Zero verdict: coefficients nonnegative, witness equals the
  /// recorded combination, lies on the facet, and v + witness is in Q.
  bool check_witness(std::span<const Int> v, const ZeroVerdict& z) const;

  const AffineSemigroup& semigroup() const { return s_; }
  const GammaCertificate& certificate() const { return cert_; }
  std::span<const FacetData> facets() const { return facets_; }
  const Int& cap() const { return cap_; }

 private:
  struct FacetElement {
    IntVector w;
    std::vector<Int> coefficients;
  };

  const AffineSemigroup& s_;
  const GammaCertificate& cert_;
  std::span<const FacetData> facets_;
  Int cap_;
  /// Nonzero elements of each F_i with grade <= cap, ascending by grade.
  std::vector<std::vector<FacetElement>> facet_elements_;
};

ZeroClassResult zero_class(const AffineSemigroup& s, const GammaCertificate& cert,
                           std::span<const FacetData> facets, std::span<const Int> v,
                           const Int& cap);

struct NilpotencyOrder {
  enum class Kind { Finite, NotNilpotent, Unknown };
  Kind kind = Kind::Unknown;
  /// Finite: the order. Unknown: the first Frobenius power not certified
  /// nonzero.
  unsigned long value = 0;
  /// Unknown only: first power certified zero, if any.
  std::optional<unsigned long> upper_bound;
};

struct OrbitReport {
  IntVector v;
  Int p;
  Classification region;
  /// statuses[e] is the verdict for p^e v.
  std::vector<ZeroClassResult> statuses;
  NilpotencyOrder order;
};

OrbitReport frobenius_orbit(const ZeroClassOracle& oracle, std::span<const Int> v,
                            const Int& p, unsigned long e_max);

/// Least e with p^e >= m_Q (0 when m_Q <= 1), or nullopt when p <= N_Q.
std::optional<unsigned long> theoretical_bound(const GammaCertificate& cert, const Int& nq,
                                               const Int& p);

struct RegionStats {
  std::size_t classes = 0;
  std::size_t nilpotent = 0;
  std::size_t zero = 0;
  std::size_t not_nilpotent = 0;
  std::size_t unresolved = 0;
  unsigned long max_order = 0;
};

struct HslReport {
  Int p;
  long window = 0;
  unsigned long e_max = 0;
  Int cap;
  Int m_q;
  Int n_q;
  std::optional<unsigned long> theoretical_bound;
  /// Max nilpotency order over window classes whose order was resolved.
  unsigned long empirical_max = 0;
  std::size_t classes = 0;
  RegionStats neg_interior;
  RegionStats neg_boundary;
  RegionStats outside_neg;
  /// Nilpotent classes whose order exceeds the bound (only when p > N_Q).
  std::vector<std::pair<IntVector, unsigned long>> violations;
  std::vector<IntVector> unresolved;
  /// p <= N_Q only: boundary classes on a facet whose invariant factors p divides.
  std::vector<IntVector> small_characteristic_flags;
};

/// Nilpotency orders of every [x^v] with v in [-L, L]^n. `threads` = 0 uses
/// the hardware concurrency. The result does not depend on the thread count.
HslReport empirical_hsl(const ZeroClassOracle& oracle, const Int& nq, const Int& p,
                        long window, unsigned long e_max, unsigned threads = 0);

/// Rank-1 only: least e with p^e w in Q, w the generator of M in sigma.
/// Throws DimensionMismatchError otherwise.
unsigned long hsl_exact_dim1(const AffineSemigroup& s, const Int& p);

}  // namespace hsl
