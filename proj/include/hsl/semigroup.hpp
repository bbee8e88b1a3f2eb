#pragma once

// Affine pointed semigroups Q in Z^d. The semigroup is re-expressed in
// coordinates of the group M it generates, so its cone is full-dimensional.

#include "hsl/cone.hpp"
#include "hsl/errors.hpp"
#include "hsl/lattice.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace hsl {

struct GammaCertificate;

class AffineSemigroup {
 public:
  /// Drops zero generators. Throws EmptyInputError, NotPointedError, or
  /// std::invalid_argument for ragged input.
  static AffineSemigroup build(std::span<const IntVector> raw_generators);

  AffineSemigroup(AffineSemigroup&&) noexcept;
  AffineSemigroup& operator=(AffineSemigroup&&) noexcept;
  ~AffineSemigroup();

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return cone_->dim(); }
  const std::vector<IntVector>& raw_generators() const { return raw_; }
  /// Basis of M inside the ambient lattice, one vector per row.
  const std::vector<IntVector>& lattice_basis() const { return basis_; }
  /// Generators in M-coordinates.
  const std::vector<IntVector>& generators() const { return cone_->generators(); }
  const Cone& cone() const { return *cone_; }
  /// Sum of the support forms; strictly positive on every generator.
  const IntVector& grading() const { return grading_; }
  Int grade(std::span<const Int> v) const { return dot(grading_, v); }

  std::optional<IntVector> to_lattice(std::span<const Int> ambient) const;
  IntVector to_ambient(std::span<const Int> v) const;

  /// v in Q (M-coordinates). Memoized descent along the grading: v is in Q
  /// iff v = 0 or v - g is in Q for some generator g with v - g in sigma.
  /// When a certificate is passed, points of gamma + Q_sat are accepted
  /// without descent. Thread-safe; the memo table is shared.
  bool member(std::span<const Int> v, const GammaCertificate* conductor = nullptr) const;

  /// v in Q_sat = sigma intersected with M.
  bool sat_member(std::span<const Int> v) const { return cone_->contains(v); }

  /// Nonnegative generator coefficients summing to v, or nullopt if v is
  /// not in Q.
  std::optional<std::vector<Int>> express(std::span<const Int> v) const;

  std::size_t memo_size() const;

 private:
  AffineSemigroup() = default;

  struct Memo;

  std::size_t ambient_dim_ = 0;
  std::vector<IntVector> raw_;
  std::vector<IntVector> basis_;
  std::unique_ptr<Cone> cone_;
  IntVector grading_;
  std::unique_ptr<Memo> memo_;
};

struct SaturationData {
  std::vector<SimplicialSubcone> triangulation;
  /// Union of the half-open parallelepiped points of all subcones, sorted,
  /// without duplicates. Every s in Q_sat is q + rho with q a nonnegative
  /// integer combination of extreme-ray generators and rho listed here.
  std::vector<IntVector> residues;
};

SaturationData saturation_residues(const AffineSemigroup& s);

/// gamma together with the evidence that gamma + Q_sat lies in Q.
struct GammaCertificate {
  IntVector gamma;
  std::vector<IntVector> residues;
  /// Generator coefficients expressing gamma + residues[k].
  std::vector<std::vector<Int>> residue_witnesses;
  /// Support forms of the cone, copied so the translate test is standalone.
  std::vector<IntVector> forms;
  /// u_i(gamma) for every facet.
  std::vector<Int> facet_values;
  /// max_i u_i(gamma); this is the certified constant.
  Int m_q;
  /// min_i u_i(gamma); reported for comparison only, not a certified bound.
  Int min_facet_value;

  /// v in gamma + Q_sat, i.e. u_i(v) >= u_i(gamma) for every facet.
  bool in_translate(std::span<const Int> v) const;
};

std::optional<GammaCertificate> verify_gamma(const AffineSemigroup& s,
                                             std::span<const Int> gamma,
                                             const SaturationData& sat);
std::optional<GammaCertificate> verify_gamma(const AffineSemigroup& s,
                                             std::span<const Int> gamma);

/// Enumerate Q by increasing grading and return the valid gamma of least
/// m_Q found among at most `budget` candidates. Throws BudgetExhaustedError
/// if none is valid.
GammaCertificate find_gamma(const AffineSemigroup& s, std::size_t budget = 10000);

struct FacetData {
  std::size_t facet = 0;
  std::vector<std::size_t> generator_indices;
  std::vector<IntVector> facet_gens;
  /// Basis of {v in M : u_i(v) = 0}.
  std::vector<IntVector> hyperplane_basis;
  /// Invariant factors of the facet generator lattice inside the hyperplane
  /// lattice; n - 1 entries, all positive.
  std::vector<Int> invariant_factors;
  /// Sum of facet_gens: zero on facet i, positive on every other facet.
  IntVector interior_element;
};

FacetData facet_data(const AffineSemigroup& s, std::size_t i);
std::vector<FacetData> all_facet_data(const AffineSemigroup& s);

/// 0 when every invariant factor is 1, else the largest prime dividing one.
Int n_q(std::span<const FacetData> facets);
Int n_q(const AffineSemigroup& s);

}  // namespace hsl
