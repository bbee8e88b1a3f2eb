#pragma once

// Rational polyhedral cones over a lattice Z^n given by integer generators.
// The cone is described by its primitive inward facet normals ("support
// forms"); everything is computed in exact arithmetic.

#include "hsl/lattice.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hsl {

/// Irredundant primitive inward normals of cone(generators), computed by
/// double-description elimination over the generator inequalities.
/// Throws std::invalid_argument if the generators do not span rank n or
/// include the zero vector.
std::vector<IntVector> support_forms(std::span<const IntVector> generators,
                                     std::size_t n);

class Cone {
 public:
  explicit Cone(std::vector<IntVector> generators);

  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  const std::vector<IntVector>& support_forms() const { return forms_; }
  std::size_t facet_count() const { return forms_.size(); }

  /// One generator index per extreme ray (empty when the cone has a line).
  const std::vector<std::size_t>& extreme_ray_reps() const { return ray_reps_; }
  /// For each facet i, indices of generators g with u_i(g) = 0.
  const std::vector<std::vector<std::size_t>>& facet_generator_sets() const {
    return facet_gens_;
  }

  /// (u_1(v), ..., u_r(v)).
  std::vector<Int> evaluate(std::span<const Int> v) const;
  bool contains(std::span<const Int> v) const;

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> generators_;
  std::vector<IntVector> forms_;
  std::vector<std::size_t> ray_reps_;
  std::vector<std::vector<std::size_t>> facet_gens_;
};

/// True iff the cone contains no line.
bool is_pointed(const Cone& cone);

enum class Region { Interior, Boundary, Outside };

/// Position of a lattice point relative to one of the cones sigma or -sigma.
/// `zero_facets` lists the facets with u_i(v) = 0 and is filled for
/// Boundary tags only.
struct RegionTag {
  Region region = Region::Outside;
  std::vector<std::size_t> zero_facets;

  friend bool operator==(const RegionTag&, const RegionTag&) = default;
};

struct Classification {
  RegionTag sigma;
  RegionTag neg;
};

Classification classify(const Cone& cone, std::span<const Int> v);

/// "SigmaInterior", "NegBoundary", ...
std::string region_name(const RegionTag& tag, bool negative_side);

struct SimplicialSubcone {
  /// Indices into Cone::extreme_ray_reps().
  std::vector<std::size_t> ray_indices;
  Int determinant;
};

/// Placing triangulation of a pointed full-dimensional cone using its
/// extreme-ray representatives.
std::vector<SimplicialSubcone> triangulate(const Cone& cone);

/// Generator vectors of the rays used by a subcone, in subcone order.
std::vector<IntVector> subcone_rays(const Cone& cone, const SimplicialSubcone& sub);

/// Lattice points sum mu_k r_k with 0 <= mu_k < 1, sorted lexicographically.
/// The count equals |det(rays)|.
std::vector<IntVector> parallelepiped_points(std::span<const IntVector> rays);

struct Decomposition {
  IntVector q;         // sum floor(mu_k) r_k
  IntVector residue;   // s - q, inside the half-open parallelepiped
  std::size_t subcone = 0;
  std::vector<Int> ray_multiples;  // floor(mu_k) per subcone ray
};

/// Split s in sigma as q + residue over the first subcone containing s.
/// Throws std::invalid_argument when s lies outside sigma.
Decomposition decompose(const Cone& cone,
                        std::span<const SimplicialSubcone> triangulation,
                        std::span<const Int> s);

}  // namespace hsl
