#include "hsl/semigroup.hpp"

#include <algorithm>
#include <mutex>
#include <queue>
#include <set>
#include <shared_mutex>
#include <unordered_map>

namespace hsl {

struct AffineSemigroup::Memo {
  mutable std::shared_mutex mutex;
  std::unordered_map<IntVector, bool, IntVectorHash> known;
};

AffineSemigroup::AffineSemigroup(AffineSemigroup&&) noexcept = default;
AffineSemigroup& AffineSemigroup::operator=(AffineSemigroup&&) noexcept = default;
AffineSemigroup::~AffineSemigroup() = default;

AffineSemigroup AffineSemigroup::build(std::span<const IntVector> raw_generators) {
  AffineSemigroup s;
  for (const auto& g : raw_generators) {
    if (!s.raw_.empty() && g.size() != s.raw_.front().size())
      throw std::invalid_argument("generators have different lengths");
    if (g.empty()) throw std::invalid_argument("generator of length 0");
    if (!is_zero(g)) s.raw_.push_back(g);
  }
  if (s.raw_.empty()) throw EmptyInputError();
  s.ambient_dim_ = s.raw_.front().size();

  auto hnf = hermite_normal_form(IntMatrix::from_rows(s.raw_));
  for (std::size_t r = 0; r < hnf.rank; ++r) s.basis_.push_back(hnf.H.row_vector(r));

  std::vector<IntVector> gens_m;
  for (const auto& g : s.raw_) gens_m.push_back(*solve_in_lattice(s.basis_, g));

  s.cone_ = std::make_unique<Cone>(std::move(gens_m));
  if (!is_pointed(*s.cone_)) throw NotPointedError();

  s.grading_ = IntVector(s.rank());
  for (const auto& u : s.cone_->support_forms()) s.grading_ = add(s.grading_, u);
  for (const auto& g : s.generators())
    if (sgn(s.grade(g)) <= 0) throw std::logic_error("grading not positive on a generator");

  s.memo_ = std::make_unique<Memo>();
  return s;
}

std::optional<IntVector> AffineSemigroup::to_lattice(std::span<const Int> ambient) const {
  if (ambient.size() != ambient_dim_) throw DimensionMismatchError("ambient length mismatch");
  return solve_in_lattice(basis_, ambient);
}

IntVector AffineSemigroup::to_ambient(std::span<const Int> v) const {
  if (v.size() != rank()) throw DimensionMismatchError("lattice coordinate length mismatch");
  return multiply(v, IntMatrix::from_rows(basis_));
}

bool AffineSemigroup::member(std::span<const Int> v, const GammaCertificate* conductor) const {
  if (v.size() != rank()) throw DimensionMismatchError("member: length mismatch");
  IntVector start(v.begin(), v.end());
  if (is_zero(start)) return true;
  if (!sat_member(start)) return false;
  if (conductor && conductor->in_translate(start)) return true;
  {
    std::shared_lock lock(memo_->mutex);
    if (auto it = memo_->known.find(start); it != memo_->known.end()) return it->second;
  }

  std::unordered_map<IntVector, bool, IntVectorHash> local;
  auto quick = [&](const IntVector& p) -> std::optional<bool> {
    if (is_zero(p)) return true;
    if (!sat_member(p)) return false;
    if (conductor && conductor->in_translate(p)) return true;
    if (auto it = local.find(p); it != local.end()) return it->second;
    std::shared_lock lock(memo_->mutex);
    if (auto it = memo_->known.find(p); it != memo_->known.end()) return it->second;
    return std::nullopt;
  };

  const auto& gens = generators();
  struct Frame {
    IntVector point;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({start, 0});
  bool result = false;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next == gens.size()) {
      local.emplace(std::move(f.point), false);
      stack.pop_back();
      continue;
    }
    IntVector child = subtract(f.point, gens[f.next]);
    ++f.next;
    auto known = quick(child);
    if (!known) {
      stack.push_back({std::move(child), 0});
      continue;
    }
    if (*known) {
      // every point on the stack is the child plus a sum of generators
      for (auto& fr : stack) local[fr.point] = true;
      stack.clear();
      result = true;
    }
  }
  if (!result) local[start] = false;

  std::unique_lock lock(memo_->mutex);
  for (auto& [p, b] : local) memo_->known.emplace(p, b);
  return result;
}

std::optional<std::vector<Int>> AffineSemigroup::express(std::span<const Int> v) const {
  if (!member(v)) return std::nullopt;
  const auto& gens = generators();
  std::vector<Int> coeff(gens.size());
  IntVector p(v.begin(), v.end());
  while (!is_zero(p)) {
    bool stepped = false;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      IntVector child = subtract(p, gens[g]);
      if (sat_member(child) && member(child)) {
        ++coeff[g];
        p = std::move(child);
        stepped = true;
        break;
      }
    }
    if (!stepped) throw std::logic_error("express: inconsistent membership memo");
  }
  return coeff;
}

std::size_t AffineSemigroup::memo_size() const {
  std::shared_lock lock(memo_->mutex);
  return memo_->known.size();
}

// ---------------------------------------------------------------------------

SaturationData saturation_residues(const AffineSemigroup& s) {
  SaturationData d;
  d.triangulation = triangulate(s.cone());
  std::set<IntVector> all;
  for (const auto& sub : d.triangulation)
    for (auto& p : parallelepiped_points(subcone_rays(s.cone(), sub))) all.insert(std::move(p));
  d.residues.assign(all.begin(), all.end());
  return d;
}

bool GammaCertificate::in_translate(std::span<const Int> v) const {
  for (std::size_t i = 0; i < forms.size(); ++i)
    if (dot(forms[i], v) < facet_values[i]) return false;
  return true;
}

std::optional<GammaCertificate> verify_gamma(const AffineSemigroup& s,
                                             std::span<const Int> gamma,
                                             const SaturationData& sat) {
  if (gamma.size() != s.rank()) throw DimensionMismatchError("verify_gamma: length mismatch");
  if (!s.member(gamma)) return std::nullopt;
  GammaCertificate cert;
  cert.gamma.assign(gamma.begin(), gamma.end());
  for (const auto& rho : sat.residues) {
    IntVector shifted = add(gamma, rho);
    auto coeff = s.express(shifted);
    if (!coeff) return std::nullopt;
    cert.residues.push_back(rho);
    cert.residue_witnesses.push_back(std::move(*coeff));
  }
  cert.forms = s.cone().support_forms();
  cert.facet_values = s.cone().evaluate(gamma);
  cert.m_q = *std::max_element(cert.facet_values.begin(), cert.facet_values.end());
  cert.min_facet_value = *std::min_element(cert.facet_values.begin(), cert.facet_values.end());
  return cert;
}

std::optional<GammaCertificate> verify_gamma(const AffineSemigroup& s,
                                             std::span<const Int> gamma) {
  return verify_gamma(s, gamma, saturation_residues(s));
}

GammaCertificate find_gamma(const AffineSemigroup& s, std::size_t budget) {
  const SaturationData sat = saturation_residues(s);
  const auto facets = static_cast<long>(s.cone().facet_count());

  using Entry = std::pair<Int, IntVector>;  // (grade, point)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  std::set<IntVector> seen;
  IntVector origin(s.rank());
  frontier.emplace(Int(0), origin);
  seen.insert(origin);

  std::optional<GammaCertificate> best;
  std::size_t examined = 0;
  Int level = 0;
  while (!frontier.empty() && examined < budget) {
    auto [grade, candidate] = frontier.top();
    frontier.pop();
    // max_i u_i(gamma) >= grade / r, so nothing further can improve
    if (best && grade > best->m_q * facets) break;
    ++examined;
    level = grade;
    if (auto cert = verify_gamma(s, candidate, sat)) {
      if (!best || cert->m_q < best->m_q) best = std::move(cert);
    }
    for (const auto& g : s.generators()) {
      IntVector next = add(candidate, g);
      if (seen.insert(next).second) frontier.emplace(s.grade(next), std::move(next));
    }
  }
  if (!best) throw BudgetExhaustedError(examined, level.get_str());
  return *best;
}

FacetData facet_data(const AffineSemigroup& s, std::size_t i) {
  const Cone& cone = s.cone();
  if (i >= cone.facet_count()) throw std::out_of_range("facet index out of range");
  const std::size_t n = s.rank();
  FacetData f;
  f.facet = i;
  f.generator_indices = cone.facet_generator_sets()[i];
  for (auto g : f.generator_indices) f.facet_gens.push_back(s.generators()[g]);
  IntMatrix form(1, n);
  for (std::size_t c = 0; c < n; ++c) form(0, c) = cone.support_forms()[i][c];
  f.hyperplane_basis = kernel_basis(form);

  f.interior_element = IntVector(n);
  for (const auto& g : f.facet_gens) f.interior_element = add(f.interior_element, g);

  if (n > 1) {
    std::vector<IntVector> coords;
    for (const auto& g : f.facet_gens) coords.push_back(*solve_in_lattice(f.hyperplane_basis, g));
    auto snf = smith_normal_form(IntMatrix::from_rows(coords, n - 1));
    f.invariant_factors = snf.invariant_factors;
    for (const auto& d : f.invariant_factors)
      if (sgn(d) <= 0) throw std::logic_error("facet generators do not span the facet hyperplane");
  }
  return f;
}

std::vector<FacetData> all_facet_data(const AffineSemigroup& s) {
  std::vector<FacetData> out;
  for (std::size_t i = 0; i < s.cone().facet_count(); ++i) out.push_back(facet_data(s, i));
  return out;
}

Int n_q(std::span<const FacetData> facets) {
  Int best = 0;
  for (const auto& f : facets)
    for (const auto& d : f.invariant_factors) {
      Int p = largest_prime_factor(d);
      if (p > best) best = p;
    }
  return best;
}

Int n_q(const AffineSemigroup& s) { return n_q(all_facet_data(s)); }

}  // namespace hsl
