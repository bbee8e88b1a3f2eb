#pragma once

// Input documents, the analysis pipeline, and the structured reports the
// command-line tool emits.

#include "hsl/cohomology.hpp"
#include "hsl/semigroup.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hsl {

struct InputSpec {
  std::vector<IntVector> generators;
  std::vector<std::string> labels;
  /// Unknown top-level fields, reported and otherwise ignored.
  std::vector<std::string> warnings;
};

/// Throws std::invalid_argument on malformed documents.
InputSpec parse_input(const nlohmann::json& doc);
InputSpec load_input(const std::filesystem::path& path);

struct FacetSummary {
  IntVector support_form;
  std::vector<IntVector> facet_generators;
  std::vector<Int> invariant_factors;
  IntVector interior_element;

  friend bool operator==(const FacetSummary&, const FacetSummary&) = default;
};

struct GammaSummary {
  IntVector gamma;          // M-coordinates
  IntVector gamma_ambient;  // input coordinates
  std::vector<Int> facet_values;
  Int m_q;
  /// min_i u_i(gamma). Not a certified constant; shown for comparison.
  Int min_facet_value;
  std::size_t residues_checked = 0;
  /// "search" or "given"
  std::string source;
  /// gamma = 0 certifies Q = Q_sat; the bound degenerates to 0.
  bool saturated = false;

  friend bool operator==(const GammaSummary&, const GammaSummary&) = default;
};

struct PrimeBound {
  Int p;
  std::optional<unsigned long> bound;

  friend bool operator==(const PrimeBound&, const PrimeBound&) = default;
};

struct AnalysisReport {
  std::size_t ambient_dim = 0;
  std::size_t rank = 0;
  std::vector<IntVector> lattice_basis;
  std::vector<IntVector> generators;
  std::vector<IntVector> support_forms;
  bool pointed = true;
  GammaSummary gamma;
  std::vector<FacetSummary> facets;
  Int n_q;
  std::vector<PrimeBound> bounds;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

struct AnalysisOptions {
  std::size_t budget = 10000;
  /// Ambient coordinates of a gamma to verify instead of searching.
  std::optional<IntVector> gamma;
  std::vector<Int> primes;
};

/// Everything the report needs, kept alive for further verification.
struct Analysis {
  AffineSemigroup semigroup;
  GammaCertificate certificate;
  std::vector<FacetData> facets;
  Int n_q;
  AnalysisReport report;
};

/// Throws EmptyInputError, NotPointedError, BudgetExhaustedError, or
/// std::invalid_argument (also when a given gamma fails verification).
Analysis analyze(const InputSpec& input, const AnalysisOptions& options = {});

nlohmann::json to_json(const AnalysisReport& report);
AnalysisReport analysis_report_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const HslReport& report);
HslReport hsl_report_from_json(const nlohmann::json& doc);

std::string render_table(const AnalysisReport& report);
std::string render_table(const HslReport& report);

/// Integers are JSON numbers when they fit in 64 bits, decimal strings
/// otherwise; both forms are accepted when reading.
nlohmann::json int_to_json(const Int& x);
Int int_from_json(const nlohmann::json& j);

}  // namespace hsl
