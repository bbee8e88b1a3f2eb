#include "hsl/report.hpp"

#include <climits>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hsl {

using nlohmann::json;

json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0)
      throw std::invalid_argument("not a decimal integer: " + j.get<std::string>());
    return x;
  }
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

namespace {

json vec_to_json(std::span<const Int> v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

IntVector vec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an integer array, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

json vecs_to_json(std::span<const IntVector> vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec_to_json(v));
  return a;
}

std::vector<IntVector> vecs_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of vectors");
  std::vector<IntVector> out;
  for (const auto& v : j) out.push_back(vec_from_json(v));
  return out;
}

json opt_to_json(const std::optional<unsigned long>& x) {
  if (!x) return nullptr;
  return *x;
}

std::optional<unsigned long> opt_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<unsigned long>();
}

}  // namespace

InputSpec parse_input(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("input must be a JSON object");
  if (!doc.contains("generators")) throw std::invalid_argument("input lacks \"generators\"");
  InputSpec in;
  const json& gens = doc.at("generators");
  if (!gens.is_array() || gens.empty())
    throw std::invalid_argument("\"generators\" must be a nonempty array");
  for (const auto& g : gens) {
    IntVector v = vec_from_json(g);
    if (v.empty()) throw std::invalid_argument("empty generator");
    if (!in.generators.empty() && v.size() != in.generators.front().size())
      throw std::invalid_argument("generators have different lengths");
    in.generators.push_back(std::move(v));
  }
  if (doc.contains("labels")) {
    const json& labels = doc.at("labels");
    if (!labels.is_array()) throw std::invalid_argument("\"labels\" must be an array");
    for (const auto& l : labels) {
      if (!l.is_string()) throw std::invalid_argument("labels must be strings");
      in.labels.push_back(l.get<std::string>());
    }
  }
  for (const auto& [key, value] : doc.items())
    if (key != "generators" && key != "labels")
      in.warnings.push_back("ignoring unknown field \"" + key + "\"");
  return in;
}

InputSpec load_input(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return parse_input(doc);
}

Analysis analyze(const InputSpec& input, const AnalysisOptions& options) {
  AffineSemigroup s = AffineSemigroup::build(input.generators);
  const SaturationData sat = saturation_residues(s);

  GammaCertificate cert;
  std::string source = "search";
  if (options.gamma) {
    auto m = s.to_lattice(*options.gamma);
    if (!m) throw std::invalid_argument("gamma is not in the group generated by Q");
    auto c = verify_gamma(s, *m, sat);
    if (!c) throw std::invalid_argument("gamma " + to_string(*options.gamma) + " fails verification");
    cert = std::move(*c);
    source = "given";
  } else {
    cert = find_gamma(s, options.budget);
  }

  auto facets = all_facet_data(s);
  Int nq = n_q(facets);

  AnalysisReport r;
  r.ambient_dim = s.ambient_dim();
  r.rank = s.rank();
  r.lattice_basis = s.lattice_basis();
  r.generators = s.generators();
  r.support_forms = s.cone().support_forms();
  r.pointed = is_pointed(s.cone());
  r.gamma.gamma = cert.gamma;
  r.gamma.gamma_ambient = s.to_ambient(cert.gamma);
  r.gamma.facet_values = cert.facet_values;
  r.gamma.m_q = cert.m_q;
  r.gamma.min_facet_value = cert.min_facet_value;
  r.gamma.residues_checked = cert.residues.size();
  r.gamma.source = source;
  r.gamma.saturated = is_zero(cert.gamma);
  for (const auto& f : facets)
    r.facets.push_back({s.cone().support_forms()[f.facet], f.facet_gens, f.invariant_factors,
                        f.interior_element});
  r.n_q = nq;
  for (const auto& p : options.primes) r.bounds.push_back({p, theoretical_bound(cert, nq, p)});

  return Analysis{std::move(s), std::move(cert), std::move(facets), std::move(nq), std::move(r)};
}

json to_json(const AnalysisReport& r) {
  json facets = json::array();
  for (const auto& f : r.facets)
    facets.push_back({{"support_form", vec_to_json(f.support_form)},
                      {"facet_generators", vecs_to_json(f.facet_generators)},
                      {"invariant_factors", vec_to_json(f.invariant_factors)},
                      {"interior_element", vec_to_json(f.interior_element)}});
  json bounds = json::array();
  for (const auto& b : r.bounds)
    bounds.push_back({{"prime", int_to_json(b.p)}, {"bound", opt_to_json(b.bound)}});
  return {
      {"ambient_dim", r.ambient_dim},
      {"rank", r.rank},
      {"lattice_basis", vecs_to_json(r.lattice_basis)},
      {"generators", vecs_to_json(r.generators)},
      {"support_forms", vecs_to_json(r.support_forms)},
      {"pointed", r.pointed},
      {"gamma",
       {{"gamma", vec_to_json(r.gamma.gamma)},
        {"gamma_ambient", vec_to_json(r.gamma.gamma_ambient)},
        {"facet_values", vec_to_json(r.gamma.facet_values)},
        {"m_Q", int_to_json(r.gamma.m_q)},
        {"min_facet_value_uncertified", int_to_json(r.gamma.min_facet_value)},
        {"residues_checked", r.gamma.residues_checked},
        {"source", r.gamma.source},
        {"saturated", r.gamma.saturated}}},
      {"facets", facets},
      {"N_Q", int_to_json(r.n_q)},
      {"bounds", bounds},
  };
}

AnalysisReport analysis_report_from_json(const json& j) {
  AnalysisReport r;
  r.ambient_dim = j.at("ambient_dim").get<std::size_t>();
  r.rank = j.at("rank").get<std::size_t>();
  r.lattice_basis = vecs_from_json(j.at("lattice_basis"));
  r.generators = vecs_from_json(j.at("generators"));
  r.support_forms = vecs_from_json(j.at("support_forms"));
  r.pointed = j.at("pointed").get<bool>();
  const json& g = j.at("gamma");
  r.gamma.gamma = vec_from_json(g.at("gamma"));
  r.gamma.gamma_ambient = vec_from_json(g.at("gamma_ambient"));
  r.gamma.facet_values = vec_from_json(g.at("facet_values"));
  r.gamma.m_q = int_from_json(g.at("m_Q"));
  r.gamma.min_facet_value = int_from_json(g.at("min_facet_value_uncertified"));
  r.gamma.residues_checked = g.at("residues_checked").get<std::size_t>();
  r.gamma.source = g.at("source").get<std::string>();
  r.gamma.saturated = g.at("saturated").get<bool>();
  for (const auto& f : j.at("facets"))
    r.facets.push_back({vec_from_json(f.at("support_form")),
                        vecs_from_json(f.at("facet_generators")),
                        vec_from_json(f.at("invariant_factors")),
                        vec_from_json(f.at("interior_element"))});
  r.n_q = int_from_json(j.at("N_Q"));
  for (const auto& b : j.at("bounds"))
    r.bounds.push_back({int_from_json(b.at("prime")), opt_from_json(b.at("bound"))});
  return r;
}

namespace {

json stats_to_json(const RegionStats& s) {
  return {{"classes", s.classes},       {"nilpotent", s.nilpotent},
          {"zero", s.zero},             {"not_nilpotent", s.not_nilpotent},
          {"unresolved", s.unresolved}, {"max_order", s.max_order}};
}

RegionStats stats_from_json(const json& j) {
  RegionStats s;
  s.classes = j.at("classes").get<std::size_t>();
  s.nilpotent = j.at("nilpotent").get<std::size_t>();
  s.zero = j.at("zero").get<std::size_t>();
  s.not_nilpotent = j.at("not_nilpotent").get<std::size_t>();
  s.unresolved = j.at("unresolved").get<std::size_t>();
  s.max_order = j.at("max_order").get<unsigned long>();
  return s;
}

}  // namespace

json to_json(const HslReport& r) {
  json violations = json::array();
  for (const auto& [v, e] : r.violations)
    violations.push_back({{"degree", vec_to_json(v)}, {"order", e}});
  return {
      {"prime", int_to_json(r.p)},
      {"window", r.window},
      {"e_max", r.e_max},
      {"cap", int_to_json(r.cap)},
      {"m_Q", int_to_json(r.m_q)},
      {"N_Q", int_to_json(r.n_q)},
      {"theoretical_bound", opt_to_json(r.theoretical_bound)},
      {"empirical_max", r.empirical_max},
      {"classes", r.classes},
      {"regions",
       {{"neg_interior", stats_to_json(r.neg_interior)},
        {"neg_boundary", stats_to_json(r.neg_boundary)},
        {"outside_neg", stats_to_json(r.outside_neg)}}},
      {"violations", violations},
      {"unresolved", vecs_to_json(r.unresolved)},
      {"small_characteristic_flags", vecs_to_json(r.small_characteristic_flags)},
  };
}

HslReport hsl_report_from_json(const json& j) {
  HslReport r;
  r.p = int_from_json(j.at("prime"));
  r.window = j.at("window").get<long>();
  r.e_max = j.at("e_max").get<unsigned long>();
  r.cap = int_from_json(j.at("cap"));
  r.m_q = int_from_json(j.at("m_Q"));
  r.n_q = int_from_json(j.at("N_Q"));
  r.theoretical_bound = opt_from_json(j.at("theoretical_bound"));
  r.empirical_max = j.at("empirical_max").get<unsigned long>();
  r.classes = j.at("classes").get<std::size_t>();
  const json& regions = j.at("regions");
  r.neg_interior = stats_from_json(regions.at("neg_interior"));
  r.neg_boundary = stats_from_json(regions.at("neg_boundary"));
  r.outside_neg = stats_from_json(regions.at("outside_neg"));
  for (const auto& v : j.at("violations"))
    r.violations.emplace_back(vec_from_json(v.at("degree")), v.at("order").get<unsigned long>());
  r.unresolved = vecs_from_json(j.at("unresolved"));
  r.small_characteristic_flags = vecs_from_json(j.at("small_characteristic_flags"));
  return r;
}

namespace {

std::string join(std::span<const IntVector> vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ' ';
    s += to_string(vs[i]);
  }
  return s.empty() ? "-" : s;
}

void row(std::ostringstream& os, const std::string& key, const std::string& value) {
  os << std::left << std::setw(24) << key << value << '\n';
}

}  // namespace

std::string render_table(const AnalysisReport& r) {
  std::ostringstream os;
  row(os, "rank", std::to_string(r.rank) + " (ambient " + std::to_string(r.ambient_dim) + ")");
  row(os, "lattice basis", join(r.lattice_basis));
  row(os, "generators (M)", join(r.generators));
  row(os, "support forms", join(r.support_forms));
  row(os, "pointed", r.pointed ? "yes" : "no");
  row(os, "gamma (" + r.gamma.source + ")",
      to_string(r.gamma.gamma) + " ambient " + to_string(r.gamma.gamma_ambient));
  row(os, "u_i(gamma)", to_string(r.gamma.facet_values));
  row(os, "m_Q", r.gamma.m_q.get_str() + (r.gamma.saturated ? " (saturated: Q = Q_sat)" : ""));
  row(os, "min u_i(gamma)", r.gamma.min_facet_value.get_str() + " (uncertified)");
  row(os, "residues checked", std::to_string(r.gamma.residues_checked));
  for (std::size_t i = 0; i < r.facets.size(); ++i) {
    const auto& f = r.facets[i];
    row(os, "facet " + std::to_string(i + 1),
        "u = " + to_string(f.support_form) + "  gens " + join(f.facet_generators) +
            "  d = " + to_string(f.invariant_factors));
  }
  row(os, "N_Q", r.n_q.get_str());
  for (const auto& b : r.bounds)
    row(os, "bound p = " + b.p.get_str(),
        b.bound ? std::to_string(*b.bound) : std::string("no guarantee: p <= N_Q"));
  return os.str();
}

std::string render_table(const HslReport& r) {
  std::ostringstream os;
  row(os, "prime", r.p.get_str());
  row(os, "window", "[-" + std::to_string(r.window) + ", " + std::to_string(r.window) + "]");
  row(os, "e_max / cap", std::to_string(r.e_max) + " / " + r.cap.get_str());
  row(os, "m_Q / N_Q", r.m_q.get_str() + " / " + r.n_q.get_str());
  row(os, "theoretical bound",
      r.theoretical_bound ? std::to_string(*r.theoretical_bound) : "no guarantee: p <= N_Q");
  row(os, "empirical max", std::to_string(r.empirical_max));
  row(os, "classes", std::to_string(r.classes));
  auto region = [&](const std::string& name, const RegionStats& s) {
    row(os, name,
        std::to_string(s.classes) + " classes, " + std::to_string(s.nilpotent) + " nilpotent (" +
            std::to_string(s.zero) + " zero), " + std::to_string(s.not_nilpotent) +
            " not nilpotent, " + std::to_string(s.unresolved) + " unresolved, max order " +
            std::to_string(s.max_order));
  };
  region("  interior of -sigma", r.neg_interior);
  region("  boundary of -sigma", r.neg_boundary);
  region("  outside -sigma", r.outside_neg);
  row(os, "violations", std::to_string(r.violations.size()));
  if (!r.small_characteristic_flags.empty())
    row(os, "flagged (p | d_ij)", std::to_string(r.small_characteristic_flags.size()));
  return os.str();
}

}  // namespace hsl
