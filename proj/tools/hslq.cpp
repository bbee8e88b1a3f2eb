// hslq: constants m_Q, N_Q and the Frobenius nilpotency bound for the top
// local cohomology of an affine semigroup ring, with an empirical check.

#include "hsl/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

enum Exit { kOk = 0, kInvalid = 1, kNotPointed = 2, kBudget = 3, kViolations = 4 };

struct Options {
  std::string input;
  std::string format = "json";
  std::size_t budget = 10000;
  std::string gamma;
  std::vector<std::string> primes;
  std::string prime;
  long window = 10;
  std::optional<unsigned long> emax;
  std::optional<std::string> cap;
  unsigned threads = 0;
};

hsl::Int parse_prime(const std::string& text) {
  hsl::Int p;
  if (p.set_str(text, 10) != 0) throw std::invalid_argument("not an integer: " + text);
  if (!hsl::is_prime(p)) throw std::invalid_argument(text + " is not prime");
  return p;
}

hsl::IntVector parse_vector(const std::string& text) {
  hsl::IntVector v;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    hsl::Int x;
    if (x.set_str(item, 10) != 0) throw std::invalid_argument("bad vector entry: " + item);
    v.push_back(x);
  }
  if (v.empty()) throw std::invalid_argument("empty vector");
  return v;
}

hsl::Analysis load(const Options& opt, std::vector<hsl::Int> primes = {}) {
  hsl::InputSpec in = hsl::load_input(opt.input);
  for (const auto& w : in.warnings) std::cerr << "warning: " << w << '\n';
  hsl::AnalysisOptions a;
  a.budget = opt.budget;
  if (!opt.gamma.empty()) a.gamma = parse_vector(opt.gamma);
  a.primes = std::move(primes);
  return hsl::analyze(in, a);
}

void emit(const Options& opt, const nlohmann::json& doc, const std::string& table) {
  if (opt.format == "table") std::cout << table;
  else std::cout << doc.dump(2) << '\n';
}

int cmd_analyze(const Options& opt) {
  std::vector<hsl::Int> primes;
  for (const auto& p : opt.primes) primes.push_back(parse_prime(p));
  auto a = load(opt, primes);
  emit(opt, hsl::to_json(a.report), hsl::render_table(a.report));
  return kOk;
}

int cmd_bound(const Options& opt) {
  hsl::Int p = parse_prime(opt.prime);
  auto a = load(opt, {p});
  auto bound = a.report.bounds.front().bound;
  nlohmann::json doc = {{"prime", hsl::int_to_json(p)},
                        {"m_Q", hsl::int_to_json(a.report.gamma.m_q)},
                        {"N_Q", hsl::int_to_json(a.report.n_q)},
                        {"bound", bound ? nlohmann::json(*bound) : nlohmann::json(nullptr)}};
  if (!bound) doc["message"] = "no guarantee: p <= N_Q";
  emit(opt, doc, (bound ? std::to_string(*bound) : std::string("no guarantee: p <= N_Q")) + "\n");
  return kOk;
}

int cmd_verify(const Options& opt) {
  hsl::Int p = parse_prime(opt.prime);
  if (opt.window < 0) throw std::invalid_argument("--window must be nonnegative");
  auto a = load(opt, {p});
  hsl::Int cap = 10 * a.certificate.m_q;
  if (opt.cap) {
    if (cap.set_str(*opt.cap, 10) != 0 || cap < 0)
      throw std::invalid_argument("--cap must be a nonnegative integer");
  }
  auto bound = a.report.bounds.front().bound;
  unsigned long e_max = opt.emax ? *opt.emax : bound ? *bound + 2 : 10;
  hsl::ZeroClassOracle oracle(a.semigroup, a.certificate, a.facets, cap);
  auto rep = hsl::empirical_hsl(oracle, a.n_q, p, opt.window, e_max, opt.threads);
  emit(opt, hsl::to_json(rep), hsl::render_table(rep));
  return rep.violations.empty() ? kOk : kViolations;
}

int cmd_dim1(const Options& opt) {
  hsl::Int p = parse_prime(opt.prime);
  hsl::InputSpec in = hsl::load_input(opt.input);
  for (const auto& w : in.warnings) std::cerr << "warning: " << w << '\n';
  auto s = hsl::AffineSemigroup::build(in.generators);
  if (s.rank() != 1)
    throw std::invalid_argument("dim1 needs a rank-1 semigroup, got rank " +
                                std::to_string(s.rank()));
  unsigned long e = hsl::hsl_exact_dim1(s, p);
  emit(opt, {{"prime", hsl::int_to_json(p)}, {"hsl", e}}, std::to_string(e) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius nilpotency bounds for affine semigroup rings"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--input", opt.input, "JSON document with a \"generators\" array")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--format", opt.format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    cmd->add_option("--budget", opt.budget, "gamma search candidates");
    cmd->add_option("--gamma", opt.gamma, "verify this gamma (comma separated) instead of searching");
  };

  auto* analyze = app.add_subcommand("analyze", "support forms, gamma, m_Q, N_Q");
  common(analyze);
  analyze->add_option("--prime", opt.primes, "also report the bound for these primes");

  auto* bound = app.add_subcommand("bound", "the bound ceil(log_p m_Q)");
  common(bound);
  bound->add_option("--prime", opt.prime)->required();

  auto* verify = app.add_subcommand("verify", "nilpotency orders over a window of degrees");
  common(verify);
  verify->add_option("--prime", opt.prime)->required();
  verify->add_option("--window", opt.window, "degrees v in [-L, L]^n (lattice coordinates)");
  verify->add_option("--emax", opt.emax, "largest Frobenius power tried (default bound + 2)");
  verify->add_option("--cap", opt.cap, "grading cap for facet witness search (default 10 m_Q)");
  verify->add_option("--threads", opt.threads, "worker threads, 0 for all cores");

  auto* dim1 = app.add_subcommand("dim1", "exact value for rank-1 semigroups");
  common(dim1);
  dim1->add_option("--prime", opt.prime)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(opt);
    if (bound->parsed()) return cmd_bound(opt);
    if (verify->parsed()) return cmd_verify(opt);
    return cmd_dim1(opt);
  } catch (const hsl::NotPointedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNotPointed;
  } catch (const hsl::BudgetExhaustedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvalid;
  }
}
