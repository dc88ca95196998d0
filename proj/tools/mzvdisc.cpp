// mzvdisc: evaluate truncated sums, run verification grids, print telescoping transcripts.
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 usage or parse error,
// 3 a requested size exceeds the configured caps.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mzvdisc/suites.hpp"

namespace {

using namespace mzvdisc;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

std::string default_fixtures_dir() {
  if (const char* env = std::getenv("MZVDISC_FIXTURES")) return env;
#ifdef MZVDISC_DEFAULT_FIXTURES
  return MZVDISC_DEFAULT_FIXTURES;
#else
  return "fixtures";
#endif
}

std::string fixture_file(const std::string& dir, const std::string& suite) {
  return dir + "/" + (suite == "padic" ? "padic_duality.txt" : "seki_lifting.txt");
}

struct EvalArgs {
  std::string object;
  std::string index;
  std::uint64_t upper = 0;
  std::uint64_t N = 0, n = 0, m = 0;
  std::string left, right;
  int decimal = -1;
  bool json = false;
};

int run_eval(const EvalArgs& a, const Caps& caps) {
  auto check_upper = [&](std::uint64_t N) {
    if (N == 0) throw std::invalid_argument("upper bound must be positive");
    if (N > caps.upper) throw CapExceeded("N=" + std::to_string(N) + " exceeds cap " + std::to_string(caps.upper));
  };
  auto check_weight = [&](const Index& k) {
    if (k.weight() > caps.weight)
      throw CapExceeded("weight " + std::to_string(k.weight()) + " exceeds cap " + std::to_string(caps.weight));
  };
  Rational value;
  nlohmann::json inputs;
  if (a.object == "connector") {
    check_upper(a.N);
    value = connector(a.N, a.n, a.m);
    inputs = {{"N", a.N}, {"n", a.n}, {"m", a.m}};
  } else if (a.object == "Z") {
    check_upper(a.N);
    Index k = parse_index(a.left), l = parse_index(a.right);
    check_weight(k.concat(l));
    value = connected_sum_Z(a.N, k, l);
    inputs = {{"N", a.N}, {"left", k.to_string()}, {"right", l.to_string()}};
  } else {
    Index k = parse_index(a.index);
    check_weight(k);
    check_upper(a.upper);
    if (a.object == "zeta")
      value = zeta_trunc(k, a.upper);
    else if (a.object == "zeta-star")
      value = zeta_star_trunc(k, a.upper);
    else if (a.object == "zeta-flat")
      value = zeta_flat(k, a.upper);
    else if (a.object == "riemann")
      value = riemann_sum(k, a.upper);
    else
      throw CLI::ValidationError("object", "unknown object '" + a.object + "'");
    inputs = {{"index", k.to_string()}, {"upper", a.upper}};
  }
  if (a.json) {
    nlohmann::json out{{"object", a.object}, {"inputs", inputs}, {"value", to_fraction_string(value)}};
    if (a.decimal >= 0) out["decimal"] = to_decimal_string(value, static_cast<unsigned>(a.decimal));
    std::cout << out.dump() << '\n';
  } else {
    std::cout << to_fraction_string(value) << '\n';
    if (a.decimal >= 0) std::cout << to_decimal_string(value, static_cast<unsigned>(a.decimal)) << '\n';
  }
  return 0;
}

struct VerifyArgs {
  std::string suite;
  unsigned max_weight = 4;
  unsigned max_depth = 0;
  std::uint64_t max_upper = 0;
  std::string upper, primes = "3..199", exponents = "1..3";
  std::vector<std::string> indices;
  std::string backend = "dp";
  std::string fixtures;
  unsigned jobs = 1;
  bool json = false, csv = false;
};

int run_verify(const VerifyArgs& a, const Caps& caps) {
  GridOptions g;
  g.max_weight = a.max_weight;
  if (a.max_depth) g.max_depth = a.max_depth;
  for (const auto& s : a.indices) g.indices.push_back(parse_index(s));
  for (const auto& k : g.indices)
    if (k.empty()) throw std::invalid_argument("empty index in --index");

  if (!a.upper.empty())
    g.uppers = parse_range(a.upper);
  else if (a.max_upper)
    g.uppers = parse_range("1.." + std::to_string(a.max_upper));
  else if (a.suite == "duality-r")
    g.uppers = powers_of_two(4, 12);
  else if (a.suite == "log2")
    g.uppers = parse_range("1..200");
  else
    g.uppers = parse_range("1..20");

  g.primes = parse_range(a.primes);
  g.exponents.clear();
  for (auto n : parse_range(a.exponents)) g.exponents.push_back(static_cast<unsigned>(n));
  if (a.backend == "enum")
    g.backend = Backend::Enum;
  else if (a.backend != "dp")
    throw CLI::ValidationError("--backend", "must be 'enum' or 'dp'");
  if (a.suite == "duality-r" && g.indices.empty()) {
    for (const char* s : {"3", "1,2", "2,2", "1,1,2"}) g.indices.push_back(parse_index(s));
  }

  enforce_caps(g, caps);

  ThresholdTable thresholds;
  if (a.suite == "padic" || a.suite == "seki") {
    std::string dir = a.fixtures.empty() ? default_fixtures_dir() : a.fixtures;
    thresholds = load_thresholds(fixture_file(dir, a.suite));
    g.thresholds = &thresholds;
  }

  SuitePlan plan = plan_suite(a.suite, g);
  auto reports = run_tasks(plan.tasks, a.jobs);

  if (a.csv && a.suite == "duality-r") {
    std::cout << "N,diff_num,diff_den,diff_decimal\n";
    for (const auto& r : plan.convergence)
      std::cout << r.N << ',' << r.abs_difference.get_num().get_str() << ',' << r.abs_difference.get_den().get_str()
                << ',' << r.decimal << '\n';
  }

  std::size_t passed = 0;
  for (const auto& r : reports) {
    passed += r.pass;
    if (a.json)
      std::cout << to_json(r).dump() << '\n';
    else if (!a.csv)
      std::cout << to_text(r) << '\n';
  }
  for (const auto& note : plan.notes) std::cerr << "note: " << note << '\n';

  const bool all = passed == reports.size();
  std::string summary = std::string(all ? "PASS " : "FAIL ") + std::to_string(passed) + "/" + std::to_string(reports.size());
  (a.json || a.csv ? std::cerr : std::cout) << summary << '\n';
  return all ? 0 : kExitFail;
}

int run_trace(const std::string& index, std::uint64_t N, bool json, const Caps& caps) {
  Index k = parse_index(index);
  if (k.empty()) throw std::invalid_argument("trace requires a nonempty index");
  if (k.weight() > caps.weight) throw CapExceeded("weight exceeds cap");
  if (N == 0) throw std::invalid_argument("N must be positive");
  if (N > caps.upper) throw CapExceeded("N exceeds cap");
  auto t = telescope(k, N);
  if (json)
    std::cout << t.to_json().dump() << '\n';
  else
    std::cout << t.transcript();
  return t.all_equal() ? 0 : kExitFail;
}

int run_pin(const std::string& suite, unsigned max_weight, const std::string& exponents, const std::string& primes,
            const std::string& out_path) {
  std::vector<unsigned> ps;
  for (auto p : parse_range(primes))
    if (is_prime(p)) ps.push_back(static_cast<unsigned>(p));
  if (ps.empty()) throw std::invalid_argument("no primes in range");
  std::vector<unsigned> ns;
  for (auto n : parse_range(exponents)) ns.push_back(static_cast<unsigned>(n));
  auto table = sweep_thresholds(suite, indices_up_to_weight(max_weight), ns, ps);
  std::string header = suite + " thresholds: smallest prime P0 such that every prime in [P0, " +
                       std::to_string(ps.back()) + "] passes (swept from " + std::to_string(ps.front()) + ")";
  if (out_path.empty() || out_path == "-") {
    write_thresholds(std::cout, table, header);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_thresholds(out, table, header);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact multiple harmonic sums, their flat discretization, and duality checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Caps caps;
  app.add_option("--cap-weight", caps.weight, "Largest index weight accepted")->capture_default_str();
  app.add_option("--cap-upper", caps.upper, "Largest N accepted")->capture_default_str();
  app.add_option("--cap-prime", caps.prime, "Largest prime accepted")->capture_default_str();
  app.add_option("--cap-exponent", caps.exponent, "Largest lifting exponent accepted")->capture_default_str();

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Print the exact value of one object");
  eval->add_option("object", ea.object, "zeta | zeta-star | zeta-flat | riemann | connector | Z")
      ->required()
      ->check(CLI::IsMember({"zeta", "zeta-star", "zeta-flat", "riemann", "connector", "Z"}));
  eval->add_option("--index", ea.index, "Index, e.g. 2,3 or 1^3,2");
  eval->add_option("--upper", ea.upper, "Upper bound N (sum over n < N)");
  eval->add_option("--N", ea.N, "N for connector and Z");
  eval->add_option("--n", ea.n, "n for connector");
  eval->add_option("--m", ea.m, "m for connector");
  eval->add_option("--left", ea.left, "Left index of Z (may be empty)");
  eval->add_option("--right", ea.right, "Right index of Z (may be empty)");
  eval->add_option("--decimal", ea.decimal, "Also print a decimal with this many digits");
  eval->add_flag("--json", ea.json, "JSON output");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a verification suite over a grid");
  verify->add_option("suite", va.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--max-weight", va.max_weight, "All indices up to this weight")->capture_default_str();
  verify->add_option("--max-depth", va.max_depth, "Skip indices deeper than this");
  verify->add_option("--index", va.indices, "Explicit index (repeatable); overrides --max-weight");
  verify->add_option("--max-upper", va.max_upper, "N ranges over 1..this");
  verify->add_option("--upper", va.upper, "N values: a..b or a,b,c");
  verify->add_option("--primes", va.primes, "Primes: a..b or a,b,c (non-primes skipped)")->capture_default_str();
  verify->add_option("--exponents", va.exponents, "Lifting exponents for padic/seki")->capture_default_str();
  verify->add_option("--backend", va.backend, "enum | dp")->capture_default_str();
  verify->add_option("--fixtures", va.fixtures, "Directory with pinned thresholds (default $MZVDISC_FIXTURES)");
  verify->add_option("--jobs", va.jobs, "Worker threads")->capture_default_str();
  verify->add_flag("--json", va.json, "One JSON object per line");
  verify->add_flag("--csv", va.csv, "CSV convergence table (duality-r)");

  std::string trace_index;
  std::uint64_t trace_N = 0;
  bool trace_json = false;
  auto* trace = app.add_subcommand("trace", "Print the telescoping chain of connected sums");
  trace->add_option("--index", trace_index, "Index")->required();
  trace->add_option("--N", trace_N, "N")->required();
  trace->add_flag("--json", trace_json, "JSON output");

  std::string pin_suite, pin_exponents = "2..3", pin_primes = "2..199", pin_out;
  unsigned pin_weight = 5;
  auto* pin = app.add_subcommand("pin", "Sweep primes and write the pinned-threshold file for padic or seki");
  pin->add_option("suite", pin_suite, "padic | seki")->required()->check(CLI::IsMember({"padic", "seki"}));
  pin->add_option("--max-weight", pin_weight)->capture_default_str();
  pin->add_option("--exponents", pin_exponents)->capture_default_str();
  pin->add_option("--primes", pin_primes)->capture_default_str();
  pin->add_option("--out", pin_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return run_eval(ea, caps);
    if (*verify) return run_verify(va, caps);
    if (*trace) return run_trace(trace_index, trace_N, trace_json, caps);
    if (*pin) return run_pin(pin_suite, pin_weight, pin_exponents, pin_primes, pin_out);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
