#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "noiselab/errors.hpp"
#include "noiselab/rational.hpp"

namespace noiselab::cli {

namespace {

using Defaults = std::map<std::string, std::string>;

const std::map<std::string, std::map<std::string, Defaults>>& table() {
  static const std::map<std::string, std::map<std::string, Defaults>> t = {
      {"verify",
       {{"flows", {{"t", "10"}, {"p", "1/2"}}},
        {"theorem79", {{"n", "8"}, {"all-subsets", "false"}, {"sample-count", "64"}}},
        {"resampling", {{"n", "8"}}},
        {"lemma74", {{"instances", "200"}}},
        {"walsh", {{"n", "10"}}},
        {"snake", {{"t", "8"}, {"p", "1/2"}}},
        {"trap", {{"t", "12"}, {"m", "3"}, {"mc-m", "5"}, {"mc-t", "1024"}}},
        {"all", {}}}},
      {"run",
       {{"clt", {{"i", "256,1024,4096"}}},
        {"g2limit", {{"i", "2048"}}},
        {"g3limit", {{"i", "4096"}}},
        {"microblock", {{"i", "4096"}, {"lambda", "1"}, {"rho", "0.36787944117144233"}, {"blocks", "4"}}},
        {"poisson", {{"n-pattern", "8"}, {"t-span", "1"}}},
        {"web", {{"width", "6"}, {"t", "3"}}}}},
  };
  return t;
}

const std::map<std::string, std::size_t>& default_samples() {
  static const std::map<std::string, std::size_t> s = {
      {"trap", 10'000}, {"g3limit", 10'000}, {"poisson", 10'000}, {"web", 100'000}, {"all", 10'000}};
  return s;
}

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d = {
      {"flows", "exact G1/G2/G3 laws against their closed forms, path identities, conditional c law"},
      {"theorem79", "p_{n,S} against the trapped-chain occupation, exact"},
      {"resampling", "resampling correlation identities and the zero-set spectral identity"},
      {"lemma74", "projection norms on random instances and the tightness instance"},
      {"walsh", "Parseval, projections, coupling and influence identities"},
      {"snake", "chord-selection law against the sticky flow"},
      {"trap", "trap-model path bound and rescaled waiting statistic"},
      {"all", "every verification with acceptance-level parameters"},
      {"clt", "exact law of i^-1/2 a(0,i) against N(0,1)"},
      {"g2limit", "exact law of (a+2b)/sqrt(i) against the Maxwell CDF"},
      {"g3limit", "sticky flow c/sqrt(i) against the truncated exponential law"},
      {"microblock", "micro and block noise correlations of the product observable"},
      {"poisson", "pattern counts against Poisson(t_span)"},
      {"web", "coalescing web flow property and mean critical count"},
  };
  return d;
}

long long to_int(const std::string& key, const std::string& text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw InvalidParameter("--" + key + " expects an integer, got '" + text + "'");
  return v;
}

int to_small_int(const std::string& key, const std::string& text) {
  const long long v = to_int(key, text);
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) throw InvalidParameter("--" + key + " is out of range");
  return static_cast<int>(v);
}

double to_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || !std::isfinite(v)) {
    throw InvalidParameter("--" + key + " expects a real number, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw InvalidParameter("--" + key + " expects true or false, got '" + text + "'");
}

std::vector<int> to_int_list(const std::string& key, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_small_int(key, item));
  if (out.empty()) throw InvalidParameter("--" + key + " expects a comma-separated list of integers");
  return out;
}

class Params {
 public:
  Params(const RunConfig& config) : config_(config), defaults_(target_defaults(config.command, config.target)) {}

  const std::string& raw(const std::string& key) const {
    const auto it = config_.params.find(key);
    return it != config_.params.end() ? it->second : defaults_.at(key);
  }
  int integer(const std::string& key) const { return to_small_int(key, raw(key)); }
  double real(const std::string& key) const { return to_real(key, raw(key)); }
  bool flag(const std::string& key) const { return to_bool(key, raw(key)); }
  Rational rational(const std::string& key) const { return parse_rational(raw(key)); }
  std::vector<int> integers(const std::string& key) const { return to_int_list(key, raw(key)); }

 private:
  const RunConfig& config_;
  const Defaults& defaults_;
};

std::size_t samples_for(const RunConfig& config) {
  if (config.samples > 0) return config.samples;
  const auto it = default_samples().find(config.target);
  return it == default_samples().end() ? 0 : it->second;
}

ExperimentReport verify_all(const RunConfig& config) {
  const auto& b = config.budget;
  const std::size_t samples = samples_for(config);
  std::vector<ExperimentReport> parts;
  for (const auto& p : {Rational(1, 2), Rational(1, 3)}) {
    auto flows = experiments::verify_flows(12, p, b);
    flows.name += "_p=" + p.get_str();
    parts.push_back(std::move(flows));
    auto snake = experiments::verify_snake(8, p, b);
    snake.name += "_p=" + p.get_str();
    parts.push_back(std::move(snake));
  }
  for (int n = 1; n <= 10; ++n) {
    auto r = experiments::verify_theorem79(n, true, 0, config.seed, b);
    r.name += "_n=" + std::to_string(n);
    parts.push_back(std::move(r));
  }
  for (int n = 1; n <= 8; ++n) {
    auto r = experiments::verify_zero_spectral(n, b);
    r.name += "_n=" + std::to_string(n);
    parts.push_back(std::move(r));
  }
  parts.push_back(experiments::verify_lemma74(200, config.seed));
  parts.push_back(experiments::verify_walsh(12, config.seed, b));
  auto trap2 = experiments::verify_trap(12, 2, 5, 1024, 0, config.seed, b);
  trap2.name += "_m=2";
  parts.push_back(std::move(trap2));
  auto trap3 = experiments::verify_trap(12, 3, 5, 1024, samples, config.seed, b);
  trap3.name += "_m=3";
  parts.push_back(std::move(trap3));
  auto merged = merge_reports("verify_all", parts);
  merged.seed = config.seed;
  merged.samples = samples;
  return merged;
}

ExperimentReport dispatch(const RunConfig& config) {
  const Params p(config);
  const auto& t = config.target;
  const auto& b = config.budget;
  const std::size_t samples = samples_for(config);
  if (config.command == "verify") {
    if (t == "flows") return experiments::verify_flows(p.integer("t"), p.rational("p"), b);
    if (t == "theorem79") {
      const int count = p.integer("sample-count");
      if (count < 1) throw InvalidParameter("--sample-count must be positive");
      return experiments::verify_theorem79(p.integer("n"), p.flag("all-subsets"), static_cast<std::size_t>(count), config.seed, b);
    }
    if (t == "resampling") return experiments::verify_zero_spectral(p.integer("n"), b);
    if (t == "lemma74") {
      const int count = p.integer("instances");
      if (count < 0) throw InvalidParameter("--instances must be non-negative");
      return experiments::verify_lemma74(static_cast<std::size_t>(count), config.seed);
    }
    if (t == "walsh") return experiments::verify_walsh(p.integer("n"), config.seed, b);
    if (t == "snake") return experiments::verify_snake(p.integer("t"), p.rational("p"), b);
    if (t == "trap") {
      return experiments::verify_trap(p.integer("t"), p.integer("m"), p.integer("mc-m"), p.integer("mc-t"), samples, config.seed, b);
    }
    if (t == "all") return verify_all(config);
  } else {
    if (t == "clt") return experiments::clt_report(p.integers("i"));
    if (t == "g2limit") return experiments::g2_limit_report(p.integer("i"));
    if (t == "g3limit") return experiments::g3_limit_report(p.integer("i"), samples, config.seed);
    if (t == "microblock") {
      return experiments::micro_block_report(p.integer("i"), p.real("lambda"), p.real("rho"), p.integer("blocks"));
    }
    if (t == "poisson") return experiments::poisson_block_report(p.integer("n-pattern"), p.integer("t-span"), samples, config.seed);
    if (t == "web") return experiments::web_report(p.integer("width"), p.integer("t"), samples, config.seed);
  }
  throw InvalidParameter("unknown target '" + config.command + " " + t + "'");
}

std::string cell(const Json& v) {
  if (v.is_object() && v.contains("num") && v.contains("den")) {
    return v["num"].get<std::string>() + "/" + v["den"].get<std::string>();
  }
  return v.dump();
}

}  // namespace

const std::map<std::string, std::string>& target_defaults(const std::string& command, const std::string& target) {
  const auto c = table().find(command);
  if (c == table().end()) throw InvalidParameter("unknown command '" + command + "'");
  const auto t = c->second.find(target);
  if (t == c->second.end()) throw InvalidParameter("unknown " + command + " target '" + target + "'");
  return t->second;
}

std::vector<std::string> targets(const std::string& command) {
  std::vector<std::string> out;
  for (const auto& [name, defaults] : table().at(command)) out.push_back(name);
  return out;
}

void validate(const RunConfig& config) {
  const auto& defaults = target_defaults(config.command, config.target);
  for (const auto& [key, value] : config.params) {
    if (defaults.find(key) == defaults.end()) {
      throw InvalidParameter("unknown parameter '" + key + "' for " + config.command + " " + config.target);
    }
  }
  if (config.format != "json" && config.format != "csv") throw InvalidParameter("--format must be json or csv");
  // Parse every value once so malformed input fails before any work starts.
  const Params p(config);
  for (const auto& [key, def] : defaults) {
    const auto& text = p.raw(key);
    if (key == "p") {
      p.rational(key);
    } else if (key == "lambda" || key == "rho") {
      p.real(key);
    } else if (key == "all-subsets") {
      p.flag(key);
    } else if (key == "i" && config.target == "clt") {
      p.integers(key);
    } else {
      to_small_int(key, text);
    }
  }
}

int parse_args(int argc, const char* const* argv, RunConfig& config, std::ostream& out, std::ostream& err) {
  CLI::App app{"noiselab: exact and Monte Carlo checks of noise, flow and web models"};
  app.require_subcommand(1, 1);
  std::string budget_spec;
  app.add_option("--seed", config.seed, "master seed (default " + std::to_string(experiments::kDefaultSeed) + ")");
  app.add_option("--samples", config.samples, "Monte Carlo sample count (0 selects the target default)");
  app.add_option("--format", config.format, "artifact format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", config.out, "artifact path (default: stdout)");
  app.add_option("--budget", budget_spec, "caps as key=value,... (dense, support, exhaustive_t, path_t, subset_n)");

  std::map<std::string, std::map<std::string, std::string>> given;
  std::map<std::string, bool> flags;
  std::vector<std::pair<CLI::App*, std::pair<std::string, std::string>>> leaves;
  for (const std::string command : {"verify", "run"}) {
    auto* sub = app.add_subcommand(command, command == "verify" ? "exact verifications" : "scaling experiments");
    sub->require_subcommand(1, 1);
    sub->fallthrough();
    for (const auto& target : targets(command)) {
      auto* leaf = sub->add_subcommand(target, descriptions().at(target));
      leaf->fallthrough();
      const std::string id = command + " " + target;
      for (const auto& [key, def] : target_defaults(command, target)) {
        if (key == "all-subsets") {
          leaf->add_flag("--" + key, flags[id], "check every subset of {0..n-1}");
        } else {
          leaf->add_option("--" + key, given[id][key], "default " + def);
        }
      }
      leaves.push_back({leaf, {command, target}});
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidConfig;
  }

  for (const auto& [leaf, names] : leaves) {
    if (!leaf->parsed()) continue;
    config.command = names.first;
    config.target = names.second;
    const std::string id = names.first + " " + names.second;
    for (const auto& [key, def] : target_defaults(names.first, names.second)) {
      if (key == "all-subsets") {
        if (flags[id]) config.params[key] = "true";
      } else if (leaf->count("--" + key) > 0) {
        config.params[key] = given[id][key];
      }
    }
  }
  try {
    config.budget = budget_spec.empty() ? budget_from_env() : parse_budget(budget_spec, budget_from_env());
    validate(config);
  } catch (const Error& e) {
    err << "noiselab: invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  }
  return -1;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  ExperimentReport report;
  try {
    validate(config);
    report = dispatch(config);
  } catch (const InvalidParameter& e) {
    err << "noiselab: invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const BudgetExceeded& e) {
    err << "noiselab: budget exceeded: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const DimensionTooLarge& e) {
    err << "noiselab: dimension too large: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const Error& e) {
    err << "noiselab: invariant violated: " << e.what() << '\n';
    return kFailed;
  }
  report.seed = config.seed;

  const std::string artifact = config.format == "csv" ? to_csv(report) : to_json(report).dump(2) + "\n";
  if (config.out.empty()) {
    out << artifact;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    if (!file) {
      err << "noiselab: cannot write " << config.out << '\n';
      return kInvalidConfig;
    }
    file << artifact;
  }
  for (const auto& c : report.checks) {
    err << (c.pass ? "PASS " : "FAIL ") << report.name << '.' << c.id << "  lhs=" << cell(c.lhs) << "  rhs=" << cell(c.rhs)
        << '\n';
  }
  err << report.name << ": " << report.checks.size() << " checks, " << report.failures() << " failed\n";
  return report.pass() ? kOk : kFailed;
}

}  // namespace noiselab::cli
