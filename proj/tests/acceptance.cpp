// Acceptance suite: one PASS/FAIL line per criterion. Exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "noiselab/chain.hpp"
#include "noiselab/coupling.hpp"
#include "noiselab/experiments.hpp"
#include "noiselab/flow.hpp"
#include "noiselab/lemma74.hpp"
#include "noiselab/random.hpp"
#include "noiselab/snake.hpp"
#include "noiselab/stats.hpp"
#include "noiselab/trap.hpp"
#include "noiselab/walsh.hpp"
#include "noiselab/web.hpp"
#include "oracles.hpp"

using namespace noiselab;

namespace {

// Tolerances and time limits, in one place.
constexpr double kFlowSeconds = 10.0;
constexpr double kPathSeconds = 10.0;
constexpr double kTheorem79Seconds = 60.0;
constexpr double kLimitLawSeconds = 300.0;
constexpr double kLemma74Tolerance = 1e-12;
const double kWalshRelative = std::ldexp(1.0, -40);
constexpr double kMicroCeiling = 1e-10;
constexpr double kBlockFloor = 0.3;
constexpr double kSmallScaleTolerance = 1e-10;
constexpr double kG2OracleAgreement = 1e-6;
constexpr std::size_t kLimitSamples = 10000;
constexpr std::size_t kWebSamples = 100000;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  Outcome() { detail << std::setprecision(4); }

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "FAILED: ";
      detail << what << "; ";
      pass = false;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::map<flow::G3Int, Rational> as_g3(const oracle::Law& law) {
  std::map<flow::G3Int, Rational> out;
  for (const auto& [key, q] : law) out[{std::get<0>(key), std::get<1>(key), std::get<2>(key)}] = q;
  return out;
}

std::vector<double> random_table(int n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(std::size_t{1} << n);
  for (auto& x : v) x = dist(gen);
  return v;
}

bool close_relative(double x, double y, double scale) { return std::abs(x - y) <= kWalshRelative * scale; }

// ---------------------------------------------------------------- criteria

void exact_flow_laws(Outcome& out) {
  const auto start = Clock::now();
  int laws = 0;
  for (int t = 0; t <= 12; ++t) {
    out.require(flow::flow_law(flow::standard_generators(flow::Model::G1), t) == flow::closed_form_law(flow::Model::G1, t),
                "G1 t=" + std::to_string(t));
    out.require(flow::flow_law(flow::standard_generators(flow::Model::G2), t) == flow::closed_form_law(flow::Model::G2, t),
                "G2 t=" + std::to_string(t));
    for (const Rational& p : {Rational(1, 2), Rational(1, 3)}) {
      const auto law = flow::flow_law(flow::standard_generators(flow::Model::G3, p), t);
      out.require(law == flow::closed_form_law(flow::Model::G3, t, p), "G3 t=" + std::to_string(t) + " p=" + to_string(p));
    }
    laws += 4;
  }
  const double elapsed = seconds_since(start);
  out.require(elapsed < kFlowSeconds, "took longer than the time limit");

  // Word enumeration through the actions on [0, inf).
  for (int t = 0; t <= 10; ++t) {
    out.require(flow::closed_form_law(flow::Model::G2, t).probs() == as_g3(oracle::enumerate_law(oracle::g2_steps(), t, 2)),
                "G2 oracle t=" + std::to_string(t));
    for (const Rational& p : {Rational(1, 2), Rational(1, 3)}) {
      out.require(flow::closed_form_law(flow::Model::G3, t, p).probs() ==
                      as_g3(oracle::enumerate_law(oracle::g3_steps(p), t, 3)),
                  "G3 oracle t=" + std::to_string(t));
    }
  }
  out.require(flow::closed_form_probability(flow::Model::G1, 2, {0, 0, 0}) == Rational(1, 2), "G1 t=2 a=0");
  out.require(flow::flow_law(flow::standard_generators(flow::Model::G3), 2).at({2, 0, 2}) == Rational(1, 8), "P(2,0,2)");
  out.detail << laws << " laws, DP " << elapsed << " s, word oracle t<=10";
}

void path_identities(Outcome& out) {
  const auto start = Clock::now();
  std::int64_t paths = 0;
  std::size_t violations = 0;
  for (int t = 0; t <= 14; ++t) {
    const auto report = flow::check_all_path_identities(t);
    paths += report.paths;
    violations += report.violations.size();
  }
  const double elapsed = seconds_since(start);
  out.require(violations == 0, std::to_string(violations) + " violations");
  out.require(elapsed < kPathSeconds, "took longer than the time limit");

  // Reflected action against the running minimum and the max over suffixes.
  std::size_t oracle_violations = 0;
  const int t = 14;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << t); ++w) {
    std::vector<oracle::Letter> word;
    std::vector<std::int64_t> a{0};
    for (int k = 0; k < t; ++k) {
      word.push_back(((w >> k) & 1U) != 0 ? oracle::Letter::Plus : oracle::Letter::Minus);
      a.push_back(a.back() + oracle::increment(word.back()));
    }
    const auto s = oracle::summarize(word);
    std::int64_t min_a = 0;
    std::int64_t max_suffix = 0;
    for (int k = 0; k <= t; ++k) {
      min_a = std::min(min_a, a[static_cast<std::size_t>(k)]);
      max_suffix = std::max(max_suffix, a.back() - a[static_cast<std::size_t>(k)]);
    }
    if (s.b != -min_a || s.a + s.b != max_suffix) ++oracle_violations;
  }
  out.require(oracle_violations == 0, "reflected-walk oracle disagrees");
  out.detail << paths << " paths, " << elapsed << " s";
}

void conditional_stickiness(Outcome& out) {
  std::size_t entries = 0;
  for (const Rational& p : {Rational(1, 2), Rational(1, 3)}) {
    for (int t = 0; t <= 8; ++t) {
      const auto report = flow::conditional_c_law(t, p);
      out.require(report.ok(), "t=" + std::to_string(t) + " p=" + to_string(p));
      entries += report.entries.size();

      // Conditional law of the sticky walk's endpoint from word enumeration.
      const auto law = oracle::enumerate_law(oracle::g3_steps(p), t, 3);
      std::map<std::pair<std::int64_t, std::int64_t>, Rational> marginal;
      for (const auto& [key, q] : law) marginal[{std::get<0>(key), std::get<1>(key)}] += q;
      for (const auto& [key, q] : law) {
        const auto [a, b, c] = key;
        const auto expected = oracle::truncated_geometric(a + b, p);
        const auto it = expected.find(c);
        out.require(it != expected.end() && q / marginal[{a, b}] == it->second, "oracle conditional law");
      }
    }
  }
  out.detail << entries << " conditional entries, word oracle agrees";
}

void poisson_snake(Outcome& out) {
  std::int64_t words = 0;
  std::int64_t paths = 0;
  for (const Rational& p : {Rational(1, 2), Rational(1, 3)}) {
    for (int t = 0; t <= 8; ++t) {
      const auto report = flow::check_snake(t, p);
      out.require(report.flow_match, "aggregate t=" + std::to_string(t));
      out.require(report.alive_mismatches == 0, "alive binomial t=" + std::to_string(t));
      out.require(report.word_mismatches == 0, "pathwise c t=" + std::to_string(t));
      out.require(flow::snake_flow_law(t, p).probs() == as_g3(oracle::enumerate_law(oracle::g3_steps(p), t, 3)),
                  "word oracle t=" + std::to_string(t));
      words += report.words;
      paths += report.alive_paths;
    }
  }
  out.detail << paths << " alive-count laws, " << words << " words";
}

void theorem79(Outcome& out) {
  const auto start = Clock::now();
  std::size_t subsets = 0;
  for (int n = 1; n <= 10; ++n) {
    const auto report = web::theorem79_check(n);
    out.require(report.ok(), "n=" + std::to_string(n));
    out.require(report.entries.size() == (std::size_t{1} << n), "subset count n=" + std::to_string(n));
    subsets += report.entries.size();
  }
  const double elapsed = seconds_since(start);
  out.require(elapsed < kTheorem79Seconds, "took longer than the time limit");

  for (int n = 1; n <= 6; ++n) {
    for (const auto& e : web::theorem79_check(n).entries) {
      Rational lhs(0);
      Rational rhs(0);
      for (int k = 0; k < n; ++k) {
        const auto [inclusion, trapped_zero] = oracle::chain_probabilities(k, e.subset);
        lhs += inclusion;
        if (((e.subset >> k) & 1U) != 0) rhs += trapped_zero;
      }
      out.require(e.lhs == lhs / n && e.rhs == rhs / n, "path-enumeration oracle n=" + std::to_string(n));
    }
  }
  for (int n = 1; n <= 10; ++n) {
    out.require(web::zero_set_probability(web::TrapSchedule::from_list(n, {0})) == Rational(1, n), "p_{n,{0}} = 1/n");
    if (n >= 2) {
      out.require(web::zero_set_probability(web::TrapSchedule::from_list(n, {1})) == Rational(1, 2 * n), "p_{n,{1}}");
    }
  }
  out.require(web::zero_inclusion_prob(2, web::TrapSchedule::from_list(3, {2})) == Rational(3, 8), "S={2}, k=2");
  out.detail << subsets << " subsets, " << elapsed << " s";
}

void proof_identities(Outcome& out) {
  std::size_t checked = 0;
  for (int n = 1; n <= 8; ++n) {
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      out.require(web::resampling_identities(web::TrapSchedule(n, s)).ok(), "resampling n=" + std::to_string(n));
      ++checked;
    }
    out.require(web::zero_spectral_identity(n).ok(), "zero-spectral n=" + std::to_string(n));
  }
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      out.require(web::resampling_correlation(web::TrapSchedule(n, s)) == oracle::web_resampling_correlation(n, s),
                  "field-enumeration oracle n=" + std::to_string(n));
    }
  }
  out.require(web::resampling_correlation(web::TrapSchedule::from_list(2, {1})) == Rational(1, 2), "n=2, S={1}");
  out.detail << checked << " schedules; field oracle n<=4, Walsh route n<=" << web::kWalshRouteLimit;
}

void lemma74(Outcome& out) {
  double worst = -1.0;
  std::mt19937_64 gen(experiments::kDefaultSeed);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto inst = web::random_lemma74_instance(derive_seed(experiments::kDefaultSeed, k));
    out.require(inst.n <= 3 && inst.atoms.size() <= 3, "instance size");
    const auto report = web::lemma74_bound_check(inst);
    out.require(report.ok(kLemma74Tolerance), "instance " + std::to_string(k));
    worst = std::max(worst, report.norm_squared - report.bound);
    std::vector<Rational> psi(inst.y_space());
    for (auto& v : psi) v = coeff(gen);
    bool constant = true;
    for (const auto& v : psi) constant = constant && v == psi.front();
    if (!constant) {
      const double corr = to_double(web::projection_correlation_squared(inst, psi));
      out.require(corr <= report.norm_squared + kLemma74Tolerance, "exact correlation above the norm");
    }
  }
  for (const Rational& q : {Rational(1, 2), Rational(1, 3)}) {
    const auto inst = web::bernoulli_instance(q);
    out.require(std::abs(web::lemma74_bound_check(inst).norm_squared - to_double(q)) <= kLemma74Tolerance, "tightness");
    out.require(web::projection_correlation_squared(inst, {Rational(-1), Rational(1)}) == q, "exact tightness");
  }
  out.detail << "200 instances, worst norm^2 - bound = " << worst;
}

void walsh_layer(Outcome& out) {
  std::mt19937_64 gen(experiments::kDefaultSeed);
  for (int n = 1; n <= 12; ++n) {
    const walsh::Observable f(n, random_table(n, gen));
    const walsh::Observable g(n, random_table(n, gen));
    const auto fs = walsh::walsh_transform(f);
    const double scale = std::sqrt(f.norm_squared() * g.norm_squared());
    out.require(close_relative(fs.norm_squared(), f.norm_squared(), f.norm_squared()), "Parseval n=" + std::to_string(n));

    const auto mu = walsh::spectral_measure(fs);
    const walsh::Mask e = std::uniform_int_distribution<walsh::Mask>(0, (walsh::Mask{1} << n) - 1)(gen);
    out.require(close_relative(walsh::conditional_expectation(f, e).norm_squared(), mu.mass_within(e), f.norm_squared()),
                "projection norm n=" + std::to_string(n));

    for (double rho : {0.3, -0.6}) {
      const double spectral = walsh::noisy_correlation(f, g, rho);
      out.require(close_relative(spectral, walsh::coupled_expectation(f, g, rho), scale), "coupling n=" + std::to_string(n));
      if (n <= 6) {
        out.require(close_relative(spectral, oracle::naive_coupled(n, f.values(), g.values(), rho), scale),
                    "naive coupling n=" + std::to_string(n));
      }
    }
    if (n <= 7) {
      const auto slow = oracle::naive_transform(n, f.values());
      for (walsh::Mask m = 0; m < slow.size(); ++m) {
        out.require(close_relative(fs.coeff(m), slow[m], std::sqrt(f.norm_squared())), "naive transform");
      }
    }

    // Dyadic coefficients keep every sum exact.
    std::vector<double> c(static_cast<std::size_t>(n));
    for (auto& v : c) v = std::ldexp(static_cast<double>(std::uniform_int_distribution<int>(-64, 64)(gen)), -4);
    const auto linear = walsh::Observable::from_function(n, [&](walsh::Mask w) {
      double s = 0.0;
      for (int m = 0; m < n; ++m) s += c[static_cast<std::size_t>(m)] * walsh::character(walsh::Mask{1} << m, w);
      return s;
    });
    double sum_sq = 0.0;
    for (int m = 0; m < n; ++m) {
      const double inf = walsh::influence(linear, m);
      out.require(inf * inf == c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(m)], "linear influence");
      sum_sq += c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(m)];
    }
    out.require(walsh::bks_statistic(linear) == sum_sq, "influence additivity n=" + std::to_string(n));
  }
  out.detail << "n=1..12, relative tolerance 2^-40";
}

void micro_block(Outcome& out) {
  const double rho = std::exp(-1.0);
  const auto large = experiments::micro_block_correlations(4096, 1.0, rho, walsh::BlockPartition::uniform(4096, 4));
  out.require(large.length == 64, "window length");
  out.require(large.micro == std::pow(rho, 64) && large.micro <= kMicroCeiling, "micro correlation");
  out.require(large.block >= kBlockFloor, "block correlation");

  const auto blocks = walsh::BlockPartition::uniform(8, 2);
  const auto small = experiments::micro_block_correlations(8, 1.0, rho, blocks);
  const auto f = experiments::product_observable(8, 1.0);
  const double norm = f.norm_squared();
  const double block = oracle::naive_block_coupled(8, f.values(), f.values(), {{0, 4}, {4, 8}}, rho) / norm;
  const double micro = oracle::naive_coupled(8, f.values(), f.values(), rho) / norm;
  out.require(std::abs(small.block - block) <= kSmallScaleTolerance, "i=8 block vs resampling oracle");
  out.require(std::abs(small.block - (6 * rho + rho * rho) / 7) <= kSmallScaleTolerance, "i=8 block formula");
  out.require(std::abs(small.micro - micro) <= kSmallScaleTolerance, "i=8 micro vs coupling oracle");
  out.require(experiments::micro_block_report(8, 1.0, rho, 2).pass(), "i=8 report");
  out.detail << "micro " << large.micro << ", block " << large.block << "; i=8 block " << small.block;
}

void limit_laws(Outcome& out) {
  const auto start = Clock::now();
  const auto clt = experiments::clt_report({256, 1024, 4096});
  const auto g2 = experiments::g2_limit_report(2048);
  const auto g3 = experiments::g3_limit_report(4096, kLimitSamples, experiments::kDefaultSeed);
  const auto poisson = experiments::poisson_block_report(8, 1, kLimitSamples, experiments::kDefaultSeed);
  const double elapsed = seconds_since(start);
  out.require(clt.pass(), "clt");
  out.require(g2.pass(), "g2limit");
  out.require(g3.pass(), "g3limit");
  out.require(poisson.pass(), "poisson");
  out.require(elapsed < kLimitLawSeconds, "took longer than the time limit");

  // KS of the reflection-principle law against a numerically integrated density.
  const int i = 2048;
  double cum = 0.0;
  double ks = 0.0;
  for (const auto& [s, q] : oracle::g2_sum_law(i)) {
    const double f = oracle::maxwell_cdf_numeric(static_cast<double>(s) / std::sqrt(static_cast<double>(i)));
    ks = std::max({ks, std::abs(cum - f), std::abs(cum + q - f)});
    cum += q;
  }
  out.require(std::abs(ks - g2.stats["ks"].get<double>()) <= kG2OracleAgreement, "g2 oracle KS");
  out.detail << "clt " << clt.stats["ks_i=4096"].get<double>() << ", g2 " << g2.stats["ks"].get<double>() << ", g3 "
             << g3.stats["ks"].get<double>() << ", poisson tv " << poisson.stats["tv"].get<double>() << "; " << elapsed
             << " s";
}

void trap_model(Outcome& out) {
  for (int m : {2, 3}) {
    std::int64_t worst = 0;
    for (int t = 0; t <= 12; ++t) {
      const auto report = flow::trap_model_law(t, m);
      out.require(report.ok() && report.paths == (std::int64_t{1} << t), "bound m=" + std::to_string(m));
      worst = std::max(worst, report.max_deviation);
    }
    // Both walks of every word, run through the trap actions.
    oracle::for_each_word(oracle::trap_steps(), 12, [&](const std::vector<oracle::Letter>& word, const oracle::Q&) {
      const auto s = oracle::summarize(word, m);
      out.require(std::abs(s.b + s.min_a) <= static_cast<std::int64_t>(flow::kTrapBoundFactor) * m, "oracle bound");
    });
    out.detail << "m=" << m << " max |b + min a| = " << worst << ", ";
  }
  const auto sample = flow::trap_waiting_sample(5, 1024, kLimitSamples, experiments::kDefaultSeed);
  const double ks = stats::ks_truncated_exponential(sample.waiting, sample.caps);
  out.require(ks <= experiments::kTrapTolerance, "waiting-time KS");
  out.detail << "KS " << ks;
}

void web_mechanics(Outcome& out) {
  const int width = 8;
  const int horizon = 6;
  std::uint64_t fields = 0;
  // Every triple spanning at most five rows, over every sign of those rows.
  for (int r = 0; r <= horizon; ++r) {
    for (int t = r + 2; t <= std::min(horizon, r + 5); ++t) {
      const int shift = r * width / 2;
      const int sites = (t - r) * width / 2;
      for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << sites); ++sub) {
        const auto field = web::SignField::from_bits(web::Topology::Circle, horizon, width, sub << shift);
        const auto whole = web::evolve_web(field, r, t);
        for (int s = r + 1; s < t; ++s) {
          if (web::compose_maps(web::evolve_web(field, r, s), web::evolve_web(field, s, t)) != whole) {
            out.require(false, "flow property r=" + std::to_string(r) + " t=" + std::to_string(t));
          }
        }
        ++fields;
      }
    }
  }
  // The full span at its middle split over all 2^24 fields, and every split on random fields.
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << 24); ++bits) {
    const auto field = web::SignField::from_bits(web::Topology::Circle, horizon, width, bits);
    if (web::compose_maps(web::evolve_web(field, 0, 3), web::evolve_web(field, 3, horizon)) !=
        web::evolve_web(field, 0, horizon)) {
      out.require(false, "flow property at the middle split");
    }
  }
  for (std::uint64_t k = 0; k < 2000; ++k) {
    const auto field = web::SignField::random(web::Topology::Circle, horizon, width, derive_seed(experiments::kDefaultSeed, k));
    for (int s = 1; s < horizon; ++s) {
      out.require(web::compose_maps(web::evolve_web(field, 0, s), web::evolve_web(field, s, horizon)) ==
                      web::evolve_web(field, 0, horizon),
                  "flow property on a random field");
    }
  }

  const Rational exact = web::expected_critical_count(6, 3);
  BigInt total = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << 9); ++bits) total += oracle::circle_image_count(6, 3, bits);
  out.require(exact == Rational(total) / 512, "exact mean vs oracle");
  out.require(exact == Rational(105, 64), "exact mean");
  const auto mc = web::sample_critical_count(6, 3, kWebSamples, experiments::kDefaultSeed);
  const double gap = std::abs(mc.mean - to_double(exact));
  out.require(gap <= experiments::kSigmaBand * mc.std_error, "Monte Carlo mean");
  out.detail << fields << " row-restricted fields + 2^24 full fields; E n(0,3) = " << to_string(exact) << ", MC "
             << mc.mean << " +- " << mc.std_error;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"exact flow laws", exact_flow_laws},
      {"path identities", path_identities},
      {"conditional stickiness law", conditional_stickiness},
      {"Poisson snake", poisson_snake},
      {"zero-set identity", theorem79},
      {"resampling and spectral identities", proof_identities},
      {"correlation bound", lemma74},
      {"Walsh layer", walsh_layer},
      {"micro vs block stability", micro_block},
      {"limit laws", limit_laws},
      {"trap model", trap_model},
      {"web mechanics", web_mechanics},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome out;
    const auto start = Clock::now();
    try {
      criteria[k].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed = seconds_since(start);
    std::printf("%s %2zu %-36s %7.2f s  %s\n", out.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), elapsed,
                out.detail.str().c_str());
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
