#include "noiselab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "noiselab/chain.hpp"
#include "noiselab/coupling.hpp"
#include "noiselab/errors.hpp"
#include "noiselab/flow.hpp"
#include "noiselab/lemma74.hpp"
#include "noiselab/random.hpp"
#include "noiselab/snake.hpp"
#include "noiselab/stats.hpp"
#include "noiselab/trap.hpp"
#include "noiselab/web.hpp"

namespace noiselab::experiments {

namespace {

std::string subset_label(std::uint64_t s, int n) {
  std::string out = "S=";
  for (int k = n - 1; k >= 0; --k) out += ((s >> k) & 1U) != 0 ? '1' : '0';
  return out;
}

// Runs `body(rng, count)` over consecutive shards; each shard has its own derived seed.
template <class Body>
void for_each_shard(std::size_t samples, std::uint64_t seed, Body&& body) {
  for (std::size_t shard = 0, done = 0; done < samples; ++shard) {
    const std::size_t count = std::min(kShardSize, samples - done);
    Rng rng(derive_seed(seed, shard));
    body(rng, count);
    done += count;
  }
}

bool relative_close(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

// ---------------------------------------------------------------- limit laws

ExperimentReport clt_report(const std::vector<int>& scales) {
  if (scales.empty()) throw InvalidParameter("clt needs at least one scale");
  ExperimentReport report;
  report.name = "clt";
  report.params["i"] = scales;
  for (int i : scales) {
    if (i < 1) throw InvalidParameter("clt scale i must be at least 1");
    const double root = std::sqrt(static_cast<double>(i));
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(static_cast<std::size_t>(i) + 1);
    const double log_norm = static_cast<double>(i) * std::log(2.0);
    for (int j = 0; j <= i; ++j) {
      const double log_binom = std::lgamma(i + 1.0) - std::lgamma(j + 1.0) - std::lgamma(i - j + 1.0);
      atoms.emplace_back(static_cast<double>(2 * j - i) / root, std::exp(log_binom - log_norm));
    }
    const double ks = stats::ks_discrete(std::move(atoms), stats::normal_cdf);
    report.stats["ks_i=" + std::to_string(i)] = ks;
    report.add_at_most("ks_i=" + std::to_string(i), ks, 1.0 / root);
  }
  return report;
}

ExperimentReport g2_limit_report(int i) {
  if (i < 16) throw InvalidParameter("g2 limit needs i >= 16");
  // State (d, b) with d = a - min a and b = -min a; a + 2b = d + b.
  const auto side = static_cast<std::size_t>(i) + 2;
  std::vector<double> cur(side * side, 0.0);
  std::vector<double> next(side * side, 0.0);
  cur[0] = 1.0;
  for (int k = 0; k < i; ++k) {
    for (int b = 0; b <= k + 1; ++b) {
      std::fill_n(next.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(b) * side), k + 2 - b, 0.0);
    }
    for (int b = 0; b <= k; ++b) {
      const std::size_t row = static_cast<std::size_t>(b) * side;
      for (int d = (k - b) % 2; d <= k - b; d += 2) {
        const double q = 0.5 * cur[row + static_cast<std::size_t>(d)];
        next[row + static_cast<std::size_t>(d) + 1] += q;
        if (d > 0) {
          next[row + static_cast<std::size_t>(d) - 1] += q;
        } else {
          next[row + side] += q;
        }
      }
    }
    std::swap(cur, next);
  }
  std::vector<double> by_sum(static_cast<std::size_t>(i) + 1, 0.0);
  for (int b = 0; b <= i; ++b) {
    for (int d = 0; d + b <= i; ++d) by_sum[static_cast<std::size_t>(d + b)] += cur[static_cast<std::size_t>(b) * side + static_cast<std::size_t>(d)];
  }
  const double root = std::sqrt(static_cast<double>(i));
  std::vector<std::pair<double, double>> atoms;
  double total = 0.0;
  for (std::size_t s = 0; s < by_sum.size(); ++s) {
    if (by_sum[s] == 0.0) continue;
    atoms.emplace_back(static_cast<double>(s) / root, by_sum[s]);
    total += by_sum[s];
  }
  const double ks = stats::ks_discrete(std::move(atoms), stats::maxwell_cdf);
  ExperimentReport report;
  report.name = "g2limit";
  report.params["i"] = i;
  report.stats["ks"] = ks;
  report.stats["total_mass"] = total;
  report.stats["target_mass"] = stats::maxwell_cdf(50.0);
  report.add("total_mass", total, 1.0, std::abs(total - 1.0) <= 1e-9);
  report.add("target_mass", stats::maxwell_cdf(50.0), 1.0, std::abs(stats::maxwell_cdf(50.0) - 1.0) <= 1e-12);
  if (i >= kG2MinScale) {
    report.add_at_most("ks", ks, kG2Tolerance);
  } else {
    report.add("ks", ks, kG2Tolerance, true);
  }
  return report;
}

ExperimentReport g3_limit_report(int i, std::size_t samples, std::uint64_t seed) {
  const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(i))));
  if (i < 256 || root * root != i) throw InvalidParameter("g3 limit needs i a perfect square >= 256");
  if (samples < 2) throw InvalidParameter("g3 limit needs at least two samples");
  const double p = 1.0 / root;
  const double scale = 1.0 / root;
  std::vector<double> sticky;
  std::vector<double> reference;
  std::vector<double> atom_diff;
  sticky.reserve(samples);
  reference.reserve(samples);
  atom_diff.reserve(samples);
  const auto minus = semigroup::f_minus<std::int64_t>();
  const auto plus = semigroup::f_plus<std::int64_t>();
  const auto star = semigroup::f_star<std::int64_t>();
  for_each_shard(samples, seed, [&](Rng& rng, std::size_t count) {
    for (std::size_t n = 0; n < count; ++n) {
      semigroup::G3Int x{};
      for (int k = 0; k < i; ++k) {
        const double u = rng.uniform01();
        x = semigroup::compose(x, u < 0.5 ? minus : (u < 0.5 + 0.5 * p ? star : plus));
      }
      const double span = scale * static_cast<double>(x.a + x.b);
      sticky.push_back(scale * static_cast<double>(x.c));
      reference.push_back(std::max(0.0, span - rng.exp1()));
      atom_diff.push_back((x.c == 0 ? 1.0 : 0.0) - std::exp(-span));
    }
  });
  const double ks = stats::ks_two_sample(sticky, reference);
  const auto atom = stats::mean_estimate(atom_diff);
  ExperimentReport report;
  report.name = "g3limit";
  report.params["i"] = i;
  report.seed = seed;
  report.samples = samples;
  report.stats["ks"] = ks;
  report.stats["atom_mean_difference"] = atom.mean;
  report.stats["atom_std_error"] = atom.std_error;
  report.add_at_most("ks", ks, kG3Tolerance);
  report.add_at_most("atom", std::abs(atom.mean), 3.0 * atom.std_error);
  return report;
}

int count_pattern(const std::vector<int>& signs, int n_pattern) {
  if (n_pattern < 1) throw InvalidParameter("pattern length must be positive");
  int count = 0;
  const auto len = static_cast<std::size_t>(n_pattern);
  for (std::size_t k = 0; k + len <= signs.size(); ++k) {
    if (signs[k] != 1) continue;
    bool hit = true;
    for (std::size_t m = 1; m < len && hit; ++m) hit = signs[k + m] == -1;
    count += hit ? 1 : 0;
  }
  return count;
}

ExperimentReport poisson_block_report(int n_pattern, int t_span, std::size_t samples, std::uint64_t seed) {
  if (n_pattern < 1 || n_pattern > 20) throw InvalidParameter("pattern length must lie in [1, 20]");
  if (t_span < 1) throw InvalidParameter("t_span must be a positive integer");
  if (samples < 2) throw InvalidParameter("poisson block needs at least two samples");
  const std::size_t length = static_cast<std::size_t>(t_span) << n_pattern;
  std::vector<int> counts;
  counts.reserve(samples);
  std::vector<int> signs(length);
  for_each_shard(samples, seed, [&](Rng& rng, std::size_t count) {
    for (std::size_t n = 0; n < count; ++n) {
      for (auto& s : signs) s = rng.coin() ? 1 : -1;
      counts.push_back(count_pattern(signs, n_pattern));
    }
  });
  const double tv = stats::poisson_tv(counts, static_cast<double>(t_span));
  std::vector<double> as_double(counts.begin(), counts.end());
  const auto mean = stats::mean_estimate(as_double);
  const double expected = static_cast<double>(length - static_cast<std::size_t>(n_pattern) + 1) * std::ldexp(1.0, -n_pattern);
  ExperimentReport report;
  report.name = "poisson";
  report.params["n_pattern"] = n_pattern;
  report.params["t_span"] = t_span;
  report.seed = seed;
  report.samples = samples;
  report.stats["tv"] = tv;
  report.stats["mean_count"] = mean.mean;
  report.stats["mean_std_error"] = mean.std_error;
  report.stats["expected_count"] = expected;
  report.add_at_most("tv", tv, kPoissonTolerance);
  report.add_at_most("mean", std::abs(mean.mean - expected), kSigmaBand * mean.std_error);
  return report;
}

// ---------------------------------------------------------------- stability

int window_length(int i, double lambda) {
  if (i < 1 || !(lambda > 0.0)) throw InvalidParameter("need i >= 1 and lambda > 0");
  const double raw = lambda * std::sqrt(static_cast<double>(i));
  const int length = static_cast<int>(std::floor(raw + 1e-9 * std::max(1.0, raw)));
  if (length < 1 || length > i) throw InvalidParameter("window length floor(lambda sqrt i) must lie in [1, i]");
  return length;
}

walsh::Observable product_observable(int i, double lambda, const Budget& budget) {
  const int length = window_length(i, lambda);
  walsh::check_dense(i, budget);
  const double norm = 1.0 / std::sqrt(static_cast<double>(i));
  return walsh::Observable::from_function(
      i,
      [&](walsh::Mask w) {
        double sum = 0.0;
        for (int j = 0; j + length <= i; ++j) {
          const walsh::Mask window = ((walsh::Mask{1} << length) - 1) << j;
          sum += walsh::character(window, w);
        }
        return norm * sum;
      },
      budget);
}

MicroBlock micro_block_correlations(int i, double lambda, double rho, const walsh::BlockPartition& blocks) {
  if (std::abs(rho) > 1.0) throw InvalidParameter("rho must lie in [-1, 1]");
  if (blocks.n() != i) throw InvalidParameter("block partition must cover the i coordinates");
  MicroBlock out;
  out.i = i;
  out.length = window_length(i, lambda);
  out.micro = std::pow(rho, out.length);
  double sum = 0.0;
  const int windows = i - out.length + 1;
  for (int j = 0; j < windows; ++j) {
    int met = 0;
    for (const auto& b : blocks.blocks()) met += (b.begin < j + out.length && b.end > j) ? 1 : 0;
    sum += std::pow(rho, met);
  }
  out.block = sum / windows;
  return out;
}

ExperimentReport micro_block_report(int i, double lambda, double rho, int block_count) {
  const auto blocks = walsh::BlockPartition::uniform(i, block_count);
  const auto mb = micro_block_correlations(i, lambda, rho, blocks);
  ExperimentReport report;
  report.name = "microblock";
  report.params["i"] = i;
  report.params["lambda"] = lambda;
  report.params["rho"] = rho;
  report.params["blocks"] = block_count;
  report.stats["window_length"] = mb.length;
  report.stats["micro"] = mb.micro;
  report.stats["block"] = mb.block;
  if (i <= walsh::kCouplingLimit) {
    const auto f = product_observable(i, lambda);
    const double norm = f.norm_squared();
    const double spectral = walsh::noisy_correlation(f, f, rho) / norm;
    const double coupled = walsh::coupled_expectation(f, f, rho) / norm;
    report.add("micro_vs_spectrum", mb.micro, spectral, std::abs(mb.micro - spectral) <= 1e-10);
    report.add("micro_vs_coupling", mb.micro, coupled, std::abs(mb.micro - coupled) <= 1e-10);
    if (rho >= 0.0) {
      const double block = walsh::block_coupled_expectation(f, f, blocks, rho) / norm;
      report.add("block_vs_coupling", mb.block, block, std::abs(mb.block - block) <= 1e-10);
    }
  }
  if (i >= kMicroBlockScale) {
    report.add_at_most("micro_small", mb.micro, kMicroThreshold);
    report.add_at_least("block_large", mb.block, rho * rho);
  }
  return report;
}

// ---------------------------------------------------------------- spectral sets

FiniteSpectralSet::FiniteSpectralSet(std::vector<double> points) : points_(std::move(points)) {
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k])) throw InvalidParameter("spectral points must be finite");
    if (k > 0 && !(points_[k - 1] < points_[k])) throw InvalidParameter("spectral points must be strictly increasing");
  }
}

FiniteSpectralSet FiniteSpectralSet::from_mask(walsh::Mask subset, int i) {
  if (i < 1) throw InvalidParameter("rescaling needs i >= 1");
  std::vector<double> points;
  for (int m = 0; m < 64; ++m) {
    if (((subset >> m) & 1U) != 0) points.push_back(static_cast<double>(m) / i);
  }
  return FiniteSpectralSet(std::move(points));
}

namespace {

double directed(const std::vector<double>& from, const std::vector<double>& to) {
  double worst = 0.0;
  for (double x : from) {
    const auto it = std::lower_bound(to.begin(), to.end(), x);
    double best = std::numeric_limits<double>::infinity();
    if (it != to.end()) best = *it - x;
    if (it != to.begin()) best = std::min(best, x - *std::prev(it));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const FiniteSpectralSet& a, const FiniteSpectralSet& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : 1.0;
  return std::max(directed(a.points(), b.points()), directed(b.points(), a.points()));
}

SpectralProfile spectral_profile(const walsh::Observable& f, int levels) {
  if (levels < 0 || levels > 20) throw InvalidParameter("levels must lie in [0, 20]");
  const auto mu = walsh::spectral_measure(walsh::walsh_transform(f));
  SpectralProfile out;
  out.by_cardinality = mu.mass_by_cardinality();
  const int n = f.n();
  for (int level = 0; level <= levels; ++level) {
    const int cells = 1 << level;
    std::vector<double> row;
    for (int j = 0; j < cells; ++j) {
      const int lo = static_cast<int>(static_cast<long long>(j) * n / cells);
      const int hi = static_cast<int>(static_cast<long long>(j + 1) * n / cells);
      const walsh::Mask cell = hi > lo ? walsh::Block{lo, hi}.mask() : 0;
      // Nonempty subsets only: the empty set lies in every cell.
      row.push_back(hi > lo ? mu.mass_within(cell) - mu.at(0) : 0.0);
    }
    out.dyadic_cells.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------- verification reports

namespace {

void compare_laws(ExperimentReport& report, const std::string& id, const flow::FlowLaw& lhs, const flow::FlowLaw& rhs) {
  if (lhs == rhs) {
    report.add(id, Json{{"support", lhs.size()}}, Json{{"support", rhs.size()}}, true);
    return;
  }
  std::map<semigroup::G3Int, int> keys;
  for (const auto& [x, q] : lhs.probs()) keys[x] = 0;
  for (const auto& [x, q] : rhs.probs()) keys[x] = 0;
  for (const auto& [x, unused] : keys) {
    if (lhs.at(x) != rhs.at(x)) {
      report.add(id, Json{{"point", semigroup::to_json(x)}, {"prob", rational_json(lhs.at(x))}},
                 Json{{"point", semigroup::to_json(x)}, {"prob", rational_json(rhs.at(x))}}, false);
      return;
    }
  }
  report.add(id, lhs.t(), rhs.t(), false);
}

}  // namespace

ExperimentReport verify_flows(int t, const Rational& p, const Budget& budget) {
  if (t < 0) throw InvalidParameter("t must be non-negative");
  ExperimentReport report;
  report.name = "verify_flows";
  report.params["t"] = t;
  report.params["p"] = rational_json(p);
  using flow::Model;
  for (int tt = 0; tt <= t; ++tt) {
    const std::string suffix = ".t=" + std::to_string(tt);
    const auto g1 = flow::flow_law(flow::standard_generators(Model::G1), tt, budget);
    const auto g2 = flow::flow_law(flow::standard_generators(Model::G2), tt, budget);
    const auto g3 = flow::flow_law(flow::standard_generators(Model::G3, p), tt, budget);
    compare_laws(report, "G1_closed_form" + suffix, g1, flow::closed_form_law(Model::G1, tt));
    compare_laws(report, "G2_closed_form" + suffix, g2, flow::closed_form_law(Model::G2, tt));
    compare_laws(report, "G3_closed_form" + suffix, g3, flow::closed_form_law(Model::G3, tt, p));
    compare_laws(report, "G3_projects_to_G2" + suffix, g3.project(Model::G2), g2);
    compare_laws(report, "G2_projects_to_G1" + suffix, g2.project(Model::G1), g1);
    const int half = tt / 2;
    const auto gens = flow::standard_generators(Model::G3, p);
    compare_laws(report, "G3_convolution" + suffix,
                 flow::convolve(flow::flow_law(gens, half, budget), flow::flow_law(gens, tt - half, budget), budget), g3);
  }
  if (t <= budget.path_t) {
    const auto paths = flow::check_all_path_identities(t, budget);
    report.add("path_identities", static_cast<std::int64_t>(paths.violations.size()), 0, paths.ok());
    report.stats["paths_checked"] = paths.paths;
  }
  const int ct = std::min(t, budget.exhaustive_t);
  const auto cond = flow::conditional_c_law(ct, p, budget);
  report.add("conditional_c.t=" + std::to_string(ct), static_cast<std::int64_t>(cond.mismatches), 0, cond.ok());
  return report;
}

ExperimentReport verify_snake(int t, const Rational& p, const Budget& budget) {
  ExperimentReport report;
  report.name = "verify_snake";
  report.params["t"] = t;
  report.params["p"] = rational_json(p);
  for (int tt = 0; tt <= t; ++tt) {
    const auto r = flow::check_snake(tt, p, budget);
    const std::string suffix = ".t=" + std::to_string(tt);
    report.add("aggregate_equals_flow" + suffix, r.flow_match, true, r.flow_match);
    report.add("alive_binomial" + suffix, r.alive_mismatches, 0, r.alive_mismatches == 0);
    report.add("pathwise_c" + suffix, r.word_mismatches, 0, r.word_mismatches == 0);
  }
  return report;
}

ExperimentReport verify_theorem79(int n, bool all_subsets, std::size_t sample_count, std::uint64_t seed,
                                  const Budget& budget) {
  ExperimentReport report;
  report.name = "verify_theorem79";
  report.params["n"] = n;
  report.params["mode"] = all_subsets ? "all" : "sample";
  report.seed = seed;
  const auto r = all_subsets ? web::theorem79_check(n, budget) : web::theorem79_check_sample(n, sample_count, seed);
  for (const auto& e : r.entries) report.add_exact(subset_label(e.subset, n), e.lhs, e.rhs);
  report.stats["subsets"] = r.entries.size();
  return report;
}

ExperimentReport verify_zero_spectral(int n, const Budget& budget) {
  ExperimentReport report;
  report.name = "verify_zero_spectral";
  report.params["n"] = n;
  if (n > budget.subset_n) throw BudgetExceeded("2^" + std::to_string(n) + " subsets exceed the subset budget");
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const auto e = web::resampling_identities(web::TrapSchedule(n, s));
    const auto label = subset_label(s, n);
    report.add_exact("coupled_vs_occupation." + label, e.coupled, e.occupation);
    report.add_exact("coupled_vs_second_moment." + label, e.coupled, e.second_moment);
  }
  const auto z = web::zero_spectral_identity(n, budget);
  for (const auto& e : z.entries) {
    const auto label = subset_label(e.subset, n);
    report.add_exact("zero_set_vs_coupled." + label, e.zero_side, e.coupled_side);
    if (e.has_spectral) report.add_exact("zero_set_vs_spectral." + label, e.zero_side, e.spectral_side);
  }
  return report;
}

ExperimentReport verify_lemma74(std::size_t instances, std::uint64_t seed) {
  ExperimentReport report;
  report.name = "verify_lemma74";
  report.params["instances"] = instances;
  report.seed = seed;
  const Rational q(1, 3);
  const auto tight = web::bernoulli_instance(q);
  const auto tight_report = web::lemma74_bound_check(tight);
  report.add("tightness_norm", tight_report.norm_squared, to_double(q), std::abs(tight_report.norm_squared - to_double(q)) <= 1e-12);
  report.add_exact("tightness_psi", web::projection_correlation_squared(tight, {Rational(-1), Rational(1)}), q);
  double worst = -1.0;
  std::size_t violations = 0;
  for (std::size_t k = 0; k < instances; ++k) {
    const auto r = web::lemma74_bound_check(web::random_lemma74_instance(derive_seed(seed, k)));
    worst = std::max(worst, r.norm_squared - r.bound);
    violations += r.ok() ? 0 : 1;
  }
  report.stats["worst_excess"] = worst;
  report.add("random_instances", static_cast<std::int64_t>(violations), 0, violations == 0);
  return report;
}

ExperimentReport verify_walsh(int n, std::uint64_t seed, const Budget& budget) {
  if (n < 1 || n > walsh::kCouplingLimit) throw InvalidParameter("walsh verification needs 1 <= n <= 12");
  walsh::check_dense(n, budget);
  constexpr double kRel = 0x1.0p-40;
  ExperimentReport report;
  report.name = "verify_walsh";
  report.params["n"] = n;
  report.seed = seed;
  Rng rng(seed);
  auto random_observable = [&] {
    return walsh::Observable::from_function(n, [&](walsh::Mask) { return 2.0 * rng.uniform01() - 1.0; });
  };
  const auto f = random_observable();
  const auto g = random_observable();
  const auto spec = walsh::walsh_transform(f);
  report.add("parseval", spec.norm_squared(), f.norm_squared(), relative_close(spec.norm_squared(), f.norm_squared(), kRel));
  const auto back = walsh::synthesize(spec);
  double worst = 0.0;
  for (std::size_t w = 0; w < f.size(); ++w) worst = std::max(worst, std::abs(back[w] - f[w]));
  report.add_at_most("round_trip", worst, kRel);

  const walsh::Mask all = (walsh::Mask{1} << n) - 1;
  const walsh::Mask coords = rng.next() & all;
  const auto proj = walsh::conditional_expectation(f, coords);
  const double within = walsh::spectral_measure(spec).mass_within(coords);
  report.add("projection_norm", proj.norm_squared(), within, relative_close(proj.norm_squared(), within, kRel));

  const double rho = 2.0 * rng.uniform01() - 1.0;
  const double spectral = walsh::noisy_correlation(f, g, rho);
  const double coupled = walsh::coupled_expectation(f, g, rho);
  report.add("coupling", spectral, coupled, relative_close(spectral, coupled, kRel));

  std::vector<double> c(static_cast<std::size_t>(n));
  double sum_sq = 0.0;
  for (auto& ck : c) {
    ck = 2.0 * rng.uniform01() - 1.0;
    sum_sq += ck * ck;
  }
  const auto linear = walsh::Observable::from_function(n, [&](walsh::Mask w) {
    double v = 0.0;
    for (int m = 0; m < n; ++m) v += c[static_cast<std::size_t>(m)] * walsh::character(walsh::Mask{1} << m, w);
    return v;
  });
  const double bks = walsh::bks_statistic(linear);
  report.add("influence_additivity", bks, sum_sq, relative_close(bks, sum_sq, kRel));
  return report;
}

ExperimentReport verify_trap(int t, int m, int mc_m, int mc_t, std::size_t samples, std::uint64_t seed,
                             const Budget& budget) {
  ExperimentReport report;
  report.name = "verify_trap";
  report.params["t"] = t;
  report.params["m"] = m;
  report.params["mc_m"] = mc_m;
  report.params["mc_t"] = mc_t;
  report.seed = seed;
  report.samples = samples;
  const auto law = flow::trap_model_law(t, m, budget);
  report.stats["max_deviation"] = law.max_deviation;
  report.stats["paths"] = law.paths;
  report.add("bound", law.max_deviation, static_cast<std::int64_t>(flow::kTrapBoundFactor) * m, law.ok());
  if (samples > 0) {
    const auto draws = flow::trap_waiting_sample(mc_m, mc_t, samples, seed);
    const double ks = stats::ks_truncated_exponential(draws.waiting, draws.caps);
    report.stats["ks"] = ks;
    report.add_at_most("waiting_ks", ks, kTrapTolerance);
  }
  return report;
}

ExperimentReport web_report(int width, int t, std::size_t samples, std::uint64_t seed) {
  ExperimentReport report;
  report.name = "web";
  report.params["width"] = width;
  report.params["t"] = t;
  report.seed = seed;
  report.samples = samples;
  const Rational exact = web::expected_critical_count(width, t);
  const auto mc = web::sample_critical_count(width, t, samples, seed);
  report.stats["exact"] = rational_json(exact);
  report.stats["exact_value"] = to_double(exact);
  report.stats["mc_mean"] = mc.mean;
  report.stats["mc_std_error"] = mc.std_error;
  report.add_at_most("critical_count", std::abs(mc.mean - to_double(exact)), kSigmaBand * mc.std_error);

  std::size_t flow_failures = 0;
  for (std::uint64_t k = 0; k < 64; ++k) {
    const auto field = web::SignField::random(web::Topology::Circle, t, width, derive_seed(seed ^ 0x77656bULL, k));
    for (int r = 0; r <= t; ++r) {
      for (int s = r; s <= t; ++s) {
        for (int u = s; u <= t; ++u) {
          const auto split = web::compose_maps(web::evolve_web(field, r, s), web::evolve_web(field, s, u));
          if (!(split == web::evolve_web(field, r, u))) ++flow_failures;
        }
      }
    }
  }
  report.add("flow_property", static_cast<std::int64_t>(flow_failures), 0, flow_failures == 0);
  return report;
}

}  // namespace noiselab::experiments
