#pragma once

// Scaling-limit and stability experiments, plus the verification reports the
// command-line driver exposes. Every report is a pure function of its arguments.

#include <cstdint>
#include <vector>

#include "noiselab/budget.hpp"
#include "noiselab/rational.hpp"
#include "noiselab/report.hpp"
#include "noiselab/walsh.hpp"

namespace noiselab::experiments {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Monte Carlo draws are split into shards of this size; shard k uses derive_seed(seed, k).
inline constexpr std::size_t kShardSize = 1000;

inline constexpr double kG2Tolerance = 0.05;
inline constexpr int kG2MinScale = 2048;
inline constexpr double kG3Tolerance = 0.05;
inline constexpr double kPoissonTolerance = 0.1;
inline constexpr double kTrapTolerance = 0.1;
inline constexpr double kMicroThreshold = 1e-6;
/// Micro/block thresholds apply from this many coordinates on.
inline constexpr int kMicroBlockScale = 1024;
/// Standard errors allowed between an exact value and its Monte Carlo estimate.
inline constexpr double kSigmaBand = 4.0;

// ---------------------------------------------------------------- limit laws

/// Law of i^-1/2 a(0,i) from the exact binomial law against N(0,1); pass iff KS <= 1/sqrt(i).
ExperimentReport clt_report(const std::vector<int>& scales);

/// Exact law of (a+2b)/sqrt(i) for the G2 flow (dynamic program) against the Maxwell CDF.
ExperimentReport g2_limit_report(int i);

/// Sticky flow with p = 1/sqrt(i): c/sqrt(i) against max(0, (a+b)/sqrt(i) - eta) by
/// two-sample KS, and P(c = 0) against E exp(-(a+b)/sqrt(i)) by paired differences.
ExperimentReport g3_limit_report(int i, std::size_t samples, std::uint64_t seed);

/// Counts of "+ followed by n-1 minus" in t_span * 2^n signs against Poisson(t_span).
ExperimentReport poisson_block_report(int n_pattern, int t_span, std::size_t samples, std::uint64_t seed);

/// Pattern count of one sign sequence (entries +-1).
int count_pattern(const std::vector<int>& signs, int n_pattern);

// ---------------------------------------------------------------- stability

/// floor(lambda sqrt(i)); throws InvalidParameter unless 1 <= L <= i.
int window_length(int i, double lambda);

/// f = i^-1/2 sum_j prod_{m<L} tau_{j+m} over the windows j = 0..i-L.
walsh::Observable product_observable(int i, double lambda, const Budget& budget = {});

struct MicroBlock {
  int i = 0;
  int length = 0;     // L
  double micro = 0;   // rho^L
  double block = 0;   // average over windows of rho^(blocks met)
};

/// Normalized correlations E[f f'] / ||f||^2 of the product observable, from the interval structure.
MicroBlock micro_block_correlations(int i, double lambda, double rho, const walsh::BlockPartition& blocks);

/// Pass iff micro <= kMicroThreshold and block >= rho^2 once i >= kMicroBlockScale; for
/// i <= walsh::kCouplingLimit both values are also compared with the exhaustive couplings.
ExperimentReport micro_block_report(int i, double lambda, double rho, int block_count);

// ---------------------------------------------------------------- spectral sets

/// Finite set of reals, strictly increasing.
class FiniteSpectralSet {
 public:
  FiniteSpectralSet() = default;
  explicit FiniteSpectralSet(std::vector<double> points);

  /// Points m / i of the coordinate subset `subset`.
  static FiniteSpectralSet from_mask(walsh::Mask subset, int i);

  const std::vector<double>& points() const { return points_; }
  bool empty() const { return points_.empty(); }

 private:
  std::vector<double> points_;
};

/// Hausdorff distance, with dist(empty, M) = 1 for nonempty M and dist(empty, empty) = 0.
double hausdorff_distance(const FiniteSpectralSet& a, const FiniteSpectralSet& b);

struct SpectralProfile {
  std::vector<double> by_cardinality;           // entry k: mu{|M| = k}
  std::vector<std::vector<double>> dyadic_cells;  // [level][cell]: mu{M inside cell}
};

/// Mass of mu_f by |M| and, for levels 0..levels, inside each dyadic cell of width i / 2^level.
SpectralProfile spectral_profile(const walsh::Observable& f, int levels = 3);

// ---------------------------------------------------------------- verification reports

ExperimentReport verify_flows(int t, const Rational& p, const Budget& budget = {});
ExperimentReport verify_snake(int t, const Rational& p, const Budget& budget = {});
ExperimentReport verify_theorem79(int n, bool all_subsets, std::size_t sample_count, std::uint64_t seed,
                                  const Budget& budget = {});
/// Resampling identities and the zero-set spectral identity for every S at horizon n.
ExperimentReport verify_zero_spectral(int n, const Budget& budget = {});
ExperimentReport verify_lemma74(std::size_t instances, std::uint64_t seed);
ExperimentReport verify_walsh(int n, std::uint64_t seed, const Budget& budget = {});
/// Exhaustive bound at (t, m); Monte Carlo waiting statistic at (mc_m, mc_t) when samples > 0.
ExperimentReport verify_trap(int t, int m, int mc_m, int mc_t, std::size_t samples, std::uint64_t seed,
                             const Budget& budget = {});
/// Flow property and coalescence on random circle fields, and E n(0,t) exact vs Monte Carlo.
ExperimentReport web_report(int width, int t, std::size_t samples, std::uint64_t seed);

}  // namespace noiselab::experiments
