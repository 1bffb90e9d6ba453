#pragma once

// Dyadic trap model: steps g_+ = (1,0,1) and g_- = (-1,m,0), each with probability 1/2.
// Only a(0,t) keeps its random-walk law; b and c are distorted by O(m).

#include <cstdint>
#include <vector>

#include "noiselab/budget.hpp"
#include "noiselab/flow.hpp"

namespace noiselab::flow {

/// Named constant of the path-wise bound |b(0,t) + min_s a(0,s)| <= kTrapBoundFactor * m.
inline constexpr int kTrapBoundFactor = 1;

struct TrapReport {
  int t = 0;
  int m = 1;
  FlowLaw law;
  std::int64_t paths = 0;                 // paths enumerated for the bound
  std::int64_t max_deviation = 0;         // max |b + min a| over those paths
  std::int64_t violations = 0;            // paths with deviation > kTrapBoundFactor * m

  bool ok() const { return violations == 0; }
};

/// Exact law under the trap generators, plus the exhaustive path-wise bound
/// check when t <= budget.exhaustive_t (paths = 0 otherwise).
TrapReport trap_model_law(int t, int m, const Budget& budget = {});

struct TrapWaitingSample {
  std::vector<double> waiting;  // 2^-m (a - c - min a)
  std::vector<double> caps;     // 2^-m (a - min a), where the exponential is truncated
};

/// Monte Carlo draws of the rescaled waiting statistic together with its
/// truncation point on the same path. Deterministic in seed.
TrapWaitingSample trap_waiting_sample(int m, int t, std::size_t samples, std::uint64_t seed);

}  // namespace noiselab::flow
