#include "noiselab/trap.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "noiselab/errors.hpp"
#include "noiselab/random.hpp"

namespace noiselab::flow {

namespace {

G3Int trap_down(int m) { return {-1, m, 0}; }

}  // namespace

TrapReport trap_model_law(int t, int m, const Budget& budget) {
  if (t < 0) throw InvalidParameter("horizon must be non-negative");
  if (m < 1) throw InvalidParameter("trap depth m must be at least 1");
  TrapReport report{t, m, flow_law(standard_generators(Model::Trap, Rational(1, 2), m), t, budget), 0, 0, 0};
  if (t > budget.exhaustive_t) return report;

  const G3Int up = semigroup::f_star<std::int64_t>();
  const G3Int down = trap_down(m);
  for (std::uint64_t word = 0; word < (std::uint64_t{1} << t); ++word) {
    // Check every prefix: the bound is path-wise at all times.
    G3Int x = semigroup::unit_g3<std::int64_t>();
    std::int64_t min_a = 0;
    std::int64_t worst = 0;
    for (int k = 0; k < t; ++k) {
      x = semigroup::compose(x, ((word >> k) & 1U) != 0 ? up : down);
      min_a = std::min(min_a, x.a);
      worst = std::max(worst, std::abs(x.b + min_a));
    }
    ++report.paths;
    report.max_deviation = std::max(report.max_deviation, worst);
    if (worst > static_cast<std::int64_t>(kTrapBoundFactor) * m) ++report.violations;
  }
  return report;
}

TrapWaitingSample trap_waiting_sample(int m, int t, std::size_t samples, std::uint64_t seed) {
  if (m < 1 || m > 40) throw InvalidParameter("trap depth m must lie in [1, 40]");
  if (t < 1) throw InvalidParameter("horizon must be positive");
  const G3Int up = semigroup::f_star<std::int64_t>();
  const G3Int down = trap_down(m);
  const double scale = std::ldexp(1.0, -m);
  TrapWaitingSample out;
  out.waiting.reserve(samples);
  out.caps.reserve(samples);
  Rng rng(seed);
  for (std::size_t n = 0; n < samples; ++n) {
    G3Int x = semigroup::unit_g3<std::int64_t>();
    std::int64_t min_a = 0;
    for (int k = 0; k < t; ++k) {
      x = semigroup::compose(x, rng.coin() ? up : down);
      min_a = std::min(min_a, x.a);
    }
    const double span = scale * static_cast<double>(x.a - min_a);
    out.waiting.push_back(scale * static_cast<double>(x.a - x.c - min_a));
    out.caps.push_back(span);
  }
  return out;
}

}  // namespace noiselab::flow
