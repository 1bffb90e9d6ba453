#include "noiselab/chain.hpp"

#include <algorithm>
#include <span>

#include "noiselab/errors.hpp"
#include "noiselab/random.hpp"
#include "noiselab/walsh.hpp"

namespace noiselab::web {

namespace {

__extension__ typedef unsigned __int128 Wide;
__extension__ typedef __int128 SignedWide;

using Law = std::map<std::int64_t, Rational>;

const Rational kQuarter(1, 4);
const Rational kHalf(1, 2);

Law chain_step(const Law& law, bool trap_at_zero) {
  Law next;
  for (const auto& [x, q] : law) {
    if (trap_at_zero && x == 0) {
      next[0] += q;
      continue;
    }
    next[x - 1] += q * kQuarter;
    next[x] += q * kHalf;
    next[x + 1] += q * kQuarter;
  }
  return next;
}

Rational occupation_sum(const TrapSchedule& schedule) {
  Rational sum(0);
  Law law{{0, Rational(1)}};
  for (int k = 0; k < schedule.n(); ++k) {
    if (schedule.contains(k)) {
      const auto it = law.find(0);
      if (it != law.end()) sum += it->second;
    }
    law = chain_step(law, schedule.contains(k));
  }
  return sum;
}

BigInt to_bigint(Wide v) {
  BigInt hi(static_cast<unsigned long>(v >> 64));
  BigInt lo(static_cast<unsigned long>(v & 0xffffffffffffffffULL));
  return (hi << 64) + lo;
}

}  // namespace

// ---------------------------------------------------------------- schedules and laws

TrapSchedule::TrapSchedule(int n, std::uint64_t members) : n_(n), members_(members) {
  if (n < 0 || n > 63) throw InvalidParameter("schedule horizon must lie in [0, 63]");
  if ((members >> n) != 0) throw InvalidParameter("schedule contains times outside {0..n-1}");
}

TrapSchedule TrapSchedule::from_list(int n, const std::vector<int>& members) {
  std::uint64_t mask = 0;
  for (int k : members) {
    if (k < 0 || k >= n) throw InvalidParameter("schedule member " + std::to_string(k) + " outside {0..n-1}");
    mask |= std::uint64_t{1} << k;
  }
  return TrapSchedule(n, mask);
}

std::vector<int> TrapSchedule::list() const {
  std::vector<int> out;
  for (int k = 0; k < n_; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

Rational ChainLaw::at(std::int64_t x) const {
  const auto it = probs.find(x);
  return it == probs.end() ? Rational(0) : it->second;
}

Rational ChainLaw::second_moment() const {
  Rational m(0);
  for (const auto& [x, q] : probs) m += q * x * x;
  return m;
}

ChainLaw halfdiff_chain_law(int k) {
  if (k < 0) throw InvalidParameter("chain time must be non-negative");
  Law law{{0, Rational(1)}};
  for (int j = 0; j < k; ++j) law = chain_step(law, false);
  return {k, std::move(law)};
}

ChainLaw trapped_chain_law(const TrapSchedule& schedule, int k) {
  if (k < 0 || k > schedule.n()) throw InvalidParameter("need 0 <= k <= n");
  Law law{{0, Rational(1)}};
  for (int j = 0; j < k; ++j) law = chain_step(law, schedule.contains(j));
  return {k, std::move(law)};
}

Rational zero_inclusion_prob(int k, const TrapSchedule& schedule) {
  if (k < 0) throw InvalidParameter("k must be non-negative");
  Law law{{0, Rational(1)}};
  for (int l = 0; l <= k; ++l) {
    if (l > 0) law = chain_step(law, false);
    // A zero at time l is allowed only when k - l lies in S.
    if (!schedule.contains(k - l)) law.erase(0);
  }
  Rational total(0);
  for (const auto& [x, q] : law) total += q;
  return total;
}

Rational zero_set_probability(const TrapSchedule& schedule) {
  if (schedule.n() < 1) throw InvalidParameter("n must be at least 1");
  Rational sum(0);
  for (int k = 0; k < schedule.n(); ++k) sum += zero_inclusion_prob(k, schedule);
  return sum / schedule.n();
}

Rational trapped_occupation(const TrapSchedule& schedule) {
  if (schedule.n() < 1) throw InvalidParameter("n must be at least 1");
  return occupation_sum(schedule) / schedule.n();
}

// ---------------------------------------------------------------- zero sets and trapped occupation

Theorem79Report theorem79_check(int n, const Budget& budget) {
  if (n < 1) throw InvalidParameter("n must be at least 1");
  if (n > budget.subset_n) throw BudgetExceeded("2^" + std::to_string(n) + " subsets exceed the subset budget");
  Theorem79Report report;
  report.n = n;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const TrapSchedule schedule(n, s);
    Theorem79Entry e{s, zero_set_probability(schedule), trapped_occupation(schedule)};
    if (e.lhs != e.rhs) ++report.mismatches;
    report.entries.push_back(std::move(e));
  }
  return report;
}

Theorem79Report theorem79_check_sample(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1 || n > 63) throw InvalidParameter("n must lie in [1, 63]");
  Rng rng(seed);
  Theorem79Report report;
  report.n = n;
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  for (std::size_t j = 0; j < count; ++j) {
    const std::uint64_t s = rng.next() & all;
    const TrapSchedule schedule(n, s);
    Theorem79Entry e{s, zero_set_probability(schedule), trapped_occupation(schedule)};
    if (e.lhs != e.rhs) ++report.mismatches;
    report.entries.push_back(std::move(e));
  }
  return report;
}

// ---------------------------------------------------------------- resampling correlation

Rational resampling_correlation(const TrapSchedule& schedule) {
  const int n = schedule.n();
  if (n < 1) throw InvalidParameter("n must be at least 1");
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> law{{{0, 0}, Rational(1)}};
  for (int k = 0; k < n; ++k) {
    std::map<std::pair<std::int64_t, std::int64_t>, Rational> next;
    for (const auto& [pos, q] : law) {
      const auto [w, v] = pos;
      if (schedule.contains(k) && w == v) {
        // Same site, same column sign: the walkers move together.
        next[{w + 1, v + 1}] += q * kHalf;
        next[{w - 1, v - 1}] += q * kHalf;
        continue;
      }
      for (int dw : {-1, 1}) {
        for (int dv : {-1, 1}) next[{w + dw, v + dv}] += q * kQuarter;
      }
    }
    law = std::move(next);
  }
  Rational corr(0);
  for (const auto& [pos, q] : law) corr += q * pos.first * pos.second;
  return corr;
}

ResamplingEntry resampling_identities(const TrapSchedule& schedule) {
  const int n = schedule.n();
  return {schedule.members(), resampling_correlation(schedule), occupation_sum(schedule),
          Rational(n) - 2 * trapped_chain_law(schedule, n).second_moment()};
}

std::vector<Rational> walker_spectral_masses(int n) {
  if (n < 1 || n > kWalshRouteLimit) {
    throw BudgetExceeded("Walsh route limited to 1 <= n <= " + std::to_string(kWalshRouteLimit));
  }
  // Site (u, x), |x| <= u, x = u mod 2, gets coordinate u(u+1)/2 + (x+u)/2.
  const int dims = n * (n + 1) / 2;
  const std::size_t size = std::size_t{1} << dims;
  std::vector<std::int64_t> table(size);
  for (std::size_t w = 0; w < size; ++w) {
    std::int64_t x = 0;
    for (int u = 0; u < n; ++u) {
      const auto bit = static_cast<unsigned>(u * (u + 1) / 2 + (x + u) / 2);
      x += ((w >> bit) & 1U) != 0 ? 1 : -1;
    }
    table[w] = x;
  }
  walsh::fwht_inplace<std::int64_t>(std::span<std::int64_t>(table));

  std::vector<std::uint64_t> column_bits(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) column_bits[static_cast<std::size_t>(u)] = ((std::uint64_t{1} << (u + 1)) - 1) << (u * (u + 1) / 2);
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<Wide> by_columns(subsets, 0);
  for (std::size_t m = 0; m < size; ++m) {
    if (table[m] == 0) continue;
    std::size_t cols = 0;
    for (int u = 0; u < n; ++u) {
      if ((m & column_bits[static_cast<std::size_t>(u)]) != 0) cols |= std::size_t{1} << u;
    }
    const auto f = static_cast<SignedWide>(table[m]);
    by_columns[cols] += static_cast<Wide>(f * f);
  }
  std::vector<Rational> masses(subsets);
  for (std::size_t s = 0; s < subsets; ++s) {
    Wide total = 0;
    for (std::size_t c = s;; c = (c - 1) & s) {
      total += by_columns[c];
      if (c == 0) break;
    }
    Rational q(to_bigint(total), BigInt(1));
    // F_M = 2^dims f^_M, so mu(M) = F_M^2 / 2^(2 dims).
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(2 * dims));
    q.canonicalize();
    masses[s] = std::move(q);
  }
  return masses;
}

SpectralReport zero_spectral_identity(int n, const Budget& budget) {
  if (n < 1) throw InvalidParameter("n must be at least 1");
  if (n > budget.subset_n) throw BudgetExceeded("2^" + std::to_string(n) + " subsets exceed the subset budget");
  const bool spectral = n <= kWalshRouteLimit && n * (n + 1) / 2 <= budget.dense_limit;
  std::vector<Rational> masses;
  if (spectral) masses = walker_spectral_masses(n);
  SpectralReport report;
  report.n = n;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const TrapSchedule schedule(n, s);
    SpectralEntry e;
    e.subset = s;
    e.zero_side = zero_set_probability(schedule) * n;
    e.coupled_side = resampling_correlation(schedule);
    if (spectral) {
      e.has_spectral = true;
      e.spectral_side = masses[s];
    }
    if (!e.ok()) ++report.mismatches;
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace noiselab::web
