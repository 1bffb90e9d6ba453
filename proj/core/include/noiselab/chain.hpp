#pragma once

// The half-difference chain X (steps -1, 0, +1 with probabilities 1/4, 1/2, 1/4),
// its version X^(S) trapped at 0 on a schedule S, and the identities linking
// them to the coalescing web.

#include <cstdint>
#include <map>
#include <vector>

#include "noiselab/budget.hpp"
#include "noiselab/rational.hpp"

namespace noiselab::web {

/// A subset S of {0, ..., n-1}, stored as a bitmask.
class TrapSchedule {
 public:
  TrapSchedule(int n, std::uint64_t members);
  static TrapSchedule from_list(int n, const std::vector<int>& members);

  int n() const { return n_; }
  std::uint64_t members() const { return members_; }
  bool contains(int k) const { return k >= 0 && k < n_ && ((members_ >> k) & 1U) != 0; }
  std::vector<int> list() const;

 private:
  int n_;
  std::uint64_t members_;
};

struct ChainLaw {
  int k = 0;
  std::map<std::int64_t, Rational> probs;

  Rational at(std::int64_t x) const;
  Rational second_moment() const;
};

ChainLaw halfdiff_chain_law(int k);

/// Law of X^(S)_k: the chain, except that from 0 at a time in S it stays at 0.
/// Requires k <= n.
ChainLaw trapped_chain_law(const TrapSchedule& schedule, int k);

/// P(Z n [0,k] subset k - S), Z the zero set of X.
Rational zero_inclusion_prob(int k, const TrapSchedule& schedule);

/// p_{n,S} = (1/n) sum_{k<n} zero_inclusion_prob(k, S).
Rational zero_set_probability(const TrapSchedule& schedule);

/// (1/n) sum_{k in S} P(X^(S)_k = 0).
Rational trapped_occupation(const TrapSchedule& schedule);

struct Theorem79Entry {
  std::uint64_t subset = 0;
  Rational lhs;  // p_{n,S}
  Rational rhs;  // (1/n) sum_{k in S} P(X^(S)_k = 0)
};

struct Theorem79Report {
  int n = 0;
  std::vector<Theorem79Entry> entries;
  std::size_t mismatches = 0;

  bool ok() const { return mismatches == 0; }
};

/// Checks every subset of {0..n-1}. Throws BudgetExceeded when n > budget.subset_n.
Theorem79Report theorem79_check(int n, const Budget& budget = {});

/// Checks `count` subsets drawn uniformly (with repetition) from the seed.
Theorem79Report theorem79_check_sample(int n, std::size_t count, std::uint64_t seed);

/// E[xi_{0,n}(0) xi'_{0,n}(0)] where xi' uses the same signs in the columns of S
/// and fresh ones elsewhere, from a dynamic program over the two walkers' positions.
Rational resampling_correlation(const TrapSchedule& schedule);

struct ResamplingEntry {
  std::uint64_t subset = 0;
  Rational coupled;        // joint-walker dynamic program
  Rational occupation;     // sum_{k in S} P(X^(S)_k = 0)
  Rational second_moment;  // n - 2 E (X^(S)_n)^2

  bool ok() const { return coupled == occupation && coupled == second_moment; }
};

ResamplingEntry resampling_identities(const TrapSchedule& schedule);

/// Largest n for which the spectral side is computed by a full Walsh transform of
/// xi_{0,n}(0) over its n(n+1)/2 reachable signs.
inline constexpr int kWalshRouteLimit = 6;

struct SpectralEntry {
  std::uint64_t subset = 0;
  Rational zero_side;     // n p_{n,S}
  Rational coupled_side;  // resampling_correlation
  bool has_spectral = false;
  Rational spectral_side;  // mu{M : columns of M inside S}, n <= kWalshRouteLimit

  bool ok() const { return zero_side == coupled_side && (!has_spectral || spectral_side == zero_side); }
};

struct SpectralReport {
  int n = 0;
  std::vector<SpectralEntry> entries;
  std::size_t mismatches = 0;

  bool ok() const { return mismatches == 0; }
};

/// For every S: n p_{n,S} = resampling_correlation(S), and for small n also the
/// spectral mass of xi_{0,n}(0) on subsets whose columns lie in S.
SpectralReport zero_spectral_identity(int n, const Budget& budget = {});

/// mu{M : columns(M) subset S} for every S (indexed by S), from the exact
/// Walsh transform of xi_{0,n}(0). Requires n <= kWalshRouteLimit.
std::vector<Rational> walker_spectral_masses(int n);

}  // namespace noiselab::web
