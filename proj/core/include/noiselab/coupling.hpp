#pragma once

// Exhaustive joint-space expectations for correlated copies of the sign array.
// These enumerate the coupled probability space directly and never touch the
// Walsh transform, so they serve as independent oracles for the spectral formulas.

#include "noiselab/walsh.hpp"

namespace noiselab::walsh {

/// Largest n accepted by the exhaustive couplings (4^n joint points).
inline constexpr int kCouplingLimit = 12;

/// E[f(tau) g(tau')] where (tau_m, tau'_m) are i.i.d. pairs with E tau_m tau'_m = rho.
double coupled_expectation(const Observable& f, const Observable& g, double rho);

/// E[f(tau) g(tau')] where each block of tau' is, independently, an identical
/// copy of the block of tau with probability rho and a fresh uniform draw otherwise.
/// Requires 0 <= rho <= 1 (the mixture weights must be probabilities).
double block_coupled_expectation(const Observable& f, const Observable& g, const BlockPartition& blocks, double rho);

}  // namespace noiselab::walsh
