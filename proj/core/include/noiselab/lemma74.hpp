#pragma once

// Correlation bound between functions of (X_0, X_1 Y_1, ..., X_n Y_n) and functions
// of (Y_1, ..., Y_n), for X_k in {0,1}, independent Y_k, and (X_.) independent of (Y_.).
// The norm of the conditional-expectation projection Q on zero-mean functions of Y
// equals the largest attainable correlation; its square is at most max_k P(X_k = 1).

#include <cstdint>
#include <vector>

#include "noiselab/rational.hpp"

namespace noiselab::web {

struct XAtom {
  std::vector<int> x;  // X_1..X_n, each 0 or 1; the atom itself is the value of X_0
  Rational prob;
};

struct YVariable {
  std::vector<Rational> values;  // distinct
  std::vector<Rational> probs;
};

struct Lemma74Instance {
  int n = 0;
  std::vector<XAtom> atoms;
  std::vector<YVariable> ys;

  /// Throws InvalidParameter on malformed laws, BudgetExceeded when the joint
  /// Y-space exceeds `max_y_space`.
  void validate(std::size_t max_y_space = 729) const;
  std::size_t y_space() const;
  /// max_k P(X_k = 1).
  Rational bound_squared() const;
};

struct Lemma74Report {
  double norm_squared = 0.0;  // ||Q||^2 on zero-mean functions of Y
  double bound = 0.0;         // max_k P(X_k = 1)
  double slack = 0.0;         // bound - norm_squared

  bool ok(double tolerance = 1e-12) const { return norm_squared <= bound + tolerance; }
};

Lemma74Report lemma74_bound_check(const Lemma74Instance& instance);

/// Corr(Q psi, psi)^2 = ||Q psi||^2 / ||psi||^2 for the centered psi, exactly.
/// `psi` is indexed by the joint Y index (first variable varies fastest).
Rational projection_correlation_squared(const Lemma74Instance& instance, const std::vector<Rational>& psi);

/// n = 1, X_1 ~ Bernoulli(q), Y_1 uniform on {-1,+1}: the bound is attained by psi = Y_1.
Lemma74Instance bernoulli_instance(const Rational& q);

/// Random instance with n <= max_n, at most `max_support` X-atoms and Y-values.
Lemma74Instance random_lemma74_instance(std::uint64_t seed, int max_n = 3, int max_support = 3);

}  // namespace noiselab::web
