#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace noiselab::stats {

double normal_cdf(double x);

/// CDF of the chi distribution with 3 degrees of freedom:
/// erf(u / sqrt 2) - sqrt(2/pi) u exp(-u^2/2) for u >= 0.
double maxwell_cdf(double u);

/// Kolmogorov-Smirnov distance between a discrete law, given as (point, mass)
/// pairs, and a continuous CDF. Exact: the sup is taken on both sides of every jump.
double ks_discrete(std::vector<std::pair<double, double>> atoms, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov statistic; ties are handled exactly.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// KS distance between the empirical law of `values` and the law of min(eta, S),
/// eta ~ Exp(1) independent of S, where S has the empirical law of `caps`.
/// The reference CDF is exact given the caps, so eta is never sampled.
double ks_truncated_exponential(std::vector<double> values, std::vector<double> caps);

double poisson_pmf(int k, double lambda);

/// Total variation between the empirical law of `counts` and Poisson(lambda), on
/// {0..max_k} plus one tail bucket for everything above max_k.
double poisson_tv(const std::vector<int>& counts, double lambda, int max_k = 10);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

MeanEstimate mean_estimate(const std::vector<double>& xs);

}  // namespace noiselab::stats
