#include "noiselab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noiselab/errors.hpp"

namespace noiselab::stats {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double maxwell_cdf(double u) {
  if (u <= 0.0) return 0.0;
  return std::erf(u / std::numbers::sqrt2) - std::sqrt(2.0 / std::numbers::pi) * u * std::exp(-0.5 * u * u);
}

double ks_discrete(std::vector<std::pair<double, double>> atoms, const std::function<double(double)>& cdf) {
  std::sort(atoms.begin(), atoms.end());
  double below = 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < atoms.size();) {
    const double x = atoms[k].first;
    double mass = 0.0;
    for (; k < atoms.size() && atoms[k].first == x; ++k) mass += atoms[k].second;
    const double f = cdf(x);
    worst = std::max({worst, std::abs(f - below), std::abs(f - (below + mass))});
    below += mass;
  }
  return worst;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidParameter("two-sample KS needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double worst = 0.0;
  while (i < a.size() || j < b.size()) {
    double x = 0.0;
    if (j >= b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return worst;
}

double ks_truncated_exponential(std::vector<double> values, std::vector<double> caps) {
  if (values.empty() || caps.empty()) throw InvalidParameter("KS needs nonempty samples");
  std::sort(values.begin(), values.end());
  std::sort(caps.begin(), caps.end());
  const double nv = static_cast<double>(values.size());
  const double nc = static_cast<double>(caps.size());
  // P(min(eta, S) <= x) = F_S(x) + (1 - F_S(x)) (1 - e^-x) for x >= 0.
  auto reference = [&](double x, std::size_t caps_at_most) {
    if (x < 0.0) return 0.0;
    const double fs = static_cast<double>(caps_at_most) / nc;
    return fs + (1.0 - fs) * (1.0 - std::exp(-x));
  };
  std::vector<double> points = values;
  points.insert(points.end(), caps.begin(), caps.end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  double worst = 0.0;
  for (double x : points) {
    const auto v_below = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), x) - values.begin());
    const auto v_upto = static_cast<std::size_t>(std::upper_bound(values.begin(), values.end(), x) - values.begin());
    const auto c_below = static_cast<std::size_t>(std::lower_bound(caps.begin(), caps.end(), x) - caps.begin());
    const auto c_upto = static_cast<std::size_t>(std::upper_bound(caps.begin(), caps.end(), x) - caps.begin());
    const double left = x <= 0.0 ? 0.0 : reference(x, c_below);
    worst = std::max({worst, std::abs(static_cast<double>(v_below) / nv - left),
                      std::abs(static_cast<double>(v_upto) / nv - reference(x, c_upto))});
  }
  return worst;
}

double poisson_pmf(int k, double lambda) {
  if (k < 0) return 0.0;
  return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

double poisson_tv(const std::vector<int>& counts, double lambda, int max_k) {
  if (counts.empty()) throw InvalidParameter("no counts");
  std::vector<double> freq(static_cast<std::size_t>(max_k) + 2, 0.0);
  for (int c : counts) {
    if (c < 0) throw InvalidParameter("counts must be non-negative");
    freq[static_cast<std::size_t>(std::min(c, max_k + 1))] += 1.0;
  }
  double tv = 0.0;
  double head = 0.0;
  for (int k = 0; k <= max_k; ++k) {
    const double p = poisson_pmf(k, lambda);
    head += p;
    tv += std::abs(freq[static_cast<std::size_t>(k)] / static_cast<double>(counts.size()) - p);
  }
  tv += std::abs(freq.back() / static_cast<double>(counts.size()) - (1.0 - head));
  return 0.5 * tv;
}

MeanEstimate mean_estimate(const std::vector<double>& xs) {
  if (xs.size() < 2) throw InvalidParameter("need at least two observations");
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace noiselab::stats
