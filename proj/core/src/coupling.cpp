#include "noiselab/coupling.hpp"

#include <cmath>
#include <string>

#include "noiselab/errors.hpp"

namespace noiselab::walsh {

namespace {

void check_pair(const Observable& f, const Observable& g) {
  if (f.n() != g.n()) throw InvalidParameter("coupled observables must share n");
  if (f.n() > kCouplingLimit) {
    throw DimensionTooLarge("exhaustive coupling over 4^" + std::to_string(f.n()) + " points exceeds 4^" +
                            std::to_string(kCouplingLimit));
  }
}

}  // namespace

double coupled_expectation(const Observable& f, const Observable& g, double rho) {
  if (!(std::fabs(rho) <= 1.0)) throw InvalidParameter("|rho| must be at most 1");
  check_pair(f, g);
  const int n = f.n();
  // P(tau_m = tau'_m) = (1+rho)/4 per ordered pair of equal signs, (1-rho)/4 otherwise.
  std::vector<double> weight(static_cast<std::size_t>(n) + 1);
  for (int d = 0; d <= n; ++d) {
    weight[static_cast<std::size_t>(d)] = std::pow((1.0 + rho) / 4.0, n - d) * std::pow((1.0 - rho) / 4.0, d);
  }
  double sum = 0.0;
  for (Mask w = 0; w < f.size(); ++w) {
    double inner = 0.0;
    for (Mask v = 0; v < g.size(); ++v) inner += weight[static_cast<std::size_t>(cardinality(w ^ v))] * g[v];
    sum += f[w] * inner;
  }
  return sum;
}

double block_coupled_expectation(const Observable& f, const Observable& g, const BlockPartition& blocks, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidParameter("block coupling needs 0 <= rho <= 1");
  check_pair(f, g);
  if (blocks.n() != f.n()) throw InvalidParameter("block partition does not match n");
  std::vector<Mask> masks;
  std::vector<double> same;
  std::vector<double> differ;
  for (const Block& b : blocks.blocks()) {
    const double cells = std::ldexp(1.0, b.end - b.begin);
    masks.push_back(b.mask());
    // Joint mass of a pair of block configurations: 2^-|B| (rho [equal] + (1-rho) 2^-|B|).
    same.push_back((rho + (1.0 - rho) / cells) / cells);
    differ.push_back((1.0 - rho) / (cells * cells));
  }
  double sum = 0.0;
  for (Mask w = 0; w < f.size(); ++w) {
    double inner = 0.0;
    for (Mask v = 0; v < g.size(); ++v) {
      double weight = 1.0;
      for (std::size_t k = 0; k < masks.size(); ++k) weight *= ((w ^ v) & masks[k]) == 0 ? same[k] : differ[k];
      inner += weight * g[v];
    }
    sum += f[w] * inner;
  }
  return sum;
}

}  // namespace noiselab::walsh
