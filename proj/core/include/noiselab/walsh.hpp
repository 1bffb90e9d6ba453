#pragma once

// Fourier-Walsh analysis of real functions of n random signs.
//
// Indexing convention: a point of {-1,+1}^n is the bitmask whose bit m is set
// when sign m equals +1; a coordinate subset M is the bitmask of its members.
// Walsh characters are tau_M(omega) = prod_{m in M} tau_m(omega).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "noiselab/budget.hpp"
#include "noiselab/rational.hpp"

namespace noiselab::walsh {

using Mask = std::uint64_t;

inline int cardinality(Mask m) { return std::popcount(m); }

/// tau_M(omega): +1 when an even number of coordinates in M carry sign -1.
inline int character(Mask subset, Mask point) {
  return (std::popcount(subset & ~point) & 1) != 0 ? -1 : 1;
}

/// Throws DimensionTooLarge when n exceeds the dense-table limit.
void check_dense(int n, const Budget& budget = {});

class SignVector {
 public:
  SignVector() = default;
  /// Every entry must be exactly -1 or +1.
  explicit SignVector(std::vector<int> signs);

  static SignVector from_index(int n, Mask index);

  int n() const { return static_cast<int>(signs_.size()); }
  int operator[](int m) const { return signs_[static_cast<std::size_t>(m)]; }
  Mask index() const;

  bool operator==(const SignVector&) const = default;

 private:
  std::vector<std::int8_t> signs_;
};

/// A real function on {-1,+1}^n stored as a dense table of length 2^n.
class Observable {
 public:
  Observable() = default;
  Observable(int n, std::vector<double> values, const Budget& budget = {});

  template <class F>
  static Observable from_function(int n, F&& f, const Budget& budget = {}) {
    check_dense(n, budget);
    std::vector<double> values(std::size_t{1} << n);
    for (Mask w = 0; w < values.size(); ++w) values[w] = static_cast<double>(f(w));
    return Observable(n, std::move(values), budget);
  }

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](Mask point) const { return values_[point]; }
  double at(const SignVector& omega) const;

  double mean() const;
  /// E f^2 under the uniform measure.
  double norm_squared() const;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

/// Dense table of Walsh coefficients, coeffs[M] = E[f tau_M].
class WalshSpectrum {
 public:
  WalshSpectrum() = default;
  WalshSpectrum(int n, std::vector<double> coeffs, const Budget& budget = {});

  int n() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }
  double coeff(Mask subset) const { return coeffs_[subset]; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double norm_squared() const;

 private:
  int n_ = 0;
  std::vector<double> coeffs_;
};

/// mu_f(M) = |f^_M|^2 on the subsets of {0..n-1}.
class SpectralMeasure {
 public:
  SpectralMeasure() = default;
  SpectralMeasure(int n, std::vector<double> weights);

  int n() const { return n_; }
  double at(Mask subset) const { return weights_[subset]; }
  const std::vector<double>& weights() const { return weights_; }
  double total() const;
  double mass_if(const std::function<bool(Mask)>& pred) const;
  /// mu_f({M : M subset of E}).
  double mass_within(Mask coords) const;
  /// Entry k is mu_f({M : |M| = k}), k = 0..n.
  std::vector<double> mass_by_cardinality() const;

 private:
  int n_ = 0;
  std::vector<double> weights_;
};

struct Block {
  int begin = 0;  // first coordinate
  int end = 0;    // one past the last coordinate

  Mask mask() const;
  bool operator==(const Block&) const = default;
};

/// Ordered disjoint contiguous blocks covering {0..n-1}.
class BlockPartition {
 public:
  BlockPartition() = default;
  /// Throws InvalidParameter unless the blocks are nonempty, ordered, contiguous and cover all n coordinates.
  BlockPartition(int n, std::vector<Block> blocks);

  static BlockPartition singletons(int n);
  static BlockPartition whole(int n);
  /// `count` blocks of equal length; n must be divisible by count.
  static BlockPartition uniform(int n, int count);

  int n() const { return n_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  /// Number of blocks meeting `subset`.
  int blocks_meeting(Mask subset) const;

 private:
  int n_ = 0;
  std::vector<Block> blocks_;
  std::vector<Mask> masks_;
};

/// In-place unnormalized Walsh-Hadamard butterfly over the 2^n table `data`:
/// data[M] <- sum_w data[w] tau_M(w). Exact for integer and rational T.
template <class T>
void fwht_inplace(std::span<T> data) {
  const std::size_t size = data.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t base = 0; base < size; base += half << 1) {
      for (std::size_t k = base; k < base + half; ++k) {
        // index k has coordinate bit clear (sign -1), k + half has it set (+1).
        T lo = data[k];
        T hi = data[k + half];
        data[k] = hi + lo;
        data[k + half] = hi - lo;
      }
    }
  }
}

/// Synthesis butterfly: data[w] <- sum_M data[M] tau_M(w). The character matrix
/// is not symmetric under the +1-bit convention, so this differs from fwht_inplace.
template <class T>
void synthesis_inplace(std::span<T> data) {
  const std::size_t size = data.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t base = 0; base < size; base += half << 1) {
      for (std::size_t k = base; k < base + half; ++k) {
        T without = data[k];
        T with = data[k + half];
        data[k] = without - with;
        data[k + half] = without + with;
      }
    }
  }
}

WalshSpectrum walsh_transform(const Observable& f, const Budget& budget = {});
Observable synthesize(const WalshSpectrum& spectrum, const Budget& budget = {});
SpectralMeasure spectral_measure(const WalshSpectrum& spectrum);

/// Exact transform of a rational table: coefficients f^_M = 2^-n sum_w f(w) tau_M(w).
std::vector<Rational> walsh_transform_exact(int n, std::span<const Rational> values, const Budget& budget = {});

/// E[f | signs in `coords`]: zeroes every coefficient whose subset leaves `coords`.
Observable conditional_expectation(const Observable& f, Mask coords);

/// rho^N: multiplies the coefficient at M by rho^|M|.
WalshSpectrum noise_operator(const WalshSpectrum& spectrum, double rho);

/// Block noise: multiplies the coefficient at M by rho^(number of blocks meeting M).
WalshSpectrum block_noise_operator(const WalshSpectrum& spectrum, const BlockPartition& blocks, double rho);

/// sum_M rho^|M| f^_M g^_M.
double noisy_correlation(const Observable& f, const Observable& g, double rho);

/// E sqrt(Var(f | all signs but m)), i.e. half the mean absolute flip difference.
double influence(const Observable& f, int m);

/// E sqrt(Var(f | all signs outside `coords`)).
double set_influence(const Observable& f, Mask coords);

/// Sum over coordinates of the squared influence.
double bks_statistic(const Observable& f);

}  // namespace noiselab::walsh
