#include "noiselab/walsh.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "noiselab/errors.hpp"

namespace noiselab::walsh {

namespace {

constexpr int kMaxBits = 62;

std::vector<double> power_table(double rho, int n) {
  std::vector<double> powers(static_cast<std::size_t>(n) + 1, 1.0);
  for (int k = 1; k <= n; ++k) powers[static_cast<std::size_t>(k)] = powers[static_cast<std::size_t>(k) - 1] * rho;
  return powers;
}

void check_rho(double rho) {
  if (!(std::fabs(rho) <= 1.0)) throw InvalidParameter("noise parameter must satisfy |rho| <= 1, got " + std::to_string(rho));
}

void check_same_n(int a, int b) {
  if (a != b) throw InvalidParameter("observables have different coordinate counts: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

void check_dense(int n, const Budget& budget) {
  if (n < 0) throw InvalidParameter("coordinate count must be non-negative");
  if (n > budget.dense_limit || n > kMaxBits) {
    throw DimensionTooLarge("dense table of 2^" + std::to_string(n) + " entries exceeds the limit 2^" +
                            std::to_string(budget.dense_limit));
  }
}

// ---------------------------------------------------------------- SignVector

SignVector::SignVector(std::vector<int> signs) {
  signs_.reserve(signs.size());
  for (int s : signs) {
    if (s != 1 && s != -1) throw InvalidParameter("sign entries must be -1 or +1, got " + std::to_string(s));
    signs_.push_back(static_cast<std::int8_t>(s));
  }
}

SignVector SignVector::from_index(int n, Mask index) {
  std::vector<int> signs(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) signs[static_cast<std::size_t>(m)] = ((index >> m) & 1U) != 0 ? 1 : -1;
  return SignVector(std::move(signs));
}

Mask SignVector::index() const {
  Mask out = 0;
  for (int m = 0; m < n(); ++m) {
    if (signs_[static_cast<std::size_t>(m)] > 0) out |= Mask{1} << m;
  }
  return out;
}

// ---------------------------------------------------------------- Observable

Observable::Observable(int n, std::vector<double> values, const Budget& budget) : n_(n), values_(std::move(values)) {
  check_dense(n, budget);
  if (values_.size() != (std::size_t{1} << n)) {
    throw InvalidParameter("observable table must have 2^n = " + std::to_string(std::size_t{1} << n) + " entries, got " +
                           std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidParameter("observable values must be finite");
  }
}

double Observable::at(const SignVector& omega) const {
  check_same_n(n_, omega.n());
  return values_[omega.index()];
}

double Observable::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double Observable::norm_squared() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return sum / static_cast<double>(values_.size());
}

// ---------------------------------------------------------------- WalshSpectrum

WalshSpectrum::WalshSpectrum(int n, std::vector<double> coeffs, const Budget& budget) : n_(n), coeffs_(std::move(coeffs)) {
  check_dense(n, budget);
  if (coeffs_.size() != (std::size_t{1} << n)) throw InvalidParameter("spectrum must have 2^n coefficients");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw InvalidParameter("Walsh coefficients must be finite");
  }
}

double WalshSpectrum::norm_squared() const {
  double sum = 0.0;
  for (double c : coeffs_) sum += c * c;
  return sum;
}

// ---------------------------------------------------------------- SpectralMeasure

SpectralMeasure::SpectralMeasure(int n, std::vector<double> weights) : n_(n), weights_(std::move(weights)) {
  if (weights_.size() != (std::size_t{1} << n)) throw InvalidParameter("spectral measure must have 2^n weights");
  for (double w : weights_) {
    if (!(w >= 0.0)) throw InvalidParameter("spectral weights must be non-negative");
  }
}

double SpectralMeasure::total() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

double SpectralMeasure::mass_if(const std::function<bool(Mask)>& pred) const {
  double sum = 0.0;
  for (Mask m = 0; m < weights_.size(); ++m) {
    if (pred(m)) sum += weights_[m];
  }
  return sum;
}

double SpectralMeasure::mass_within(Mask coords) const {
  // Enumerate the submasks of `coords` directly.
  double sum = 0.0;
  Mask sub = coords;
  for (;;) {
    sum += weights_[sub];
    if (sub == 0) break;
    sub = (sub - 1) & coords;
  }
  return sum;
}

std::vector<double> SpectralMeasure::mass_by_cardinality() const {
  std::vector<double> out(static_cast<std::size_t>(n_) + 1, 0.0);
  for (Mask m = 0; m < weights_.size(); ++m) out[static_cast<std::size_t>(cardinality(m))] += weights_[m];
  return out;
}

// ---------------------------------------------------------------- BlockPartition

Mask Block::mask() const {
  const int len = end - begin;
  const Mask ones = len >= 64 ? ~Mask{0} : ((Mask{1} << len) - 1);
  return ones << begin;
}

BlockPartition::BlockPartition(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
  if (n < 0) throw InvalidParameter("block partition needs n >= 0");
  int next = 0;
  for (const Block& b : blocks_) {
    if (b.begin != next) throw InvalidParameter("blocks must be ordered, disjoint and contiguous");
    if (b.end <= b.begin) throw InvalidParameter("blocks must be nonempty");
    next = b.end;
  }
  if (next != n) throw InvalidParameter("blocks must cover all " + std::to_string(n) + " coordinates");
  if (n <= 64) {
    masks_.reserve(blocks_.size());
    for (const Block& b : blocks_) masks_.push_back(b.mask());
  }
}

BlockPartition BlockPartition::singletons(int n) {
  std::vector<Block> blocks;
  for (int m = 0; m < n; ++m) blocks.push_back({m, m + 1});
  return BlockPartition(n, std::move(blocks));
}

BlockPartition BlockPartition::whole(int n) {
  if (n == 0) return BlockPartition(0, {});
  return BlockPartition(n, {Block{0, n}});
}

BlockPartition BlockPartition::uniform(int n, int count) {
  if (count <= 0 || n % count != 0) {
    throw InvalidParameter("cannot split " + std::to_string(n) + " coordinates into " + std::to_string(count) +
                           " equal blocks");
  }
  const int len = n / count;
  std::vector<Block> blocks;
  for (int k = 0; k < count; ++k) blocks.push_back({k * len, (k + 1) * len});
  return BlockPartition(n, std::move(blocks));
}

int BlockPartition::blocks_meeting(Mask subset) const {
  if (masks_.size() != blocks_.size()) throw InvalidParameter("bitmask queries need n <= 64");
  int count = 0;
  for (Mask b : masks_) count += (b & subset) != 0 ? 1 : 0;
  return count;
}

// ---------------------------------------------------------------- operations

WalshSpectrum walsh_transform(const Observable& f, const Budget& budget) {
  check_dense(f.n(), budget);
  std::vector<double> data = f.values();
  fwht_inplace<double>(data);
  const double scale = std::ldexp(1.0, -f.n());
  for (double& c : data) c *= scale;
  return WalshSpectrum(f.n(), std::move(data), budget);
}

Observable synthesize(const WalshSpectrum& spectrum, const Budget& budget) {
  check_dense(spectrum.n(), budget);
  std::vector<double> data = spectrum.coeffs();
  synthesis_inplace<double>(data);
  return Observable(spectrum.n(), std::move(data), budget);
}

SpectralMeasure spectral_measure(const WalshSpectrum& spectrum) {
  std::vector<double> weights(spectrum.size());
  for (Mask m = 0; m < weights.size(); ++m) weights[m] = spectrum.coeff(m) * spectrum.coeff(m);
  return SpectralMeasure(spectrum.n(), std::move(weights));
}

std::vector<Rational> walsh_transform_exact(int n, std::span<const Rational> values, const Budget& budget) {
  check_dense(n, budget);
  if (values.size() != (std::size_t{1} << n)) throw InvalidParameter("exact table must have 2^n entries");
  std::vector<Rational> data(values.begin(), values.end());
  fwht_inplace<Rational>(data);
  Rational scale(1);
  mpz_mul_2exp(scale.get_den_mpz_t(), scale.get_den_mpz_t(), static_cast<mp_bitcnt_t>(n));
  for (Rational& c : data) {
    c *= scale;
    c.canonicalize();
  }
  return data;
}

Observable conditional_expectation(const Observable& f, Mask coords) {
  const Mask full = f.n() >= 64 ? ~Mask{0} : ((Mask{1} << f.n()) - 1);
  if ((coords & ~full) != 0) throw InvalidParameter("conditioning set refers to coordinates outside {0..n-1}");
  WalshSpectrum spectrum = walsh_transform(f);
  std::vector<double> coeffs = spectrum.coeffs();
  for (Mask m = 0; m < coeffs.size(); ++m) {
    if ((m & ~coords) != 0) coeffs[m] = 0.0;
  }
  synthesis_inplace<double>(coeffs);
  return Observable(f.n(), std::move(coeffs));
}

WalshSpectrum noise_operator(const WalshSpectrum& spectrum, double rho) {
  check_rho(rho);
  const auto powers = power_table(rho, spectrum.n());
  std::vector<double> coeffs = spectrum.coeffs();
  for (Mask m = 0; m < coeffs.size(); ++m) coeffs[m] *= powers[static_cast<std::size_t>(cardinality(m))];
  return WalshSpectrum(spectrum.n(), std::move(coeffs), Budget{.dense_limit = spectrum.n()});
}

WalshSpectrum block_noise_operator(const WalshSpectrum& spectrum, const BlockPartition& blocks, double rho) {
  check_rho(rho);
  if (blocks.n() != spectrum.n()) {
    throw InvalidParameter("block partition covers " + std::to_string(blocks.n()) + " coordinates, spectrum has " +
                           std::to_string(spectrum.n()));
  }
  const auto powers = power_table(rho, static_cast<int>(blocks.size()));
  std::vector<double> coeffs = spectrum.coeffs();
  for (Mask m = 0; m < coeffs.size(); ++m) coeffs[m] *= powers[static_cast<std::size_t>(blocks.blocks_meeting(m))];
  return WalshSpectrum(spectrum.n(), std::move(coeffs), Budget{.dense_limit = spectrum.n()});
}

double noisy_correlation(const Observable& f, const Observable& g, double rho) {
  check_rho(rho);
  check_same_n(f.n(), g.n());
  const auto fs = walsh_transform(f, Budget{.dense_limit = f.n()});
  const auto gs = walsh_transform(g, Budget{.dense_limit = g.n()});
  const auto powers = power_table(rho, f.n());
  double sum = 0.0;
  for (Mask m = 0; m < fs.size(); ++m) sum += powers[static_cast<std::size_t>(cardinality(m))] * fs.coeff(m) * gs.coeff(m);
  return sum;
}

double influence(const Observable& f, int m) {
  if (m < 0 || m >= f.n()) throw InvalidParameter("coordinate " + std::to_string(m) + " outside {0.." + std::to_string(f.n() - 1) + "}");
  const Mask bit = Mask{1} << m;
  double sum = 0.0;
  for (Mask w = 0; w < f.size(); ++w) {
    if ((w & bit) == 0) sum += std::fabs(f[w | bit] - f[w]);
  }
  // Each pair was visited once; halving the difference and averaging over 2^n points.
  return sum / static_cast<double>(f.size());
}

double set_influence(const Observable& f, Mask coords) {
  const Mask full = f.n() >= 64 ? ~Mask{0} : ((Mask{1} << f.n()) - 1);
  if ((coords & ~full) != 0) throw InvalidParameter("influence set refers to coordinates outside {0..n-1}");
  const double inner = std::ldexp(1.0, cardinality(coords));
  double total = 0.0;
  for (Mask outside = 0; outside < f.size(); ++outside) {
    if ((outside & coords) != 0) continue;
    double s1 = 0.0;
    double s2 = 0.0;
    Mask sub = coords;
    for (;;) {
      const double v = f[outside | sub];
      s1 += v;
      s2 += v * v;
      if (sub == 0) break;
      sub = (sub - 1) & coords;
    }
    const double mean = s1 / inner;
    const double var = std::max(0.0, s2 / inner - mean * mean);
    total += std::sqrt(var);
  }
  return total * inner / static_cast<double>(f.size());
}

double bks_statistic(const Observable& f) {
  double sum = 0.0;
  for (int m = 0; m < f.n(); ++m) {
    const double inf = influence(f, m);
    sum += inf * inf;
  }
  return sum;
}

}  // namespace noiselab::walsh
