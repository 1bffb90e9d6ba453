#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "noiselab/coupling.hpp"
#include "noiselab/errors.hpp"
#include "noiselab/walsh.hpp"
#include "oracles.hpp"

using namespace noiselab;
using namespace noiselab::walsh;

namespace {

std::vector<double> random_table(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(std::size_t{1} << n);
  for (auto& x : v) x = dist(gen);
  return v;
}

Observable tau_product(int n, Mask subset) {
  return Observable::from_function(n, [subset](Mask w) { return character(subset, w); });
}

}  // namespace

TEST_SUITE("walsh") {
  TEST_CASE("character follows the +1-bit convention") {
    CHECK(character(0, 0) == 1);
    CHECK(character(0b1, 0b1) == 1);
    CHECK(character(0b1, 0b0) == -1);
    CHECK(character(0b11, 0b00) == 1);
    CHECK(character(0b11, 0b10) == -1);
    for (Mask m = 0; m < 16; ++m) {
      for (Mask w = 0; w < 16; ++w) CHECK(character(m, w) == oracle::tau_set(m, w));
    }
  }

  TEST_CASE("transform of a dictator and a constant") {
    const auto dictator = walsh_transform(tau_product(2, 0b01));
    CHECK(dictator.coeff(0b01) == doctest::Approx(1.0));
    CHECK(dictator.coeff(0b00) == doctest::Approx(0.0));
    CHECK(dictator.coeff(0b10) == doctest::Approx(0.0));
    CHECK(dictator.coeff(0b11) == doctest::Approx(0.0));

    const auto one = walsh_transform(Observable::from_function(3, [](Mask) { return 1.0; }));
    CHECK(one.coeff(0) == doctest::Approx(1.0));
    for (Mask m = 1; m < 8; ++m) CHECK(one.coeff(m) == doctest::Approx(0.0));
  }

  TEST_CASE("transform agrees with the defining sum") {
    for (int n = 1; n <= 7; ++n) {
      const auto table = random_table(n, 100 + static_cast<std::uint64_t>(n));
      const auto fast = walsh_transform(Observable(n, table));
      const auto slow = oracle::naive_transform(n, table);
      for (Mask m = 0; m < slow.size(); ++m) CHECK(std::abs(fast.coeff(m) - slow[m]) < 1e-13);
    }
  }

  TEST_CASE("synthesis inverts the transform") {
    WalshSpectrum parity(2, {0.0, 0.0, 0.0, 1.0});
    const auto f = synthesize(parity);
    for (Mask w = 0; w < 4; ++w) CHECK(f[w] == doctest::Approx(character(0b11, w)));

    WalshSpectrum constant(2, {2.5, 0.0, 0.0, 0.0});
    const auto flat = synthesize(constant);
    for (double v : flat.values()) CHECK(v == doctest::Approx(2.5));

    const auto coeffs = random_table(4, 7);
    const auto back = walsh_transform(synthesize(WalshSpectrum(4, coeffs)));
    for (Mask m = 0; m < 16; ++m) CHECK(std::abs(back.coeff(m) - coeffs[m]) < std::ldexp(1.0, -40));
  }

  TEST_CASE("Parseval and the empty-set mass") {
    const Observable f(3, random_table(3, 11));
    const auto spec = walsh_transform(f);
    CHECK(spec.norm_squared() == doctest::Approx(f.norm_squared()).epsilon(1e-14));
    const auto mu = spectral_measure(spec);
    CHECK(mu.at(0) == doctest::Approx(f.mean() * f.mean()).epsilon(1e-14));
    const auto slow = oracle::naive_transform(3, f.values());
    for (Mask m = 0; m < 8; ++m) CHECK(mu.at(m) == doctest::Approx(slow[m] * slow[m]).epsilon(1e-12));

    const auto parity = spectral_measure(walsh_transform(tau_product(2, 0b11)));
    CHECK(parity.at(0b11) == doctest::Approx(1.0));
    CHECK(parity.total() == doctest::Approx(1.0));
    CHECK(parity.mass_by_cardinality()[2] == doctest::Approx(1.0));
  }

  TEST_CASE("exact transform of a rational table") {
    std::vector<Rational> table(8);
    for (Mask w = 0; w < 8; ++w) table[w] = Rational(character(0b101, w)) + Rational(1, 3);
    const auto coeffs = walsh_transform_exact(3, table);
    for (Mask m = 0; m < 8; ++m) {
      const Rational expected = m == 0b101 ? Rational(1) : (m == 0 ? Rational(1, 3) : Rational(0));
      CHECK(coeffs[m] == expected);
    }
  }

  TEST_CASE("conditional expectation") {
    const auto sum = Observable::from_function(2, [](Mask w) { return character(0b01, w) + character(0b10, w); });
    const auto first = conditional_expectation(sum, 0b01);
    for (Mask w = 0; w < 4; ++w) CHECK(first[w] == doctest::Approx(character(0b01, w)));
    const auto all = conditional_expectation(sum, 0b11);
    for (Mask w = 0; w < 4; ++w) CHECK(all[w] == doctest::Approx(sum[w]));

    // Averaging over coordinate 1 by hand.
    const Observable f(3, random_table(3, 5));
    const auto cond = conditional_expectation(f, 0b101);
    for (Mask w = 0; w < 8; ++w) CHECK(cond[w] == doctest::Approx(0.5 * (f[w & ~Mask{2}] + f[w | 2])));

    const auto mu = spectral_measure(walsh_transform(f));
    for (Mask e = 0; e < 8; ++e) {
      CHECK(conditional_expectation(f, e).norm_squared() == doctest::Approx(mu.mass_within(e)).epsilon(1e-13));
    }
  }

  TEST_CASE("noise operators") {
    const auto spec = walsh_transform(tau_product(2, 0b11));
    CHECK(noise_operator(spec, 0.5).coeff(0b11) == doctest::Approx(0.25));
    const auto random_spec = walsh_transform(Observable(4, random_table(4, 3)));
    CHECK(noise_operator(random_spec, 1.0).coeffs() == random_spec.coeffs());

    const auto singles = block_noise_operator(random_spec, BlockPartition::singletons(4), 0.3);
    const auto plain = noise_operator(random_spec, 0.3);
    for (Mask m = 0; m < 16; ++m) CHECK(singles.coeff(m) == doctest::Approx(plain.coeff(m)));
    const auto whole = block_noise_operator(random_spec, BlockPartition::whole(4), 0.3);
    for (Mask m = 1; m < 16; ++m) CHECK(whole.coeff(m) == doctest::Approx(0.3 * random_spec.coeff(m)));
    CHECK(whole.coeff(0) == doctest::Approx(random_spec.coeff(0)));

    const auto blocked = block_noise_operator(spec, BlockPartition::whole(2), 0.4);
    CHECK(blocked.coeff(0b11) == doctest::Approx(0.4));
  }

  TEST_CASE("noisy correlation against the coupled joint space") {
    const auto dictator = tau_product(3, 0b010);
    CHECK(noisy_correlation(dictator, dictator, 0.7) == doctest::Approx(0.7));
    const auto centered = tau_product(3, 0b110);
    CHECK(noisy_correlation(centered, centered, 0.0) == doctest::Approx(0.0));

    for (int n = 1; n <= 5; ++n) {
      const Observable f(n, random_table(n, 20 + static_cast<std::uint64_t>(n)));
      const Observable g(n, random_table(n, 40 + static_cast<std::uint64_t>(n)));
      for (double rho : {1.0 / 3.0, -0.4, 0.9}) {
        const double spectral = noisy_correlation(f, g, rho);
        CHECK(std::abs(spectral - oracle::naive_coupled(n, f.values(), g.values(), rho)) < 1e-12);
        CHECK(std::abs(spectral - coupled_expectation(f, g, rho)) < 1e-12);
      }
    }
  }

  TEST_CASE("block coupling against block resampling") {
    const Observable f(6, random_table(6, 61));
    const Observable g(6, random_table(6, 62));
    const BlockPartition blocks(6, {{0, 2}, {2, 5}, {5, 6}});
    for (double rho : {0.0, 0.25, 0.8}) {
      const double lib = block_coupled_expectation(f, g, blocks, rho);
      const double ref = oracle::naive_block_coupled(6, f.values(), g.values(), {{0, 2}, {2, 5}, {5, 6}}, rho);
      CHECK(std::abs(lib - ref) < 1e-12);
      const auto fs = walsh_transform(f);
      const auto gs = block_noise_operator(walsh_transform(g), blocks, rho);
      double spectral = 0.0;
      for (Mask m = 0; m < 64; ++m) spectral += fs.coeff(m) * gs.coeff(m);
      CHECK(std::abs(spectral - ref) < 1e-12);
    }
  }

  TEST_CASE("influences use the half flip difference") {
    CHECK(influence(tau_product(3, 0b010), 1) == doctest::Approx(1.0));
    CHECK(influence(tau_product(3, 0b011), 0) == doctest::Approx(1.0));
    CHECK(influence(tau_product(3, 0b011), 2) == doctest::Approx(0.0));

    const std::vector<double> c{0.5, -1.25, 2.0, 0.0};
    const auto linear = Observable::from_function(4, [&](Mask w) {
      double s = 0.0;
      for (int m = 0; m < 4; ++m) s += c[static_cast<std::size_t>(m)] * character(Mask{1} << m, w);
      return s;
    });
    double total = 0.0;
    for (int m = 0; m < 4; ++m) {
      const double inf = influence(linear, m);
      CHECK(inf * inf == c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(m)]);
      total += c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(m)];
    }
    CHECK(bks_statistic(linear) == total);

    const auto majority = Observable::from_function(3, [](Mask w) { return std::popcount(w) >= 2 ? 1 : -1; });
    CHECK(bks_statistic(majority) == doctest::Approx(0.75));
    CHECK(bks_statistic(tau_product(3, 0b001)) == doctest::Approx(1.0));
    CHECK(bks_statistic(Observable::from_function(3, [](Mask) { return 4.0; })) == 0.0);
    CHECK(set_influence(tau_product(3, 0b011), 0b011) == doctest::Approx(1.0));
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(check_dense(25), DimensionTooLarge);
    CHECK_THROWS_AS(SignVector({1, 0, -1}), InvalidParameter);
    CHECK_THROWS_AS(Observable(2, {1.0, 2.0, 3.0}), InvalidParameter);
    CHECK_THROWS_AS(BlockPartition(4, {{0, 2}, {3, 4}}), InvalidParameter);
    CHECK_THROWS_AS(BlockPartition::uniform(6, 4), InvalidParameter);
    CHECK(SignVector::from_index(3, 0b101).index() == 0b101);
    CHECK(SignVector::from_index(3, 0b101)[1] == -1);
    CHECK(BlockPartition::uniform(8, 2).blocks_meeting(0b00011000) == 2);
  }
}
