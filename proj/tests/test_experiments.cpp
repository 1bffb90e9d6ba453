#include <doctest.h>

#include <cmath>
#include <vector>

#include "noiselab/errors.hpp"
#include "noiselab/experiments.hpp"
#include "noiselab/random.hpp"
#include "noiselab/stats.hpp"
#include "oracles.hpp"

using namespace noiselab;
using namespace noiselab::experiments;

TEST_SUITE("experiments") {
  TEST_CASE("distribution functions") {
    for (double x : {-2.0, -0.3, 0.0, 1.0, 2.5}) CHECK(stats::normal_cdf(x) == doctest::Approx(oracle::normal_cdf(x)));
    for (double u : {0.1, 0.7, 1.5, 3.0, 6.0}) {
      CHECK(std::abs(stats::maxwell_cdf(u) - oracle::maxwell_cdf_numeric(u)) < 1e-10);
    }
    CHECK(stats::maxwell_cdf(0.0) == 0.0);
    CHECK(std::abs(stats::maxwell_cdf(50.0) - 1.0) < 1e-15);
  }

  TEST_CASE("KS statistics") {
    const double ks = stats::ks_discrete({{-1.0, 0.5}, {1.0, 0.5}}, stats::normal_cdf);
    CHECK(ks == doctest::Approx(oracle::normal_cdf(1.0) - 0.5).epsilon(1e-12));
    CHECK(ks == doctest::Approx(0.3413).epsilon(1e-4));
    CHECK(stats::ks_two_sample({1, 2, 3}, {1, 2, 3}) == 0.0);
    CHECK(stats::ks_two_sample({0, 0, 0}, {1, 1, 1}) == 1.0);
    CHECK(stats::ks_two_sample({1, 2}, {2, 3}) == doctest::Approx(0.5));
    // Caps at 0 force every draw to 0.
    CHECK(stats::ks_truncated_exponential({0, 0}, {0, 0}) == 0.0);
  }

  TEST_CASE("Poisson total variation") {
    CHECK(stats::poisson_pmf(0, 1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(stats::poisson_pmf(3, 2.0) == doctest::Approx(std::exp(-2.0) * 8.0 / 6.0));
    const double tv_zero = stats::poisson_tv({0, 0, 0, 0}, 1.0);
    CHECK(tv_zero == doctest::Approx(1.0 - std::exp(-1.0)));
  }

  TEST_CASE("shard seeds") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    Rng a(9);
    Rng b(9);
    for (int k = 0; k < 10; ++k) CHECK(a.uniform01() == b.uniform01());
  }

  TEST_CASE("CLT report") {
    const auto one = clt_report({1});
    CHECK(one.stats["ks_i=1"].get<double>() == doctest::Approx(oracle::normal_cdf(1.0) - 0.5).epsilon(1e-12));
    const auto big = clt_report({4096});
    CHECK(big.pass());
    CHECK(big.stats["ks_i=4096"].get<double>() <= 1.0 / 64.0);
    CHECK_THROWS_AS(clt_report({0}), InvalidParameter);
  }

  TEST_CASE("G2 limit report against the reflection-principle law") {
    for (int i : {64, 256}) {
      const auto report = g2_limit_report(i);
      const auto law = oracle::g2_sum_law(i);
      std::vector<std::pair<double, double>> atoms;
      double total = 0.0;
      for (const auto& [s, q] : law) {
        atoms.emplace_back(static_cast<double>(s) / std::sqrt(static_cast<double>(i)), q);
        total += q;
      }
      CHECK(std::abs(total - 1.0) < 1e-9);
      double worst = 0.0;
      double cum = 0.0;
      for (const auto& [x, q] : atoms) {
        const double f = oracle::maxwell_cdf_numeric(x);
        worst = std::max({worst, std::abs(cum - f), std::abs(cum + q - f)});
        cum += q;
      }
      CHECK(std::abs(report.stats["ks"].get<double>() - worst) < 1e-8);
      CHECK(std::abs(report.stats["total_mass"].get<double>() - 1.0) < 1e-9);
    }
    CHECK_THROWS_AS(g2_limit_report(8), InvalidParameter);
  }

  TEST_CASE("G3 limit report is reproducible") {
    const auto a = g3_limit_report(256, 2000, 5);
    const auto b = g3_limit_report(256, 2000, 5);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK_THROWS_AS(g3_limit_report(1, 10, 5), InvalidParameter);
  }

  TEST_CASE("pattern counts") {
    CHECK(count_pattern(std::vector<int>(64, -1), 3) == 0);
    CHECK(count_pattern({1, -1, -1, 1, -1, -1}, 3) == 2);
    CHECK(count_pattern({1, -1, -1, -1}, 3) == 1);
    const auto report = poisson_block_report(6, 2, 3000, 4);
    CHECK(report.stats["expected_count"].get<double>() == doctest::Approx(2.0).epsilon(0.05));
    CHECK(report.stats["tv"].get<double>() <= 0.1);
  }

  TEST_CASE("product observable") {
    CHECK(window_length(3, 1.0) == 1);
    CHECK(window_length(16, 1.0) == 4);
    CHECK_THROWS_AS(window_length(4, 3.0), InvalidParameter);

    const auto sum = product_observable(3, 1.0);
    const auto by_size = walsh::spectral_measure(walsh::walsh_transform(sum)).mass_by_cardinality();
    CHECK(by_size[1] == doctest::Approx(1.0));
    for (walsh::Mask m = 0; m < 3; ++m) {
      CHECK(walsh::spectral_measure(walsh::walsh_transform(sum)).at(walsh::Mask{1} << m) == doctest::Approx(1.0 / 3));
    }

    const auto f = product_observable(16, 1.0);
    const auto profile = spectral_profile(f);
    CHECK(profile.by_cardinality[4] == doctest::Approx(13.0 / 16.0));
    double total = 0.0;
    for (double v : profile.by_cardinality) total += v;
    CHECK(total == doctest::Approx(profile.by_cardinality[4]));
    CHECK(f.norm_squared() == doctest::Approx(13.0 / 16.0));
  }

  TEST_CASE("micro and block correlations") {
    const double rho = std::exp(-1.0);
    const auto single = micro_block_correlations(16, 1.0, rho, walsh::BlockPartition::whole(16));
    CHECK(single.block == doctest::Approx(rho));
    const auto singles = micro_block_correlations(16, 1.0, rho, walsh::BlockPartition::singletons(16));
    CHECK(singles.block == doctest::Approx(singles.micro));
    CHECK(singles.micro == doctest::Approx(std::pow(rho, 4)));

    const auto small = micro_block_correlations(8, 1.0, rho, walsh::BlockPartition::uniform(8, 2));
    CHECK(small.length == 2);
    CHECK(std::abs(small.block - (6 * rho + rho * rho) / 7) < 1e-12);
    const auto f = product_observable(8, 1.0);
    const double norm = f.norm_squared();
    const double exhaustive = oracle::naive_block_coupled(8, f.values(), f.values(), {{0, 4}, {4, 8}}, rho) / norm;
    CHECK(std::abs(exhaustive - (6 * rho + rho * rho) / 7) < 1e-10);
    CHECK(micro_block_report(8, 1.0, rho, 2).pass());

    const auto large = micro_block_correlations(4096, 1.0, rho, walsh::BlockPartition::uniform(4096, 4));
    CHECK(large.micro == std::pow(rho, 64));
    CHECK(large.block >= 0.3);
  }

  TEST_CASE("Hausdorff distance of finite spectral sets") {
    const FiniteSpectralSet empty;
    CHECK(hausdorff_distance(empty, FiniteSpectralSet({0.0})) == 1.0);
    CHECK(hausdorff_distance(empty, empty) == 0.0);
    CHECK(hausdorff_distance(FiniteSpectralSet({0.0}), FiniteSpectralSet({0.0, 1.0})) == 1.0);
    CHECK(hausdorff_distance(FiniteSpectralSet({0.25, 0.5}), FiniteSpectralSet({0.25, 0.5})) == 0.0);
    CHECK(FiniteSpectralSet::from_mask(0b101, 4).points() == std::vector<double>{0.0, 0.5});
    CHECK_THROWS_AS(FiniteSpectralSet({0.5, 0.25}), InvalidParameter);
  }

  TEST_CASE("spectral profile of simple observables") {
    const auto parity = walsh::Observable::from_function(4, [](walsh::Mask w) { return walsh::character(0b0110, w); });
    const auto profile = spectral_profile(parity, 2);
    CHECK(profile.by_cardinality[2] == doctest::Approx(1.0));
    CHECK(profile.dyadic_cells[0][0] == doctest::Approx(1.0));
    // {1, 2} straddles the two halves.
    CHECK(profile.dyadic_cells[1][0] == doctest::Approx(0.0));
    CHECK(profile.dyadic_cells[1][1] == doctest::Approx(0.0));
  }

  TEST_CASE("reports") {
    ExperimentReport r;
    r.name = "demo";
    r.add_exact("exact", Rational(1, 3), Rational(1, 3));
    r.add_at_most("small", 0.5, 0.25);
    CHECK_FALSE(r.pass());
    CHECK(r.failures() == 1);
    const auto j = to_json(r);
    CHECK(j["checks"][0]["lhs"]["num"] == "1");
    CHECK(j["checks"][0]["lhs"]["den"] == "3");
    CHECK(j["pass"] == false);
    const auto csv = to_csv(r);
    CHECK(csv.rfind("check_id,lhs,rhs,pass\n", 0) == 0);
    CHECK(csv.find("exact,1/3,1/3,") != std::string::npos);
    const auto merged = merge_reports("all", {r});
    CHECK(merged.checks.front().id == "demo.exact");
  }

  TEST_CASE("verification reports pass") {
    CHECK(verify_flows(8, Rational(1, 3)).pass());
    CHECK(verify_snake(6, Rational(1, 2)).pass());
    CHECK(verify_theorem79(6, true, 0, kDefaultSeed).pass());
    CHECK(verify_zero_spectral(5).pass());
    CHECK(verify_lemma74(40, kDefaultSeed).pass());
    CHECK(verify_walsh(8, kDefaultSeed).pass());
    CHECK(verify_trap(10, 2, 5, 64, 0, kDefaultSeed).pass());
    CHECK(web_report(6, 3, 4000, kDefaultSeed).pass());
  }
}
