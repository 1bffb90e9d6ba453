#include <doctest.h>

#include <random>

#include "noiselab/errors.hpp"
#include "noiselab/semigroup.hpp"

using namespace noiselab;
using namespace noiselab::semigroup;

namespace {

G3Int random_g3(std::mt19937_64& gen) {
  std::uniform_int_distribution<std::int64_t> small(-6, 6);
  std::uniform_int_distribution<std::int64_t> nonneg(0, 6);
  const std::int64_t b = nonneg(gen);
  std::int64_t a = small(gen);
  if (a + b < 0) a = -b;
  const std::int64_t c = std::uniform_int_distribution<std::int64_t>(0, a + b)(gen);
  return {a, b, c};
}

}  // namespace

TEST_SUITE("semigroup") {
  TEST_CASE("G2 composition examples") {
    for (std::int64_t b : {0, 1, 5}) CHECK(compose_g2(G2Int{b, 0}, G2Int{-b, b}) == unit_g2<std::int64_t>());
    CHECK(compose_g2(G2Int{1, 0}, G2Int{-2, 2}) == G2Int{-1, 1});
    CHECK(compose_g2(G2Int{3, 2}, unit_g2<std::int64_t>()) == G2Int{3, 2});
    CHECK(compose_g2(unit_g2<std::int64_t>(), G2Int{3, 2}) == G2Int{3, 2});
  }

  TEST_CASE("G3 composition examples") {
    CHECK(compose_g3(f_plus<std::int64_t>(), f_minus<std::int64_t>()) == unit_g3<std::int64_t>());
    CHECK(compose_g3(f_star<std::int64_t>(), f_plus<std::int64_t>()) == G3Int{2, 0, 2});
    CHECK(compose_g3(f_star<std::int64_t>(), f_star<std::int64_t>()) == G3Int{2, 0, 2});
    CHECK(compose_g3(f_minus<std::int64_t>(), f_plus<std::int64_t>()) == G3Int{0, 1, 0});
  }

  TEST_CASE("associativity, faithfulness and the homomorphisms on random triples") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto x = random_g3(gen);
      const auto y = random_g3(gen);
      const auto z = random_g3(gen);
      CHECK(compose(compose(x, y), z) == compose(x, compose(y, z)));
      CHECK(compose(project(x), project(y)) == project(compose(x, y)));
      CHECK(compose(project(project(x)), project(project(y))) == project(project(compose(x, y))));
      for (std::int64_t v = 0; v <= 8; ++v) {
        CHECK(act(compose(x, y), v) == act(y, act(x, v)));
        CHECK(act(compose(project(x), project(y)), v) == act(project(y), act(project(x), v)));
      }
    }
  }

  TEST_CASE("the continuous flavor composes the same way") {
    const G3Real x{0.5, 1.25, 0.75};
    const G3Real y{-1.0, 2.0, 0.5};
    CHECK(compose(x, y) == G3Real{-0.5, 1.5, 0.5});
    CHECK(act(compose(x, y), 3.0) == act(y, act(x, 3.0)));
  }

  TEST_CASE("actions of the generators") {
    CHECK(act(project(f_minus<std::int64_t>()), std::int64_t{0}) == 0);
    CHECK(act(project(f_minus<std::int64_t>()), std::int64_t{4}) == 3);
    for (std::int64_t v = 0; v < 5; ++v) {
      CHECK(act(project(f_plus<std::int64_t>()), v) == v + 1);
      CHECK(act(f_star<std::int64_t>(), v) == v + 1);
    }
    CHECK(act(f_plus<std::int64_t>(), std::int64_t{0}) == 0);
    CHECK(act(f_plus<std::int64_t>(), std::int64_t{2}) == 3);
  }

  TEST_CASE("projections") {
    CHECK(project(G3Int{2, 0, 2}) == G2Int{2, 0});
    CHECK(project(G2Int{2, 0}) == G1Int{2});
    CHECK(project(f_star<std::int64_t>()) == project(f_plus<std::int64_t>()));
  }

  TEST_CASE("invariant and domain errors") {
    CHECK_THROWS_AS(compose(G2Int{0, -1}, G2Int{0, 0}), InvariantViolation);
    CHECK_THROWS_AS(compose(G3Int{1, 0, 2}, G3Int{0, 0, 0}), InvariantViolation);
    CHECK_THROWS_AS(act(G2Int{0, 0}, std::int64_t{-1}), InvalidParameter);
    CHECK_THROWS_AS(act(G3Int{-2, 1, 0}, std::int64_t{0}), InvariantViolation);
  }

  TEST_CASE("JSON tuples") {
    CHECK(to_json(G3Int{1, 2, 3}).dump() == "[1,2,3]");
    CHECK(g3_from_json(nlohmann::json::parse("[-1,1,0]")) == f_minus<std::int64_t>());
    CHECK(g2_from_json(nlohmann::json::parse("[2,0]")) == G2Int{2, 0});
    CHECK_THROWS_AS(g3_from_json(nlohmann::json::parse("[1,0,5]")), InvariantViolation);
    CHECK_THROWS_AS(g3_from_json(nlohmann::json::parse("[1,0]")), InvalidParameter);
  }
}
