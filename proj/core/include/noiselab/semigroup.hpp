#pragma once

// The semigroups G1, G2, G3 in their integer (discrete) and real (continuous)
// flavors. Composition is written left to right: compose(x, y) is "x, then y",
// matching the action act(compose(x, y), v) == act(y, act(x, v)).
//
//   G1: f_a,                  f_a1 f_a2 = f_{a1+a2}
//   G2: f_{a,b},  b >= 0, a+b >= 0,         b = max(b1, b2 - a1)
//   G3: f_{a,b,c}, b >= 0, 0 <= c <= a+b,   c = a2 + c1 if c1 > b2, else c2

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "noiselab/errors.hpp"

namespace noiselab::semigroup {

template <class S>
concept Scalar = std::signed_integral<S> || std::floating_point<S>;

template <Scalar S>
struct G1Element {
  S a{};

  auto operator<=>(const G1Element&) const = default;
};

template <Scalar S>
struct G2Element {
  S a{};
  S b{};

  bool valid() const { return b >= 0 && a + b >= 0; }
  auto operator<=>(const G2Element&) const = default;
};

template <Scalar S>
struct G3Element {
  S a{};
  S b{};
  S c{};

  bool valid() const { return b >= 0 && c >= 0 && c <= a + b; }
  auto operator<=>(const G3Element&) const = default;
};

using G1Int = G1Element<std::int64_t>;
using G2Int = G2Element<std::int64_t>;
using G3Int = G3Element<std::int64_t>;
using G1Real = G1Element<double>;
using G2Real = G2Element<double>;
using G3Real = G3Element<double>;

namespace detail {

template <class S>
std::string repr(S v) {
  if constexpr (std::integral<S>) {
    return std::to_string(v);
  } else {
    return nlohmann::json(v).dump();
  }
}

template <Scalar S>
void require(const G2Element<S>& x) {
  if (!x.valid()) {
    throw InvariantViolation("G2 element (" + repr(x.a) + "," + repr(x.b) + ") violates b >= 0, a+b >= 0");
  }
}

template <Scalar S>
void require(const G3Element<S>& x) {
  if (!x.valid()) {
    throw InvariantViolation("G3 element (" + repr(x.a) + "," + repr(x.b) + "," + repr(x.c) +
                             ") violates b >= 0, 0 <= c <= a+b");
  }
}

template <Scalar S>
void require_nonnegative(S v) {
  if (v < 0) throw InvalidParameter("representation acts on [0, inf), got " + repr(v));
}

}  // namespace detail

// ---------------------------------------------------------------- units and generators

template <Scalar S>
constexpr G3Element<S> unit_g3() {
  return {0, 0, 0};
}
template <Scalar S>
constexpr G2Element<S> unit_g2() {
  return {0, 0};
}

/// f_- = (-1, 1, 0): steps down, reflected at 0.
template <Scalar S>
constexpr G3Element<S> f_minus() {
  return {-1, 1, 0};
}
/// f_+ = (1, 0, 0): steps up except at the sticky point 0.
template <Scalar S>
constexpr G3Element<S> f_plus() {
  return {1, 0, 0};
}
/// f_* = (1, 0, 1): steps up everywhere.
template <Scalar S>
constexpr G3Element<S> f_star() {
  return {1, 0, 1};
}

// ---------------------------------------------------------------- composition

template <Scalar S>
G1Element<S> compose(const G1Element<S>& x, const G1Element<S>& y) {
  return {x.a + y.a};
}

template <Scalar S>
G2Element<S> compose(const G2Element<S>& x, const G2Element<S>& y) {
  detail::require(x);
  detail::require(y);
  return {x.a + y.a, std::max(x.b, y.b - x.a)};
}

template <Scalar S>
G3Element<S> compose(const G3Element<S>& x, const G3Element<S>& y) {
  detail::require(x);
  detail::require(y);
  return {x.a + y.a, std::max(x.b, y.b - x.a), x.c > y.b ? y.a + x.c : y.c};
}

template <Scalar S>
G2Element<S> compose_g2(const G2Element<S>& x, const G2Element<S>& y) {
  return compose(x, y);
}

template <Scalar S>
G3Element<S> compose_g3(const G3Element<S>& x, const G3Element<S>& y) {
  return compose(x, y);
}

// ---------------------------------------------------------------- faithful representations on [0, inf)

template <Scalar S>
S act(const G2Element<S>& x, S v) {
  detail::require(x);
  detail::require_nonnegative(v);
  return x.a + std::max(v, x.b);
}

template <Scalar S>
S act(const G3Element<S>& x, S v) {
  detail::require(x);
  detail::require_nonnegative(v);
  return v <= x.b ? x.c : v + x.a;
}

template <Scalar S>
S act_g2(const G2Element<S>& x, S v) {
  return act(x, v);
}

template <Scalar S>
S act_g3(const G3Element<S>& x, S v) {
  return act(x, v);
}

// ---------------------------------------------------------------- canonical homomorphisms

template <Scalar S>
G2Element<S> project(const G3Element<S>& x) {
  return {x.a, x.b};
}

template <Scalar S>
G1Element<S> project(const G2Element<S>& x) {
  return {x.a};
}

// ---------------------------------------------------------------- serialization as JSON tuples

template <Scalar S>
nlohmann::json to_json(const G1Element<S>& x) {
  return nlohmann::json::array({x.a});
}
template <Scalar S>
nlohmann::json to_json(const G2Element<S>& x) {
  return nlohmann::json::array({x.a, x.b});
}
template <Scalar S>
nlohmann::json to_json(const G3Element<S>& x) {
  return nlohmann::json::array({x.a, x.b, x.c});
}

/// Parse integer tuples [a,b,c] and [a,b]. Malformed tuples throw InvalidParameter,
/// elements violating the invariants throw InvariantViolation.
G3Int g3_from_json(const nlohmann::json& j);
G2Int g2_from_json(const nlohmann::json& j);

std::string to_string(const G3Int& x);

}  // namespace noiselab::semigroup
