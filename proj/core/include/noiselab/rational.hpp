#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace noiselab {

/// Exact rational number (GMP). Always kept in canonical form.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "num/den" or a plain integer. Decimal and exponent forms are rejected
/// so that callers never receive a silently rounded probability.
Rational parse_rational(std::string_view text);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// q^k for k >= 0, with 0^0 = 1.
Rational pow(const Rational& q, unsigned k);

BigInt binomial(unsigned n, unsigned k);

/// {"num": "...", "den": "..."} with decimal strings.
nlohmann::ordered_json rational_json(const Rational& q);

}  // namespace noiselab
