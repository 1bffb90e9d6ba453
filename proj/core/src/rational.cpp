#include "noiselab/rational.hpp"

#include <cctype>

#include "noiselab/errors.hpp"

namespace noiselab {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw InvalidParameter("expected a rational literal of the form num/den, got '" + std::string(text) + "'");
  }
  BigInt n(std::string(num[0] == '+' ? num.substr(1) : num));
  BigInt d(std::string(den[0] == '+' ? den.substr(1) : den));
  if (d == 0) throw InvalidParameter("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidParameter("zero denominator");
  Rational q{BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den))};
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

Rational pow(const Rational& q, unsigned k) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), k);
  out.canonicalize();
  return out;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt out;
  if (k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

nlohmann::ordered_json rational_json(const Rational& q) {
  return nlohmann::ordered_json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

}  // namespace noiselab
