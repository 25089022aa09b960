#include "padicint/rational.hpp"

#include <cctype>

#include "padicint/error.hpp"

namespace padicint {

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_string(const Integer& value) { return value.get_str(); }

namespace {

Integer parse_integer_part(std::string_view text, std::size_t offset) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw ParseError("expected digits", 1, static_cast<int>(offset + i + 1));
  }
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw ParseError("unexpected character '" + std::string(1, text[j]) + "'",
                       1, static_cast<int>(offset + j + 1));
    }
  }
  Integer result(std::string(text.substr(i)), 10);
  return negative ? Integer(-result) : result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer_part(text, 0));
  }
  Integer num = parse_integer_part(text.substr(0, slash), 0);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw ParseError("signed denominator", 1, static_cast<int>(slash + 2));
  }
  Integer den = parse_integer_part(den_text, slash + 1);
  if (den == 0) {
    throw ParseError("zero denominator", 1, static_cast<int>(slash + 2));
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational fraction(long num, long den) {
  if (den == 0) throw Error(ErrorKind::Domain, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
  return result;
}

Rational rpow(const Rational& base, long exponent) {
  if (exponent >= 0) {
    Rational r(ipow(base.get_num(), static_cast<unsigned long>(exponent)),
               ipow(base.get_den(), static_cast<unsigned long>(exponent)));
    r.canonicalize();
    return r;
  }
  if (base == 0) throw Error(ErrorKind::Domain, "zero raised to a negative power");
  auto e = static_cast<unsigned long>(-exponent);
  Rational r(ipow(base.get_den(), e), ipow(base.get_num(), e));
  r.canonicalize();
  return r;
}

long to_long(const Integer& value) {
  if (!value.fits_slong_p()) {
    throw Error(ErrorKind::Domain, "integer " + value.get_str() + " exceeds 64-bit range");
  }
  return value.get_si();
}

}  // namespace padicint
