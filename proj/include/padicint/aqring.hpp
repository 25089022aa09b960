#pragma once

#include <map>
#include <optional>
#include <string>

#include "padicint/padic.hpp"
#include "padicint/rational.hpp"
#include "padicint/upoly.hpp"

namespace padicint {

/// Laurent polynomial q^shift * poly(q); poly has a nonzero constant term
/// unless it is zero, in which case shift is 0.
struct Laurent {
  long shift = 0;
  UPoly poly;

  static Laurent monomial(const Rational& coeff, long exponent);

  void normalize();
  bool is_zero() const { return poly.is_zero(); }
  Rational coeff(long exponent) const;
  long min_exponent() const { return shift; }
  long max_exponent() const { return shift + poly.degree(); }
  Rational evaluate(const Rational& q) const;
  std::string to_string() const;

  friend Laurent operator+(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) {
    return a.shift == b.shift && a.poly == b.poly;
  }
};

/// Element of A_q = Z[q, q^-1, 1/(1 - q^-i)] (with rational numerator
/// coefficients), stored as numerator / prod_i (1 - q^-i)^{e_i}.
///
/// Canonical form: no denominator factor (1 - q^-i) divides the numerator,
/// and no factor (1 - q^-i) can be traded for a (1 - q^-j) with j | i by
/// cancelling the cyclotomic quotient against the numerator. Equality is
/// decided by cross-multiplication, so it does not depend on that choice.
class AqElem {
 public:
  AqElem() = default;
  AqElem(const Rational& constant);  // NOLINT(google-explicit-constructor)
  AqElem(long constant) : AqElem(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
  AqElem(Laurent numerator, std::map<int, int> denominator);

  static AqElem q_power(long exponent);
  /// 1 / (1 - q^-i)^e
  static AqElem inverse_factor(int i, int e = 1);

  const Laurent& numerator() const { return numerator_; }
  /// i -> e for each factor (1 - q^-i)^e
  const std::map<int, int>& denominator() const { return denominator_; }
  Laurent denominator_laurent() const;

  bool is_zero() const { return numerator_.is_zero(); }
  /// The value when the element is a rational constant.
  std::optional<Rational> as_constant() const;

  Rational evaluate(const Prime& prime) const { return evaluate(Rational(prime.value())); }
  Rational evaluate(const Rational& q) const;

  AqElem& operator+=(const AqElem& other);
  AqElem& operator-=(const AqElem& other);
  AqElem& operator*=(const AqElem& other);

  friend AqElem operator+(AqElem a, const AqElem& b) { return a += b; }
  friend AqElem operator-(AqElem a, const AqElem& b) { return a -= b; }
  friend AqElem operator*(AqElem a, const AqElem& b) { return a *= b; }
  friend AqElem operator-(const AqElem& a);
  friend bool operator==(const AqElem& a, const AqElem& b);

  std::string to_string() const;

 private:
  void canonicalize();

  Laurent numerator_;
  std::map<int, int> denominator_;
};

inline AqElem aq_add(const AqElem& a, const AqElem& b) { return a + b; }
inline AqElem aq_mul(const AqElem& a, const AqElem& b) { return a * b; }
inline Rational aq_eval(const AqElem& a, const Prime& prime) { return a.evaluate(prime); }

}  // namespace padicint
