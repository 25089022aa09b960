#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "padicint/rational.hpp"

namespace padicint {

/// Sparse multivariate polynomial over Q in x1, x2, ... (variable i is x_{i+1}).
/// Exponent vectors carry no trailing zeros and no stored coefficient is zero,
/// so structural equality is polynomial equality.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  static Polynomial variable(int index);

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  void add_term(Exponents exponents, const Rational& coeff);

  /// 1 + the largest variable index that occurs (0 for constants).
  int num_vars() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  bool involves(int var) const;
  int degree_in(int var) const;
  int total_degree() const;
  bool is_integral() const;

  Rational evaluate(std::span<const Rational> point) const;
  Polynomial substitute_shift(int var, const Rational& shift) const;
  /// (e, h) with *this == x_var^e * h and h free of x_var, if such a split exists.
  std::optional<std::pair<int, Polynomial>> split_power(int var) const;
  /// Componentwise minimum exponent over all terms.
  Exponents monomial_content() const;
  Polynomial divide_monomial(const Exponents& exponents) const;
  /// gcd of numerators over lcm of denominators, signed so the leading term is positive.
  Rational content() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(const Polynomial& a) { return a * Polynomial(Rational(-1)); }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a += -b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial pow(unsigned exponent) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b);

  /// Graded order, highest total degree first, e.g. "x1^2 + x2^2".
  std::string to_string() const;

 private:
  std::map<Exponents, Rational> terms_;
};

}  // namespace padicint
