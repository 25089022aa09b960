#pragma once

#include <string>
#include <utility>
#include <vector>

#include "padicint/rational.hpp"

namespace padicint {

/// Dense univariate polynomial with rational coefficients, lowest degree first.
/// The zero polynomial has no coefficients; the leading coefficient of a
/// nonzero polynomial is never zero.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  UPoly(const Rational& constant);  // NOLINT(google-explicit-constructor)

  static UPoly monomial(const Rational& coeff, std::size_t degree);
  static UPoly x() { return monomial(Rational(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Rational(0);
  }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& at) const;

  UPoly derivative() const;
  /// p(x + shift)
  UPoly taylor_shift(const Rational& shift) const;
  /// p(factor * x)
  UPoly scale_argument(const Rational& factor) const;
  /// p(q(x))
  UPoly compose(const UPoly& inner) const;

  /// Euclidean division: *this = quotient * divisor + remainder.
  std::pair<UPoly, UPoly> divmod(const UPoly& divisor) const;

  /// Drops all terms of degree >= n.
  UPoly truncate(std::size_t n) const;

  UPoly& operator+=(const UPoly& other);
  UPoly& operator-=(const UPoly& other);
  UPoly& operator*=(const UPoly& other);
  UPoly& operator*=(const Rational& scalar);

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(UPoly a, const UPoly& b) { return a *= b; }
  friend UPoly operator*(UPoly a, const Rational& s) { return a *= s; }
  friend UPoly operator-(UPoly a) { return a *= Rational(-1); }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Renders with the given variable name, e.g. "1 + 3*T^2".
  std::string to_string(const std::string& var) const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

}  // namespace padicint
