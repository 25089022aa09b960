#include "padicint/upoly.hpp"

#include <algorithm>

#include "padicint/error.hpp"

namespace padicint {

UPoly::UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly::UPoly(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

UPoly UPoly::monomial(const Rational& coeff, std::size_t degree) {
  std::vector<Rational> c(degree + 1);
  c[degree] = coeff;
  return UPoly(std::move(c));
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational UPoly::operator()(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * at + *it;
  }
  return acc;
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(i);
  return UPoly(std::move(d));
}

UPoly UPoly::taylor_shift(const Rational& shift) const {
  // Horner in the shifted variable: acc = acc * (x + shift) + c_i.
  UPoly acc;
  const UPoly linear(std::vector<Rational>{shift, Rational(1)});
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= linear;
    acc += UPoly(*it);
  }
  return acc;
}

UPoly UPoly::scale_argument(const Rational& factor) const {
  std::vector<Rational> c = coeffs_;
  Rational power = 1;
  for (auto& ci : c) {
    ci *= power;
    power *= factor;
  }
  return UPoly(std::move(c));
}

UPoly UPoly::compose(const UPoly& inner) const {
  UPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= inner;
    acc += UPoly(*it);
  }
  return acc;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorKind::Domain, "polynomial division by zero");
  if (degree() < divisor.degree()) return {UPoly(), *this};
  std::vector<Rational> rem = coeffs_;
  std::vector<Rational> quot(coeffs_.size() - divisor.coeffs_.size() + 1);
  const Rational& lead = divisor.coeffs_.back();
  const std::size_t dd = divisor.coeffs_.size() - 1;
  for (std::size_t k = quot.size(); k-- > 0;) {
    Rational factor = rem[k + dd] / lead;
    quot[k] = factor;
    if (factor == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= factor * divisor.coeffs_[j];
  }
  rem.resize(dd);
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly UPoly::truncate(std::size_t n) const {
  std::vector<Rational> c(coeffs_.begin(),
                          coeffs_.begin() + static_cast<long>(std::min(n, coeffs_.size())));
  return UPoly(std::move(c));
}

UPoly& UPoly::operator+=(const UPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const UPoly& other) {
  if (is_zero() || other.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

UPoly& UPoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string power;
    if (i == 1) power = var;
    if (i > 1) power = var + "^" + std::to_string(i);
    if (power.empty()) {
      out += padicint::to_string(mag);
    } else if (mag == 1) {
      out += power;
    } else {
      out += padicint::to_string(mag) + "*" + power;
    }
  }
  return out;
}

}  // namespace padicint
