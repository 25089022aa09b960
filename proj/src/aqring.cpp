#include "padicint/aqring.hpp"

#include <algorithm>
#include <vector>

namespace padicint {

Laurent Laurent::monomial(const Rational& coeff, long exponent) {
  Laurent out{exponent, UPoly(coeff)};
  out.normalize();
  return out;
}

void Laurent::normalize() {
  if (poly.is_zero()) {
    shift = 0;
    return;
  }
  const auto& c = poly.coeffs();
  std::size_t zeros = 0;
  while (c[zeros] == 0) ++zeros;
  if (zeros == 0) return;
  poly = UPoly(std::vector<Rational>(c.begin() + static_cast<long>(zeros), c.end()));
  shift += static_cast<long>(zeros);
}

Rational Laurent::coeff(long exponent) const {
  if (exponent < shift) return 0;
  return poly.coeff(static_cast<std::size_t>(exponent - shift));
}

Rational Laurent::evaluate(const Rational& q) const {
  if (is_zero()) return 0;
  return poly(q) * rpow(q, shift);
}

Laurent operator+(const Laurent& a, const Laurent& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const long base = std::min(a.shift, b.shift);
  Laurent out;
  out.shift = base;
  out.poly = a.poly * UPoly::monomial(Rational(1), static_cast<std::size_t>(a.shift - base)) +
             b.poly * UPoly::monomial(Rational(1), static_cast<std::size_t>(b.shift - base));
  out.normalize();
  return out;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent out{a.shift + b.shift, a.poly * b.poly};
  out.normalize();
  return out;
}

namespace {

std::string render_power(long exponent) {
  if (exponent == 1) return "q";
  return "q^" + std::to_string(exponent);
}

Laurent one_minus_q_inverse(int i) {
  return Laurent::monomial(Rational(1), 0) + Laurent::monomial(Rational(-1), -i);
}

// (q^i - 1) / (q^j - 1) for j | i.
UPoly cyclotomic_quotient(int i, int j) {
  UPoly out;
  for (int k = 0; k < i; k += j) out += UPoly::monomial(Rational(1), static_cast<std::size_t>(k));
  return out;
}

bool try_divide(Laurent& num, const UPoly& divisor) {
  auto [quotient, remainder] = num.poly.divmod(divisor);
  if (!remainder.is_zero()) return false;
  num.poly = std::move(quotient);
  return true;
}

}  // namespace

std::string Laurent::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (long e = max_exponent(); e >= min_exponent(); --e) {
    Rational c = coeff(e);
    if (c == 0) continue;
    Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (e == 0) {
      out += padicint::to_string(mag);
    } else if (mag == 1) {
      out += render_power(e);
    } else {
      out += padicint::to_string(mag) + "*" + render_power(e);
    }
  }
  return out;
}

AqElem::AqElem(const Rational& constant) : numerator_(Laurent::monomial(constant, 0)) {}

AqElem::AqElem(Laurent numerator, std::map<int, int> denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  canonicalize();
}

AqElem AqElem::q_power(long exponent) {
  return AqElem(Laurent::monomial(Rational(1), exponent), {});
}

AqElem AqElem::inverse_factor(int i, int e) {
  return AqElem(Laurent::monomial(Rational(1), 0), {{i, e}});
}

Laurent AqElem::denominator_laurent() const {
  Laurent out = Laurent::monomial(Rational(1), 0);
  for (const auto& [i, e] : denominator_) {
    const Laurent factor = one_minus_q_inverse(i);
    for (int k = 0; k < e; ++k) out = out * factor;
  }
  return out;
}

void AqElem::canonicalize() {
  numerator_.normalize();
  std::erase_if(denominator_, [](const auto& entry) { return entry.second <= 0; });
  if (numerator_.is_zero()) {
    denominator_.clear();
    return;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    // (1 - q^-i) = q^-i (q^i - 1): cancel whole factors first.
    for (auto& [i, e] : denominator_) {
      const UPoly factor = UPoly::monomial(Rational(1), static_cast<std::size_t>(i)) - UPoly(Rational(1));
      while (e > 0 && try_divide(numerator_, factor)) {
        numerator_.shift += i;
        --e;
        changed = true;
      }
    }
    std::erase_if(denominator_, [](const auto& entry) { return entry.second <= 0; });
    // (1 - q^-i) = q^-(i-j) (1 - q^-j) * (q^i - 1)/(q^j - 1): trade i for a divisor j.
    bool traded = false;
    for (auto& [i, e] : denominator_) {
      for (int j = i / 2; j >= 1 && !traded; --j) {
        if (i % j != 0) continue;
        if (try_divide(numerator_, cyclotomic_quotient(i, j))) {
          numerator_.shift += i - j;
          --denominator_[i];
          ++denominator_[j];
          traded = true;
        }
      }
      if (traded) break;
    }
    if (traded) {
      changed = true;
      std::erase_if(denominator_, [](const auto& entry) { return entry.second <= 0; });
    }
    numerator_.normalize();
  }
}

std::optional<Rational> AqElem::as_constant() const {
  if (is_zero()) return Rational(0);
  if (!denominator_.empty() || numerator_.shift != 0 || numerator_.poly.degree() != 0) return std::nullopt;
  return numerator_.poly.coeff(0);
}

Rational AqElem::evaluate(const Rational& q) const {
  Rational den = 1;
  for (const auto& [i, e] : denominator_) {
    const Rational factor = 1 - rpow(q, -i);
    for (int k = 0; k < e; ++k) den *= factor;
  }
  return numerator_.evaluate(q) / den;
}

AqElem& AqElem::operator+=(const AqElem& other) {
  std::map<int, int> common = denominator_;
  for (const auto& [i, e] : other.denominator_) common[i] = std::max(common[i], e);
  auto lift = [&common](const AqElem& x) {
    Laurent out = x.numerator_;
    for (const auto& [i, e] : common) {
      auto it = x.denominator_.find(i);
      const int have = it == x.denominator_.end() ? 0 : it->second;
      const Laurent factor = one_minus_q_inverse(i);
      for (int k = have; k < e; ++k) out = out * factor;
    }
    return out;
  };
  numerator_ = lift(*this) + lift(other);
  denominator_ = std::move(common);
  canonicalize();
  return *this;
}

AqElem& AqElem::operator-=(const AqElem& other) { return *this += -other; }

AqElem& AqElem::operator*=(const AqElem& other) {
  numerator_ = numerator_ * other.numerator_;
  for (const auto& [i, e] : other.denominator_) denominator_[i] += e;
  canonicalize();
  return *this;
}

AqElem operator-(const AqElem& a) {
  AqElem out = a;
  out.numerator_.poly *= Rational(-1);
  return out;
}

bool operator==(const AqElem& a, const AqElem& b) {
  return a.numerator_ * b.denominator_laurent() == b.numerator_ * a.denominator_laurent();
}

std::string AqElem::to_string() const {
  if (denominator_.empty()) return numerator_.to_string();
  std::string den;
  for (const auto& [i, e] : denominator_) {
    if (!den.empty()) den += "*";
    den += "(1-q^-" + std::to_string(i) + ")";
    if (e > 1) den += "^" + std::to_string(e);
  }
  std::string num = numerator_.to_string();
  const bool single_term = num.find(" + ") == std::string::npos && num.find(" - ") == std::string::npos;
  if (!single_term) num = "(" + num + ")";
  return num + "/" + (denominator_.size() == 1 ? den : "(" + den + ")");
}

}  // namespace padicint
