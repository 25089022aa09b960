#include "padicint/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "padicint/error.hpp"

namespace padicint {

namespace {

void trim(Polynomial::Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

int total(const Polynomial::Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_[{}] = constant;
}

Polynomial Polynomial::variable(int index) {
  Polynomial p;
  Exponents e(static_cast<std::size_t>(index) + 1, 0);
  e.back() = 1;
  p.terms_[e] = 1;
  return p;
}

void Polynomial::add_term(Exponents exponents, const Rational& coeff) {
  if (coeff == 0) return;
  trim(exponents);
  auto [it, inserted] = terms_.try_emplace(std::move(exponents), coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::num_vars() const {
  std::size_t n = 0;
  for (const auto& [e, c] : terms_) n = std::max(n, e.size());
  return static_cast<int>(n);
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::involves(int var) const { return degree_in(var) > 0; }

int Polynomial::degree_in(int var) const {
  int d = 0;
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (v < e.size()) d = std::max(d, e[v]);
  }
  return d;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total(e));
  return d;
}

bool Polynomial::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.get_den() == 1; });
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) < num_vars()) {
    throw Error(ErrorKind::Domain, "polynomial evaluated at a point of too few coordinates");
  }
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term *= rpow(point[i], e[i]);
    }
    acc += term;
  }
  return acc;
}

Polynomial Polynomial::substitute_shift(int var, const Rational& shift) const {
  if (shift == 0 || !involves(var)) return *this;
  const auto v = static_cast<std::size_t>(var);
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    const int d = v < e.size() ? e[v] : 0;
    // (x + s)^d = sum_j binom(d, j) x^j s^(d - j)
    Integer binom = 1;
    for (int j = 0; j <= d; ++j) {
      Exponents ne = e;
      if (ne.size() <= v) ne.resize(v + 1, 0);
      ne[v] = j;
      out.add_term(ne, c * Rational(binom) * rpow(shift, d - j));
      binom = binom * (d - j) / (j + 1);
    }
  }
  return out;
}

std::optional<std::pair<int, Polynomial>> Polynomial::split_power(int var) const {
  if (terms_.empty()) return std::nullopt;
  const auto v = static_cast<std::size_t>(var);
  std::optional<int> power;
  Polynomial rest;
  for (const auto& [e, c] : terms_) {
    const int d = v < e.size() ? e[v] : 0;
    if (power && *power != d) return std::nullopt;
    power = d;
    Exponents ne = e;
    if (v < ne.size()) ne[v] = 0;
    rest.add_term(ne, c);
  }
  return std::make_pair(*power, rest);
}

Polynomial::Exponents Polynomial::monomial_content() const {
  Exponents out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      out = e;
      first = false;
      continue;
    }
    out.resize(std::min(out.size(), e.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], e[i]);
  }
  trim(out);
  return out;
}

Polynomial Polynomial::divide_monomial(const Exponents& exponents) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (i >= ne.size() || ne[i] < exponents[i]) {
        throw Error(ErrorKind::Domain, "monomial does not divide polynomial");
      }
      ne[i] -= exponents[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

Rational Polynomial::content() const {
  if (terms_.empty()) return 0;
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational out(num_gcd, den_lcm);
  out.canonicalize();
  // leading term in graded order decides the sign
  const auto lead = std::max_element(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) {
    const int ta = total(a.first), tb = total(b.first);
    return ta != tb ? ta < tb : a.first < b.first;
  });
  if (lead->second < 0) out = -out;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  Polynomial out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : other.terms_) {
      Exponents e(std::max(e1.size(), e2.size()), 0);
      for (std::size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
      for (std::size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
      out.add_term(std::move(e), c1 * c2);
    }
  }
  *this = std::move(out);
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial out(Rational(1));
  for (unsigned i = 0; i < exponent; ++i) out *= *this;
  return out;
}

std::strong_ordering operator<=>(const Polynomial& a, const Polynomial& b) {
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    const int cmp_value = cmp(ia->second, ib->second);
    if (cmp_value != 0) return cmp_value < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (ia != a.terms_.end()) return std::strong_ordering::greater;
  if (ib != b.terms_.end()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, Rational>> sorted(terms_.begin(), terms_.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    const int ta = total(a.first), tb = total(b.first);
    return ta != tb ? ta > tb : a.first > b.first;
  });
  std::string out;
  for (const auto& [e, c] : sorted) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    const Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mono.empty()) {
      out += padicint::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += padicint::to_string(mag) + "*" + mono;
    }
  }
  return out;
}

}  // namespace padicint
