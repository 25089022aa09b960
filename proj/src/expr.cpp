#include "padicint/expr.hpp"

#include <algorithm>
#include <tuple>

#include "padicint/error.hpp"

namespace padicint {

bool operator==(const Symbol& a, const Symbol& b) {
  return a.kind == b.kind && a.poly == b.poly && a.lin == b.lin && a.gamma == b.gamma;
}

bool operator<(const Symbol& a, const Symbol& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (auto c = a.poly <=> b.poly; c != 0) return c < 0;
  return std::tie(a.gamma, a.lin.a, a.lin.k, a.lin.n, a.lin.delta) <
         std::tie(b.gamma, b.lin.a, b.lin.k, b.lin.n, b.lin.delta);
}

namespace {

std::string gamma_name(int index) {
  if (index >= kFreshGammaBase) return "nu" + std::to_string(index - kFreshGammaBase);
  return "g" + std::to_string(index);
}

}  // namespace

std::string Symbol::to_string() const {
  if (kind == Kind::Ord) return "ord(" + poly.to_string() + ")";
  if (lin == PreparedLinear{1, 0, 1, 0}) return gamma_name(gamma);
  return "lin(" + std::to_string(lin.a) + "," + std::to_string(lin.k) + "," + std::to_string(lin.n) +
         "," + std::to_string(lin.delta) + ";" + gamma_name(gamma) + ")";
}

Affine Affine::of(const Symbol& s, long coeff) {
  Affine a;
  if (coeff != 0) a.coeffs[s] = coeff;
  return a;
}

Affine& Affine::operator+=(const Affine& other) {
  constant += other.constant;
  for (const auto& [s, c] : other.coeffs) {
    auto [it, inserted] = coeffs.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs.erase(it);
    }
  }
  return *this;
}

Affine& Affine::operator*=(long scalar) {
  constant *= scalar;
  if (scalar == 0) {
    coeffs.clear();
    return *this;
  }
  for (auto& [s, c] : coeffs) c *= scalar;
  return *this;
}

bool operator<(const Affine& a, const Affine& b) {
  if (a.constant != b.constant) return a.constant < b.constant;
  return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end(),
                                      [](const auto& x, const auto& y) {
                                        if (x.first < y.first) return true;
                                        if (y.first < x.first) return false;
                                        return x.second < y.second;
                                      });
}

std::string Affine::to_string() const {
  std::string out;
  for (const auto& [s, c] : coeffs) {
    const long mag = c < 0 ? -c : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += std::to_string(mag) + "*";
    out += s.to_string();
  }
  if (constant != 0 || out.empty()) {
    if (out.empty()) {
      out = std::to_string(constant);
    } else {
      out += constant < 0 ? " - " : " + ";
      out += std::to_string(constant < 0 ? -constant : constant);
    }
  }
  return out;
}

ConstructibleExpr::ConstructibleExpr(const AqElem& constant) {
  terms_.push_back(Term{constant, {}, {}});
  canonicalize();
}

ConstructibleExpr::ConstructibleExpr(std::vector<Term> terms) : terms_(std::move(terms)) { canonicalize(); }

ConstructibleExpr ConstructibleExpr::atom(const Symbol& s) {
  return ConstructibleExpr(std::vector<Term>{Term{AqElem(1), {}, {s}}});
}

ConstructibleExpr ConstructibleExpr::q_power(const Affine& exponent) {
  return ConstructibleExpr(std::vector<Term>{Term{AqElem(1), exponent, {}}});
}

namespace {

struct TermKeyLess {
  bool operator()(const std::pair<Affine, std::vector<Symbol>>& a,
                  const std::pair<Affine, std::vector<Symbol>>& b) const {
    if (a.first < b.first) return true;
    if (b.first < a.first) return false;
    return a.second < b.second;
  }
};

}  // namespace

void ConstructibleExpr::canonicalize() {
  std::map<std::pair<Affine, std::vector<Symbol>>, AqElem, TermKeyLess> merged;
  for (auto& t : terms_) {
    if (t.coeff.is_zero()) continue;
    if (t.exponent.constant != 0) {
      t.coeff *= AqElem::q_power(t.exponent.constant);
      t.exponent.constant = 0;
    }
    std::sort(t.factors.begin(), t.factors.end());
    auto key = std::make_pair(t.exponent, t.factors);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(std::move(key), t.coeff);
    } else {
      it->second += t.coeff;
    }
  }
  terms_.clear();
  for (auto& [key, coeff] : merged) {
    if (coeff.is_zero()) continue;
    terms_.push_back(Term{coeff, key.first, key.second});
  }
}

ConstructibleExpr& ConstructibleExpr::operator+=(const ConstructibleExpr& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

ConstructibleExpr& ConstructibleExpr::operator*=(const ConstructibleExpr& other) {
  std::vector<Term> out;
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      Term t{a.coeff * b.coeff, a.exponent + b.exponent, a.factors};
      t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
      out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
  canonicalize();
  return *this;
}

ConstructibleExpr operator-(const ConstructibleExpr& a) {
  ConstructibleExpr out = a;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

bool operator==(const ConstructibleExpr& a, const ConstructibleExpr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const Term& x = a.terms_[i];
    const Term& y = b.terms_[i];
    if (!(x.exponent == y.exponent) || x.factors != y.factors || !(x.coeff == y.coeff)) return false;
  }
  return true;
}

std::optional<Affine> ConstructibleExpr::as_affine() const {
  Affine out;
  for (const auto& t : terms_) {
    auto c = t.coeff.as_constant();
    if (!c || c->get_den() != 1 || !c->get_num().fits_slong_p()) return std::nullopt;
    if (!t.exponent.coeffs.empty() || t.exponent.constant != 0) return std::nullopt;
    if (t.factors.size() > 1) return std::nullopt;
    const long value = c->get_num().get_si();
    if (t.factors.empty()) {
      out.constant += value;
    } else {
      out += Affine::of(t.factors[0], value);
    }
  }
  return out;
}

namespace {

void collect_symbol(const Symbol& s, std::set<int>& k, std::set<int>& gamma) {
  if (s.kind == Symbol::Kind::Lin) {
    gamma.insert(s.gamma);
    return;
  }
  for (int v = 0; v < s.poly.num_vars(); ++v) {
    if (s.poly.involves(v)) k.insert(v + 1);
  }
}

void collect(const std::vector<Term>& terms, std::set<int>& k, std::set<int>& gamma) {
  for (const auto& t : terms) {
    for (const auto& [s, c] : t.exponent.coeffs) collect_symbol(s, k, gamma);
    for (const auto& s : t.factors) collect_symbol(s, k, gamma);
  }
}

}  // namespace

std::set<int> ConstructibleExpr::k_variables() const {
  std::set<int> k, gamma;
  collect(terms_, k, gamma);
  return k;
}

std::set<int> ConstructibleExpr::gamma_variables() const {
  std::set<int> k, gamma;
  collect(terms_, k, gamma);
  return gamma;
}

std::string ConstructibleExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    std::vector<std::string> parts;
    if (!t.exponent.coeffs.empty()) parts.push_back("q^(" + t.exponent.to_string() + ")");
    for (const auto& s : t.factors) parts.push_back(s.to_string());
    std::string coeff;
    bool negative = false;
    if (auto c = t.coeff.as_constant()) {
      negative = *c < 0;
      const Rational mag = abs(*c);
      if (mag != 1 || parts.empty()) coeff = padicint::to_string(mag);
    } else {
      coeff = "(" + t.coeff.to_string() + ")";
    }
    if (!coeff.empty()) parts.insert(parts.begin(), coeff);
    std::string body;
    for (const auto& part : parts) body += (body.empty() ? "" : "*") + part;
    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

std::vector<Term> multiply_by_affine(const std::vector<Term>& terms, const Affine& factor) {
  std::vector<Term> out;
  for (const auto& t : terms) {
    if (factor.constant != 0) {
      out.push_back(Term{t.coeff * AqElem(Rational(factor.constant)), t.exponent, t.factors});
    }
    for (const auto& [s, c] : factor.coeffs) {
      Term nt{t.coeff * AqElem(Rational(c)), t.exponent, t.factors};
      nt.factors.push_back(s);
      out.push_back(std::move(nt));
    }
  }
  return out;
}

ConstructibleExpr substitute(const ConstructibleExpr& f,
                             const std::function<std::optional<Affine>(const Symbol&)>& rewrite) {
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Affine exponent;
    exponent.constant = t.exponent.constant;
    for (const auto& [s, c] : t.exponent.coeffs) {
      if (auto r = rewrite(s)) {
        exponent += *r * c;
      } else {
        exponent += Affine::of(s, c);
      }
    }
    std::vector<Term> current{Term{t.coeff, exponent, {}}};
    for (const auto& s : t.factors) {
      if (auto r = rewrite(s)) {
        current = multiply_by_affine(current, *r);
      } else {
        for (auto& ct : current) ct.factors.push_back(s);
      }
    }
    out.insert(out.end(), current.begin(), current.end());
  }
  return ConstructibleExpr(std::move(out));
}

std::optional<long> eval_symbol(const Symbol& s, const Assignment& point, const Prime& prime) {
  if (s.kind == Symbol::Kind::Lin) {
    auto it = point.gamma.find(s.gamma);
    if (it == point.gamma.end()) {
      throw Error(ErrorKind::Domain, "no value assigned to " + gamma_name(s.gamma));
    }
    return prepared_eval(s.lin, it->second);
  }
  std::vector<Rational> coords(static_cast<std::size_t>(s.poly.num_vars()));
  for (int v = 0; v < s.poly.num_vars(); ++v) {
    if (!s.poly.involves(v)) continue;
    auto it = point.k.find(v + 1);
    if (it == point.k.end()) {
      throw Error(ErrorKind::Domain, "no value assigned to x" + std::to_string(v + 1));
    }
    coords[static_cast<std::size_t>(v)] = it->second;
  }
  const Rational value = s.poly.evaluate(coords);
  if (value == 0) return std::nullopt;
  return ord(value, prime).value();
}

Rational eval_constructible(const ConstructibleExpr& f, const Assignment& point, const Prime& prime) {
  Rational total = 0;
  const Rational q(prime.value());
  auto value_of = [&](const Symbol& s) {
    auto v = eval_symbol(s, point, prime);
    if (!v) throw Error(ErrorKind::UndefinedAtPoint, s.to_string() + " is ord(0) at this point");
    return *v;
  };
  for (const auto& t : f.terms()) {
    const Rational c = t.coeff.evaluate(q);
    if (c == 0) continue;
    long exponent = t.exponent.constant;
    for (const auto& [s, k] : t.exponent.coeffs) exponent += k * value_of(s);
    Rational term = c * rpow(q, exponent);
    for (const auto& s : t.factors) term *= Rational(value_of(s));
    total += term;
  }
  return total;
}

Affine normalize_ord(const Polynomial& g, const Prime& prime) {
  if (g.is_zero()) throw Error(ErrorKind::UndefinedAtPoint, "ord of the zero polynomial");
  Affine out;
  if (g.is_constant()) {
    out.constant = ord(g.constant_term(), prime).value();
    return out;
  }
  const auto mono = g.monomial_content();
  for (std::size_t i = 0; i < mono.size(); ++i) {
    if (mono[i] != 0) out += Affine::of(Symbol::ord(Polynomial::variable(static_cast<int>(i))), mono[i]);
  }
  Polynomial rest = g.divide_monomial(mono);
  const Rational content = rest.content();
  out.constant += ord(content, prime).value();
  rest *= Polynomial(Rational(1) / content);
  if (!rest.is_constant()) out += Affine::of(Symbol::ord(rest));
  return out;
}

}  // namespace padicint
