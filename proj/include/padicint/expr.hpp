#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "padicint/aqring.hpp"
#include "padicint/padic.hpp"
#include "padicint/polynomial.hpp"
#include "padicint/presburger.hpp"

namespace padicint {

/// Γ-variable indices at or above this value are generated during
/// integration (valuation fibres of K-variables) and never user-visible.
inline constexpr int kFreshGammaBase = 1 << 20;

/// An integer-valued atom: ord(g) for a polynomial g in the K-variables
/// (x_i is polynomial variable i - 1), or a prepared linear form in a
/// Γ-variable (g_j is lin(1,0,1,0; g_j)).
struct Symbol {
  enum class Kind { Ord, Lin };

  Kind kind = Kind::Ord;
  Polynomial poly;
  PreparedLinear lin;
  int gamma = 0;

  static Symbol ord(Polynomial g) { return {Kind::Ord, std::move(g), {}, 0}; }
  static Symbol linear(PreparedLinear f, int gamma_var) { return {Kind::Lin, {}, f, gamma_var}; }
  static Symbol gamma_var(int gamma_var) { return linear({1, 0, 1, 0}, gamma_var); }

  friend bool operator==(const Symbol& a, const Symbol& b);
  friend bool operator<(const Symbol& a, const Symbol& b);

  std::string to_string() const;
};

/// constant + sum of integer multiples of atoms.
struct Affine {
  long constant = 0;
  std::map<Symbol, long> coeffs;

  static Affine of(const Symbol& s, long coeff = 1);
  bool is_constant() const { return coeffs.empty(); }

  Affine& operator+=(const Affine& other);
  Affine& operator*=(long scalar);
  friend Affine operator+(Affine a, const Affine& b) { return a += b; }
  friend Affine operator*(Affine a, long s) { return a *= s; }
  friend bool operator==(const Affine& a, const Affine& b) {
    return a.constant == b.constant && a.coeffs == b.coeffs;
  }
  friend bool operator<(const Affine& a, const Affine& b);

  std::string to_string() const;
};

/// coeff * q^exponent * product of factors.
struct Term {
  AqElem coeff;
  Affine exponent;
  std::vector<Symbol> factors;
};

/// A constructible function: a finite sum of terms. Canonical form merges
/// terms with equal exponent and factor multiset, folds constant exponents
/// into the coefficient and drops zero terms.
class ConstructibleExpr {
 public:
  ConstructibleExpr() = default;
  ConstructibleExpr(const AqElem& constant);  // NOLINT(google-explicit-constructor)
  explicit ConstructibleExpr(std::vector<Term> terms);

  static ConstructibleExpr atom(const Symbol& s);
  static ConstructibleExpr q_power(const Affine& exponent);

  const std::vector<Term>& terms() const { return terms_; }

  ConstructibleExpr& operator+=(const ConstructibleExpr& other);
  ConstructibleExpr& operator*=(const ConstructibleExpr& other);
  friend ConstructibleExpr operator+(ConstructibleExpr a, const ConstructibleExpr& b) { return a += b; }
  friend ConstructibleExpr operator*(ConstructibleExpr a, const ConstructibleExpr& b) { return a *= b; }
  friend ConstructibleExpr operator-(const ConstructibleExpr& a);

  /// The expression as an affine form, when it is one (integer coefficients,
  /// no q-powers, at most one factor per term).
  std::optional<Affine> as_affine() const;

  /// K-variable (1-based) and Γ-variable indices that occur.
  std::set<int> k_variables() const;
  std::set<int> gamma_variables() const;

  std::string to_string() const;

  friend bool operator==(const ConstructibleExpr& a, const ConstructibleExpr& b);

 private:
  void canonicalize();

  std::vector<Term> terms_;
};

/// Replaces atoms for which `rewrite` returns an affine form, distributing
/// products; returns the canonicalized result.
ConstructibleExpr substitute(const ConstructibleExpr& f,
                             const std::function<std::optional<Affine>(const Symbol&)>& rewrite);

/// Multiplies every term by the given affine factor.
std::vector<Term> multiply_by_affine(const std::vector<Term>& terms, const Affine& factor);

/// Values for K-variables (1-based index -> rational) and Γ-variables.
struct Assignment {
  std::map<int, Rational> k;
  std::map<int, long> gamma;
};

/// Exact value with q = p. Throws UndefinedAtPoint when ord(0) occurs in a
/// term with nonzero coefficient and DomainError for lin off its class.
Rational eval_constructible(const ConstructibleExpr& f, const Assignment& point, const Prime& prime);

/// Value of a single atom; nullopt for ord(0).
std::optional<long> eval_symbol(const Symbol& s, const Assignment& point, const Prime& prime);

/// ord of a polynomial rewritten as an affine form in normalized atoms:
/// monomial factors become sums of ord(x_i), the content becomes a constant.
Affine normalize_ord(const Polynomial& g, const Prime& prime);

}  // namespace padicint
