#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicint/padic.hpp"
#include "padicint/polynomial.hpp"
#include "padicint/upoly.hpp"

namespace padicint {

/// N_0, ..., N_mmax for f over Z/p^m.
struct SeriesTable {
  Prime prime{2};
  Polynomial f;
  int n = 1;
  std::vector<Integer> counts;
};

/// One factor (1 - p^-m T^N) of a certified denominator.
struct ShapeFactor {
  long m = 0;
  long N = 1;

  friend bool operator==(const ShapeFactor&, const ShapeFactor&) = default;
};

/// numerator(T) / denominator(T) with denominator(0) = 1. When `generic` is
/// false the denominator equals the product of `shape`.
struct RationalFunctionT {
  UPoly numerator;
  UPoly denominator;
  std::vector<ShapeFactor> shape;
  bool generic = true;

  /// First `terms` Taylor coefficients.
  std::vector<Rational> expand(std::size_t terms) const;
  bool has_negative_exponent() const;
  std::string to_string() const;
  std::string shape_string(const Prime& prime) const;

  friend bool operator==(const RationalFunctionT&, const RationalFunctionT&) = default;
};

/// Number of variables of f as an enumeration dimension (at least 1).
int arity(const Polynomial& f);

/// N_m by lifting solutions one digit at a time. `threads` shards each level;
/// the result does not depend on it.
Integer count_Nm(const Polynomial& f, const Prime& prime, int m, std::uint64_t budget = kDefaultBudget,
                 unsigned threads = 1);

/// N_0..N_mmax in a single lifting pass.
std::vector<Integer> count_series(const Polynomial& f, const Prime& prime, int mmax,
                                  std::uint64_t budget = kDefaultBudget, unsigned threads = 1);

/// N_m by enumerating all of (Z/p^m)^n.
Integer count_Nm_naive(const Polynomial& f, const Prime& prime, int m, std::uint64_t budget = kDefaultBudget);

SeriesTable make_table(const Polynomial& f, const Prime& prime, int mmax, std::uint64_t budget = kDefaultBudget,
                       unsigned threads = 1);

/// Minimal recurrence fitted on all but the last `guard` entries and verified
/// on every entry; nullopt when no verified fit exists.
std::optional<RationalFunctionT> fit_rational(const SeriesTable& table, int guard = 5);

/// Factors a denominator with constant term 1 into (1 - p^-m T^N) with
/// |m| <= n N.
std::optional<std::vector<ShapeFactor>> certify_shape(const UPoly& denominator, const Prime& prime, int n);

struct IdentityCheck {
  int m = 0;
  Integer count;
  /// mu{ord f >= m} from residues at depth m + 1.
  Rational counted_measure;
  /// mu{ord f >= m} from the integration engine, for univariate monomials.
  std::optional<Rational> symbolic_measure;
  bool ok = false;
};

IdentityCheck measure_identity_check(const Polynomial& f, const Prime& prime, int m,
                                     std::uint64_t budget = kDefaultBudget);

struct PoincareReport {
  SeriesTable table;
  int guard = 5;
  std::optional<RationalFunctionT> rational;
  std::vector<IdentityCheck> checks;
  /// Fit on the table without its last two entries, if that still fits.
  std::optional<bool> stable;

  bool all_checks_pass() const;
  std::string to_string() const;
};

PoincareReport poincare_report(const Polynomial& f, const Prime& prime, int mmax, int guard = 5,
                               std::uint64_t budget = kDefaultBudget, unsigned threads = 1);

/// Largest m with p^(n m) within budget.
int max_depth(const Prime& prime, int n, std::uint64_t budget);

}  // namespace padicint
