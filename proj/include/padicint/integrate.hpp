#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicint/aqring.hpp"
#include "padicint/expr.hpp"
#include "padicint/kcells.hpp"
#include "padicint/presburger.hpp"

namespace padicint {

enum class Sort { K, Gamma };

/// Bound of a Γ-region cell: absent, an integer, or a prepared linear form
/// in an earlier Γ-variable. A linear bound restricts that variable to the
/// form's congruence class; elsewhere the cell is empty.
struct GammaBound {
  enum class Kind { None, Constant, Linear };

  Kind kind = Kind::None;
  long value = 0;
  PreparedLinear form;
  int var = 0;

  static GammaBound none() { return {}; }
  static GammaBound constant(long v) { return {Kind::Constant, v, {}, 0}; }
  static GammaBound linear(PreparedLinear f, int gamma_var) { return {Kind::Linear, 0, f, gamma_var}; }
};

struct GammaRegionCell {
  GammaBound lower;
  GammaBound upper;
  long modulus = 1;
  long residue = 0;

  static GammaRegionCell from(const GammaCell& c);
  /// The cell for fixed values of earlier Γ-variables; nullopt when a linear
  /// bound is undefined there (the cell is then empty).
  std::optional<GammaCell> instantiate(const std::map<int, long>& gamma) const;
};

struct DomainVariable {
  Sort sort = Sort::K;
  int index = 1;  // x<index> or g<index>
  std::vector<GammaRegionCell> gamma_cells;
  bool unit_ball = false;  // K only: partition_unit_ball(1, 1) plus {0}
  std::vector<KCell> k_cells;
};

/// Ordered variable declarations; integration runs last-declared first.
struct Domain {
  Prime prime{2};
  std::vector<DomainVariable> variables;

  /// Throws Domain on overlapping regions, bounds referencing later or
  /// K-variables, duplicate declarations, or cells over another prime.
  void validate() const;
  std::vector<KCell> k_cells_of(const DomainVariable& v) const;

  /// Z_p^n in the variables x1..xn.
  static Domain unit_ball(const Prime& prime, int n);
};

AqElem integrate(const ConstructibleExpr& f, const Domain& domain);

/// |f| <= scale * (1 + w)^power * q^(exponent * w) on skipped residue
/// classes, where w is the valuation of the distance to the class lift.
struct GrowthBound {
  Rational scale = 1;
  long exponent = 0;
  int power = 0;
};

struct OracleOptions {
  int depth = 6;
  std::uint64_t budget = kDefaultBudget;
  GrowthBound growth;
  /// When > 0, skipped classes are re-enumerated once at depth + refine.
  int refine = 0;
};

struct OracleResult {
  Rational value;
  Rational tail_bound;
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;
};

/// Residue-enumeration estimate of the integral over a domain inside Z_p^n
/// (finite Γ-regions are summed exactly).
OracleResult brute_force_integrate(const ConstructibleExpr& f, const Domain& domain,
                                   const OracleOptions& options);

}  // namespace padicint
