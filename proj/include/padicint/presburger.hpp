#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padicint/aqring.hpp"
#include "padicint/padic.hpp"
#include "padicint/upoly.hpp"

namespace padicint {

/// {gamma in Z : lower < gamma < upper, gamma = residue mod modulus}; an
/// absent bound imposes no constraint.
struct GammaCell {
  std::optional<long> lower;
  std::optional<long> upper;
  long modulus = 1;
  long residue = 0;

  /// Throws Domain unless modulus >= 1 and 0 <= residue < modulus.
  void validate() const;
  bool contains(long gamma) const;

  /// Index range of tau with gamma = residue + modulus * tau inside the cell.
  std::optional<long> first_index() const;
  std::optional<long> last_index() const;
  bool is_empty() const;

  friend bool operator==(const GammaCell&, const GammaCell&) = default;
};

/// Finite union of pairwise disjoint Γ-cells.
struct GammaCellUnion {
  std::vector<GammaCell> cells;

  /// Validates every cell and pairwise disjointness; throws Domain otherwise.
  void validate() const;
  bool contains(long gamma) const;
};

/// a * (gamma - k) / n + delta on gamma = k mod n.
struct PreparedLinear {
  long a = 0;
  long k = 0;
  long n = 1;
  long delta = 0;

  void validate() const;
  bool defined_at(long gamma) const { return mod_floor(gamma - k, n) == 0; }

  friend bool operator==(const PreparedLinear&, const PreparedLinear&) = default;
};

long prepared_eval(const PreparedLinear& f, long gamma);

ExtendedInteger cell_cardinality(const GammaCell& cell);

/// Sum over gamma in the cell of (q^-N)^((gamma - k)/n), N >= 1.
AqElem geom_sum(const GammaCell& cell, long N);

/// Sum over tau in the reindexed cell of poly(tau) (q^-N)^tau, N >= 0.
AqElem weighted_sum(const GammaCell& cell, const UPoly& poly, long N);

/// Sum of poly(tau) q^(-N tau) over lo <= tau <= hi for any integer N; an
/// absent bound means unbounded in that direction. Throws DivergentSum when
/// the series does not converge.
AqElem index_power_sum(std::optional<long> lo, std::optional<long> hi, const UPoly& poly, long N);

/// Coefficients c_r (in A_q) with sum_{tau >= s} poly(tau) q^(-N tau)
///   = q^(-N s) * sum_r c_r s^r, valid for every integer s. Requires N >= 1.
std::vector<AqElem> tail_sum_coefficients(const UPoly& poly, long N);

/// The polynomial G with G(s + 1) - G(s) = poly(s) and G(0) = 0.
UPoly prefix_sum_polynomial(const UPoly& poly);

/// x precedes y in 0, 1, -1, 2, -2, 3, -3, ...
bool wellorder_less(long x, long y);

/// The ◁-least member of a nonempty union; throws EmptySet.
long wellorder_min(const GammaCellUnion& u);

/// Lexicographic ◁-minimum over a finite union of product cells
/// (each entry is one Γ-cell per coordinate). Throws EmptySet.
std::vector<long> wellorder_min_lex(const std::vector<std::vector<GammaCell>>& product_cells);

/// Exact intersection; nullopt when the congruences are incompatible.
std::optional<GammaCell> intersect(const GammaCell& c1, const GammaCell& c2);

bool cells_disjoint(const GammaCell& c1, const GammaCell& c2);

std::string to_string(const GammaCell& cell);

}  // namespace padicint
