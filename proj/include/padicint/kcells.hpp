#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padicint/aqring.hpp"
#include "padicint/padic.hpp"
#include "padicint/presburger.hpp"

namespace padicint {

/// {t : lower < ord(t - c) < upper, ord(t - c) = residue mod modulus,
///      ac_{ac_depth}(t - c) = ac_value}.
/// ac_value == 0 denotes the single point {c}.
struct KCell {
  Rational center;
  std::optional<long> lower;
  std::optional<long> upper;
  long modulus = 1;
  long residue = 0;
  int ac_depth = 1;
  long ac_value = 1;
  Prime prime{2};

  void validate() const;
  bool is_point() const { return ac_value == 0; }
  /// The valuation range of t - c as a Γ-cell.
  GammaCell valuation_cell() const { return {lower, upper, modulus, residue}; }
};

bool kcell_contains(const PAdicPoint& t, const KCell& cell);
bool kcell_contains(const Rational& t, const KCell& cell);

/// Haar measure with mu(Z_p) = 1. Throws InfiniteMeasure when the lower
/// bound is absent on a non-point cell.
AqElem kcell_measure(const KCell& cell);

/// Decides exactly whether two cells share a point.
bool kcells_disjoint(const KCell& c1, const KCell& c2);

/// Cells {-1 < ord t, ord t = k mod N, ac_M(t) = xi} for all k and unit xi;
/// together with {0} they partition Z_p.
std::vector<KCell> partition_unit_ball(int M, long N, const Prime& prime);

std::string to_string(const KCell& cell);

}  // namespace padicint
