#include "padicint/kcells.hpp"

#include <numeric>

#include "padicint/error.hpp"

namespace padicint {

void KCell::validate() const {
  if (modulus < 1) throw Error(ErrorKind::Domain, "K-cell modulus must be >= 1");
  if (residue < 0 || residue >= modulus) {
    throw Error(ErrorKind::Domain, "K-cell residue must lie in [0, modulus)");
  }
  if (ac_depth < 1) throw Error(ErrorKind::Domain, "K-cell angular depth must be >= 1");
  const Integer bound = prime.pow(static_cast<unsigned long>(ac_depth));
  if (ac_value < 0 || Integer(ac_value) >= bound) {
    throw Error(ErrorKind::Domain, "angular value must lie in [0, p^M)");
  }
  if (ac_value != 0 && ac_value % prime.value() == 0) {
    throw Error(ErrorKind::Domain, "angular value must be 0 or a unit mod p");
  }
}

bool kcell_contains(const Rational& t, const KCell& cell) {
  cell.validate();
  const Rational diff = t - cell.center;
  if (cell.is_point()) return diff == 0;
  if (diff == 0) return false;
  const long v = ord(diff, cell.prime).value();
  if (!cell.valuation_cell().contains(v)) return false;
  return ac(diff, cell.prime, cell.ac_depth).residue == cell.ac_value;
}

bool kcell_contains(const PAdicPoint& t, const KCell& cell) {
  if (!(t.prime() == cell.prime)) {
    throw Error(ErrorKind::Domain, "point and cell live over different primes");
  }
  return kcell_contains(t.value(), cell);
}

AqElem kcell_measure(const KCell& cell) {
  cell.validate();
  if (cell.is_point()) return {};
  if (!cell.lower) {
    throw Error(ErrorKind::InfiniteMeasure, "K-cell without lower valuation bound: " + to_string(cell));
  }
  // mu(xi p^(k + tau N) (1 + p^M Z_p)) = q^-(k + tau N + M)
  return AqElem::q_power(-(cell.residue + cell.ac_depth)) *
         geom_sum(cell.valuation_cell(), cell.modulus);
}

namespace {

bool congruent(const Integer& a, const Integer& b, const Integer& modulus) {
  Integer diff = (a - b) % modulus;
  return diff == 0;
}

// Does some valuation of the Γ-cell lie in (lo, hi) (absent = unbounded)?
bool meets(const GammaCell& vals, std::optional<long> lo, std::optional<long> hi) {
  GammaCell window{lo, hi, 1, 0};
  auto both = intersect(vals, window);
  return both && !both->is_empty();
}

// A point t with ord(t - a) = ord(t - b) = v <= d = ord(a - b), where the
// angular constraints are (xa, Ma) around a and (xb, Mb) around b.
bool equal_valuation_compatible(const KCell& a, const KCell& b, long v) {
  const Prime& p = a.prime;
  const int m = std::min(a.ac_depth, b.ac_depth);
  const Integer mod = p.pow(static_cast<unsigned long>(m));
  // t - b = (t - a) + (a - b); dividing by p^v the perturbation is e.
  const Rational e = (a.center - b.center) * rpow(Rational(p.value()), -v);
  const Integer e_mod = reduce_mod_power(e, p, m);
  return congruent(Integer(a.ac_value) + e_mod, Integer(b.ac_value), mod);
}

// A point with ord(t - a) = d < ord(t - b) = d + s.
bool offset_valuation_compatible(const KCell& a, const KCell& b, long s) {
  const Prime& p = a.prime;
  const Integer mod_a = p.pow(static_cast<unsigned long>(a.ac_depth));
  const Integer w(ac(b.center - a.center, p, a.ac_depth).residue);
  Integer r = (Integer(a.ac_value) - w) % mod_a;
  if (r < 0) r += mod_a;
  if (s >= a.ac_depth) return r == 0;
  const Integer ps = p.pow(static_cast<unsigned long>(s));
  if (r % ps != 0) return false;
  const long precision = std::min<long>(a.ac_depth - s, b.ac_depth);
  const Integer mod = p.pow(static_cast<unsigned long>(precision));
  return congruent(r / ps, Integer(b.ac_value), mod);
}

bool offset_case_overlaps(const KCell& a, const KCell& b, long d) {
  // ord(t - a) = d, ord(t - b) = d + s with s >= 1.
  if (!a.valuation_cell().contains(d)) return false;
  const GammaCell vb = b.valuation_cell();
  for (long s = 1; s < a.ac_depth; ++s) {
    if (vb.contains(d + s) && offset_valuation_compatible(a, b, s)) return true;
  }
  return meets(vb, d + a.ac_depth - 1, std::nullopt) &&
         offset_valuation_compatible(a, b, a.ac_depth);
}

}  // namespace

bool kcells_disjoint(const KCell& c1, const KCell& c2) {
  c1.validate();
  c2.validate();
  if (!(c1.prime == c2.prime)) throw Error(ErrorKind::Domain, "cells over different primes");
  if (c1.is_point()) return !kcell_contains(c1.center, c2);
  if (c2.is_point()) return !kcell_contains(c2.center, c1);

  const GammaCell v1 = c1.valuation_cell();
  const GammaCell v2 = c2.valuation_cell();
  const int m = std::min(c1.ac_depth, c2.ac_depth);
  const Integer mod = c1.prime.pow(static_cast<unsigned long>(m));

  if (c1.center == c2.center) {
    if (cells_disjoint(v1, v2)) return true;
    return !congruent(Integer(c1.ac_value), Integer(c2.ac_value), mod);
  }

  // With d = ord(c1 - c2), the minimum of {ord(t - c1), ord(t - c2), d} is
  // attained at least twice.
  const long d = ord(c1.center - c2.center, c1.prime).value();
  auto common = intersect(v1, v2);
  if (common && !common->is_empty()) {
    // v1 = v2 = v <= d - m: perturbation invisible at depth m.
    if (meets(*common, std::nullopt, d - m + 1) &&
        congruent(Integer(c1.ac_value), Integer(c2.ac_value), mod)) {
      return false;
    }
    for (long v = d - m + 1; v <= d; ++v) {
      if (common->contains(v) && equal_valuation_compatible(c1, c2, v)) return false;
    }
  }
  if (offset_case_overlaps(c1, c2, d)) return false;
  if (offset_case_overlaps(c2, c1, d)) return false;
  return true;
}

std::vector<KCell> partition_unit_ball(int M, long N, const Prime& prime) {
  if (M < 1 || N < 1) throw Error(ErrorKind::Domain, "partition_unit_ball needs M, N >= 1");
  const long modulus = to_long(prime.pow(static_cast<unsigned long>(M)));
  std::vector<KCell> out;
  for (long k = 0; k < N; ++k) {
    for (long xi = 1; xi < modulus; ++xi) {
      if (xi % prime.value() == 0) continue;
      out.push_back(KCell{Rational(0), -1, std::nullopt, N, k, M, xi, prime});
    }
  }
  return out;
}

std::string to_string(const KCell& cell) {
  if (cell.is_point()) return "{" + to_string(cell.center) + "}";
  std::string t = "ord(t - " + to_string(cell.center) + ")";
  std::string out = "{";
  if (cell.lower) out += std::to_string(*cell.lower) + " < ";
  out += t;
  if (cell.upper) out += " < " + std::to_string(*cell.upper);
  out += ", " + t + " ≡ " + std::to_string(cell.residue) + " mod " + std::to_string(cell.modulus);
  out += ", ac_" + std::to_string(cell.ac_depth) + " = " + std::to_string(cell.ac_value) + "}";
  return out;
}

}  // namespace padicint
