#include "padicint/presburger.hpp"

#include <algorithm>
#include <numeric>

#include "padicint/error.hpp"

namespace padicint {

void GammaCell::validate() const {
  if (modulus < 1) throw Error(ErrorKind::Domain, "Γ-cell modulus must be >= 1");
  if (residue < 0 || residue >= modulus) {
    throw Error(ErrorKind::Domain, "Γ-cell residue must lie in [0, modulus)");
  }
}

bool GammaCell::contains(long gamma) const {
  if (lower && !(*lower < gamma)) return false;
  if (upper && !(gamma < *upper)) return false;
  return mod_floor(gamma - residue, modulus) == 0;
}

std::optional<long> GammaCell::first_index() const {
  if (!lower) return std::nullopt;
  return floor_div(*lower - residue, modulus) + 1;
}

std::optional<long> GammaCell::last_index() const {
  if (!upper) return std::nullopt;
  return ceil_div(*upper - residue, modulus) - 1;
}

bool GammaCell::is_empty() const {
  auto lo = first_index();
  auto hi = last_index();
  return lo && hi && *lo > *hi;
}

void GammaCellUnion::validate() const {
  for (const auto& c : cells) c.validate();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (!cells_disjoint(cells[i], cells[j])) {
        throw Error(ErrorKind::Domain, "Γ-cells " + to_string(cells[i]) + " and " +
                                           to_string(cells[j]) + " overlap");
      }
    }
  }
}

bool GammaCellUnion::contains(long gamma) const {
  return std::any_of(cells.begin(), cells.end(),
                     [gamma](const GammaCell& c) { return c.contains(gamma); });
}

void PreparedLinear::validate() const {
  if (n < 1) throw Error(ErrorKind::Domain, "prepared linear form needs n >= 1");
  if (k < 0) throw Error(ErrorKind::Domain, "prepared linear form needs k >= 0");
}

long prepared_eval(const PreparedLinear& f, long gamma) {
  f.validate();
  if (!f.defined_at(gamma)) {
    throw Error(ErrorKind::DomainError, std::to_string(gamma) + " is not congruent to " +
                                            std::to_string(f.k) + " mod " + std::to_string(f.n));
  }
  return f.a * ((gamma - f.k) / f.n) + f.delta;
}

ExtendedInteger cell_cardinality(const GammaCell& cell) {
  cell.validate();
  auto lo = cell.first_index();
  auto hi = cell.last_index();
  if (lo && hi) return std::max(0L, *hi - *lo + 1);
  return ExtendedInteger::infinity();
}

UPoly prefix_sum_polynomial(const UPoly& poly) {
  // Newton form: G(s) = sum_k Δ^k G(0) * binom(s, k) with Δ^k G(0) = Δ^(k-1) poly(0).
  const long d = poly.degree();
  if (d < 0) return {};
  std::vector<Rational> diffs;
  for (long t = 0; t <= d; ++t) diffs.push_back(poly(Rational(t)));
  UPoly result;
  UPoly binom(Rational(1));  // binom(s, 0)
  for (long k = 1; k <= d + 1; ++k) {
    // binom(s, k) = binom(s, k-1) * (s - k + 1) / k
    binom *= UPoly(std::vector<Rational>{Rational(-(k - 1)), Rational(1)});
    binom *= Rational(1, k);
    result += binom * diffs[0];
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) diffs[i] = diffs[i + 1] - diffs[i];
    diffs.pop_back();
    if (diffs.empty()) break;
  }
  return result;
}

namespace {

// Numerators P_i with sum_{j >= 0} j^i x^j = P_i(x) / (1 - x)^(i + 1).
std::vector<UPoly> eulerian_numerators(std::size_t count) {
  std::vector<UPoly> out;
  UPoly current(Rational(1));
  const UPoly one_minus_x(std::vector<Rational>{Rational(1), Rational(-1)});
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(current);
    current = UPoly::x() * (current.derivative() * one_minus_x + current * Rational(static_cast<long>(i + 1)));
  }
  return out;
}

// P(x) with x = q^-N as a Laurent polynomial in q.
Laurent substitute_q_power(const UPoly& p, long N) {
  Laurent out;
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    if (p.coeffs()[k] == 0) continue;
    out = out + Laurent::monomial(p.coeffs()[k], -N * static_cast<long>(k));
  }
  return out;
}

AqElem evaluate_tail(const std::vector<AqElem>& coeffs, long s, long N) {
  AqElem acc;
  for (std::size_t r = coeffs.size(); r-- > 0;) {
    acc = acc * AqElem(Rational(s)) + coeffs[r];
  }
  return acc * AqElem::q_power(-N * s);
}

}  // namespace

std::vector<AqElem> tail_sum_coefficients(const UPoly& poly, long N) {
  if (N < 1) throw Error(ErrorKind::Domain, "tail sums need N >= 1");
  if (poly.is_zero()) return {};
  const auto d = static_cast<std::size_t>(poly.degree());
  const auto numerators = eulerian_numerators(d + 1);
  std::vector<AqElem> coeffs(d + 1);
  // sum_{tau >= s} poly(tau) x^tau = x^s sum_i S_i(x) * poly^(i)(s) / i!
  UPoly taylor = poly;
  Rational factorial = 1;
  for (std::size_t i = 0; i <= d; ++i) {
    if (i > 0) {
      taylor = taylor.derivative();
      factorial *= Rational(static_cast<long>(i));
    }
    const AqElem series(substitute_q_power(numerators[i], N),
                        {{static_cast<int>(N), static_cast<int>(i + 1)}});
    for (std::size_t r = 0; r < taylor.coeffs().size(); ++r) {
      if (taylor.coeffs()[r] == 0) continue;
      coeffs[r] += series * AqElem(taylor.coeffs()[r] / factorial);
    }
  }
  return coeffs;
}

AqElem index_power_sum(std::optional<long> lo, std::optional<long> hi, const UPoly& poly, long N) {
  if (poly.is_zero()) return {};
  if (lo && hi && *lo > *hi) return {};
  if (N < 0) {
    std::optional<long> rlo;
    std::optional<long> rhi;
    if (hi) rlo = -*hi;
    if (lo) rhi = -*lo;
    return index_power_sum(rlo, rhi, poly.scale_argument(Rational(-1)), -N);
  }
  if (N == 0) {
    if (!lo || !hi) throw Error(ErrorKind::DivergentSum, "sum without decay over an infinite range");
    const UPoly g = prefix_sum_polynomial(poly);
    return AqElem(g(Rational(*hi + 1)) - g(Rational(*lo)));
  }
  if (!lo) throw Error(ErrorKind::DivergentSum, "geometric sum unbounded below in the index");
  const auto coeffs = tail_sum_coefficients(poly, N);
  AqElem result = evaluate_tail(coeffs, *lo, N);
  if (hi) result -= evaluate_tail(coeffs, *hi + 1, N);
  return result;
}

AqElem weighted_sum(const GammaCell& cell, const UPoly& poly, long N) {
  cell.validate();
  if (N < 0) throw Error(ErrorKind::Domain, "weighted_sum needs N >= 0");
  if (cell.is_empty()) return {};
  if (N == 0 && (!cell.lower || !cell.upper)) {
    throw Error(ErrorKind::DivergentSum, "N = 0 on an infinite cell " + to_string(cell));
  }
  return index_power_sum(cell.first_index(), cell.last_index(), poly, N);
}

AqElem geom_sum(const GammaCell& cell, long N) {
  if (N < 1) throw Error(ErrorKind::Domain, "geom_sum needs N >= 1");
  return weighted_sum(cell, UPoly(Rational(1)), N);
}

bool wellorder_less(long x, long y) {
  // The second clause is widened from 0 < x to 0 <= x (with y < 0) so that
  // 0 precedes the negatives as well; the order is otherwise not total.
  return (0 <= x && x < y) || (0 <= x && x <= -y && y < 0) || (0 < -x && -x < y) || (0 < -x && -x < -y);
}

namespace {

std::vector<long> wellorder_candidates(const GammaCell& cell) {
  std::vector<long> out;
  if (cell.is_empty()) return out;
  const auto lo = cell.first_index();
  const auto hi = cell.last_index();
  // least nonnegative member
  long t0 = ceil_div(-cell.residue, cell.modulus);
  if (lo) t0 = std::max(t0, *lo);
  if (!hi || t0 <= *hi) out.push_back(cell.residue + cell.modulus * t0);
  // greatest negative member
  long t1 = floor_div(-1 - cell.residue, cell.modulus);
  if (hi) t1 = std::min(t1, *hi);
  if (!lo || t1 >= *lo) out.push_back(cell.residue + cell.modulus * t1);
  return out;
}

}  // namespace

long wellorder_min(const GammaCellUnion& u) {
  std::optional<long> best;
  for (const auto& cell : u.cells) {
    cell.validate();
    for (long candidate : wellorder_candidates(cell)) {
      if (!best || wellorder_less(candidate, *best)) best = candidate;
    }
  }
  if (!best) throw Error(ErrorKind::EmptySet, "◁-minimum of an empty set");
  return *best;
}

std::vector<long> wellorder_min_lex(const std::vector<std::vector<GammaCell>>& product_cells) {
  std::vector<const std::vector<GammaCell>*> live;
  std::size_t dim = 0;
  for (const auto& pc : product_cells) {
    if (live.empty()) dim = pc.size();
    if (pc.size() != dim) throw Error(ErrorKind::Domain, "product cells of mixed dimension");
    if (std::none_of(pc.begin(), pc.end(), [](const GammaCell& c) { return c.is_empty(); })) {
      live.push_back(&pc);
    }
  }
  if (live.empty()) throw Error(ErrorKind::EmptySet, "◁-minimum of an empty set");
  std::vector<long> result;
  for (std::size_t coord = 0; coord < dim; ++coord) {
    GammaCellUnion slice;
    for (const auto* pc : live) slice.cells.push_back((*pc)[coord]);
    const long m = wellorder_min(slice);
    result.push_back(m);
    std::erase_if(live, [&](const auto* pc) { return !(*pc)[coord].contains(m); });
  }
  return result;
}

std::optional<GammaCell> intersect(const GammaCell& c1, const GammaCell& c2) {
  c1.validate();
  c2.validate();
  // CRT on (n1, k1), (n2, k2).
  const Integer n1(c1.modulus), n2(c2.modulus), k1(c1.residue), k2(c2.residue);
  Integer g;
  mpz_gcd(g.get_mpz_t(), n1.get_mpz_t(), n2.get_mpz_t());
  Integer diff = k2 - k1;
  if (diff % g != 0) return std::nullopt;
  const Integer lcm = n1 / g * n2;
  Integer inv;
  const Integer m1 = n1 / g, m2 = n2 / g;
  Integer residue;
  if (m2 == 1) {
    residue = k1;
  } else {
    mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
    Integer t = (diff / g) * inv % m2;
    residue = k1 + n1 * t;
  }
  residue %= lcm;
  if (residue < 0) residue += lcm;

  GammaCell out;
  out.modulus = to_long(lcm);
  out.residue = to_long(residue);
  out.lower = c1.lower;
  if (c2.lower && (!out.lower || *c2.lower > *out.lower)) out.lower = c2.lower;
  out.upper = c1.upper;
  if (c2.upper && (!out.upper || *c2.upper < *out.upper)) out.upper = c2.upper;
  return out;
}

bool cells_disjoint(const GammaCell& c1, const GammaCell& c2) {
  auto both = intersect(c1, c2);
  return !both || both->is_empty();
}

std::string to_string(const GammaCell& cell) {
  std::string out = "{";
  if (cell.lower) out += std::to_string(*cell.lower) + " < ";
  out += "γ";
  if (cell.upper) out += " < " + std::to_string(*cell.upper);
  out += ", γ ≡ " + std::to_string(cell.residue) + " mod " + std::to_string(cell.modulus) + "}";
  return out;
}

}  // namespace padicint
