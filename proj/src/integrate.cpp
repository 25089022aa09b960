#include "padicint/integrate.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "padicint/error.hpp"

namespace padicint {

// ---------------------------------------------------------------------------
// Domain

GammaRegionCell GammaRegionCell::from(const GammaCell& c) {
  GammaRegionCell out;
  if (c.lower) out.lower = GammaBound::constant(*c.lower);
  if (c.upper) out.upper = GammaBound::constant(*c.upper);
  out.modulus = c.modulus;
  out.residue = c.residue;
  return out;
}

namespace {

std::optional<std::optional<long>> instantiate_bound(const GammaBound& b, const std::map<int, long>& gamma) {
  switch (b.kind) {
    case GammaBound::Kind::None:
      return std::optional<long>{};
    case GammaBound::Kind::Constant:
      return std::optional<long>{b.value};
    case GammaBound::Kind::Linear: {
      auto it = gamma.find(b.var);
      if (it == gamma.end()) {
        throw Error(ErrorKind::Domain, "bound refers to unassigned g" + std::to_string(b.var));
      }
      if (!b.form.defined_at(it->second)) return std::nullopt;
      return std::optional<long>{prepared_eval(b.form, it->second)};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<GammaCell> GammaRegionCell::instantiate(const std::map<int, long>& gamma) const {
  auto lo = instantiate_bound(lower, gamma);
  auto hi = instantiate_bound(upper, gamma);
  if (!lo || !hi) return std::nullopt;
  return GammaCell{*lo, *hi, modulus, residue};
}

std::vector<KCell> Domain::k_cells_of(const DomainVariable& v) const {
  if (!v.unit_ball) return v.k_cells;
  auto cells = partition_unit_ball(1, 1, prime);
  cells.push_back(KCell{Rational(0), std::nullopt, std::nullopt, 1, 0, 1, 0, prime});
  return cells;
}

Domain Domain::unit_ball(const Prime& prime, int n) {
  Domain d{prime, {}};
  for (int i = 1; i <= n; ++i) {
    DomainVariable v;
    v.sort = Sort::K;
    v.index = i;
    v.unit_ball = true;
    d.variables.push_back(v);
  }
  return d;
}

namespace {

void check_bound(const GammaBound& b, const std::set<int>& earlier_gamma) {
  if (b.kind != GammaBound::Kind::Linear) return;
  b.form.validate();
  if (!earlier_gamma.contains(b.var)) {
    throw Error(ErrorKind::Domain, "bound refers to g" + std::to_string(b.var) + ", which is not an earlier Γ-variable");
  }
}

std::vector<int> bound_vars(const GammaRegionCell& c) {
  std::vector<int> out;
  if (c.lower.kind == GammaBound::Kind::Linear) out.push_back(c.lower.var);
  if (c.upper.kind == GammaBound::Kind::Linear) out.push_back(c.upper.var);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Parametric cells are compared after instantiating the referenced
// variables over a window; constant cells exactly.
void check_gamma_disjoint(const GammaRegionCell& a, const GammaRegionCell& b) {
  std::vector<int> vars = bound_vars(a);
  for (int v : bound_vars(b)) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  constexpr long kWindow = 32;
  std::map<int, long> assignment;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == vars.size()) {
      auto ca = a.instantiate(assignment);
      auto cb = b.instantiate(assignment);
      if (ca && cb && !cells_disjoint(*ca, *cb)) {
        throw Error(ErrorKind::Domain, "Γ-region cells overlap: " + to_string(*ca) + " and " + to_string(*cb));
      }
      return;
    }
    for (long g = -kWindow; g <= kWindow; ++g) {
      assignment[vars[i]] = g;
      walk(i + 1);
    }
  };
  walk(0);
}

}  // namespace

void Domain::validate() const {
  std::set<std::pair<Sort, int>> seen;
  std::set<int> earlier_gamma;
  for (const auto& v : variables) {
    if (v.index < 1) throw Error(ErrorKind::Domain, "variable indices start at 1");
    if (!seen.insert({v.sort, v.index}).second) {
      throw Error(ErrorKind::Domain, "variable declared twice");
    }
    if (v.sort == Sort::Gamma) {
      for (const auto& c : v.gamma_cells) {
        GammaCell{std::nullopt, std::nullopt, c.modulus, c.residue}.validate();
        check_bound(c.lower, earlier_gamma);
        check_bound(c.upper, earlier_gamma);
      }
      for (std::size_t i = 0; i < v.gamma_cells.size(); ++i) {
        for (std::size_t j = i + 1; j < v.gamma_cells.size(); ++j) {
          check_gamma_disjoint(v.gamma_cells[i], v.gamma_cells[j]);
        }
      }
      earlier_gamma.insert(v.index);
    } else {
      const auto cells = k_cells_of(v);
      for (const auto& c : cells) {
        if (!(c.prime == prime)) throw Error(ErrorKind::Domain, "K-cell over a different prime");
        c.validate();
      }
      for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
          if (!kcells_disjoint(cells[i], cells[j])) {
            throw Error(ErrorKind::Domain, "K-cells overlap: " + to_string(cells[i]) + " and " + to_string(cells[j]));
          }
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Symbolic integration

namespace {

Integer floor_rational(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Integer ceil_rational(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

// Integrand terms together with restrictions on Γ-variables that are still
// to be integrated (produced by parametric bounds of inner variables).
struct Piece {
  std::map<int, GammaCell> constraints;
  std::vector<Term> terms;
};

bool restrict_var(Piece& piece, int var, const GammaCell& cell) {
  auto it = piece.constraints.find(var);
  if (it == piece.constraints.end()) {
    if (cell.is_empty()) return false;
    piece.constraints.emplace(var, cell);
    return true;
  }
  auto both = intersect(it->second, cell);
  if (!both || both->is_empty()) return false;
  it->second = *both;
  return true;
}

bool restrict_congruence(Piece& piece, int var, long modulus, long residue) {
  return restrict_var(piece, var, GammaCell{std::nullopt, std::nullopt, modulus, mod_floor(residue, modulus)});
}

// Keeps the part of the piece where slope * var + offset <= 0.
bool restrict_nonpositive(Piece& piece, int var, const Rational& slope, const Rational& offset) {
  if (slope == 0) return offset <= 0;
  const Rational root = -offset / slope;
  GammaCell c;
  if (slope > 0) {
    c.upper = to_long(floor_rational(root)) + 1;
  } else {
    c.lower = to_long(ceil_rational(root)) - 1;
  }
  return restrict_var(piece, var, c);
}

// f(var) = slope * var + offset for a prepared linear form.
std::pair<Rational, Rational> line_of(const PreparedLinear& f) {
  const Rational slope = fraction(f.a, f.n);
  return {slope, Rational(f.delta) - slope * Rational(f.k)};
}

struct ResolvedBound {
  Piece piece;
  GammaBound bound;
};

// Combines the region bound with a constant restriction from the piece by
// taking the max (lower) or min (upper), splitting on the outer variable
// when the region bound is parametric.
std::vector<ResolvedBound> combine_bound(const Piece& piece, const GammaBound& region,
                                         std::optional<long> restriction, bool is_lower) {
  if (region.kind == GammaBound::Kind::None) {
    return {{piece, restriction ? GammaBound::constant(*restriction) : GammaBound::none()}};
  }
  if (region.kind == GammaBound::Kind::Constant) {
    long v = region.value;
    if (restriction) v = is_lower ? std::max(v, *restriction) : std::min(v, *restriction);
    return {{piece, GammaBound::constant(v)}};
  }
  Piece base = piece;
  if (!restrict_congruence(base, region.var, region.form.n, region.form.k)) return {};
  if (!restriction) return {{base, region}};
  const auto [slope, offset] = line_of(region.form);
  const Rational c(*restriction);
  std::vector<ResolvedBound> out;
  // Region bound wins where it is the tighter one.
  Piece wins = base;
  const bool region_tighter = is_lower ? restrict_nonpositive(wins, region.var, -slope, c - offset)
                                       : restrict_nonpositive(wins, region.var, slope, offset - c);
  if (region_tighter) out.push_back({wins, region});
  Piece loses = base;
  const bool restriction_tighter = is_lower ? restrict_nonpositive(loses, region.var, slope, offset - c + 1)
                                            : restrict_nonpositive(loses, region.var, -slope, c + 1 - offset);
  if (restriction_tighter) out.push_back({loses, GammaBound::constant(*restriction)});
  return out;
}

struct IndexBound {
  Piece piece;
  std::optional<Affine> index;
};

// First (lower) or last (upper) index tau with residue + modulus * tau inside
// the bound, as an affine form in the outer variable.
std::vector<IndexBound> index_bound(const Piece& piece, const GammaBound& bound, long modulus, long residue,
                                    bool is_lower) {
  auto edge = [&](long numerator) {
    return is_lower ? floor_div(numerator, modulus) + 1 : ceil_div(numerator, modulus) - 1;
  };
  if (bound.kind == GammaBound::Kind::None) return {{piece, std::nullopt}};
  if (bound.kind == GammaBound::Kind::Constant) return {{piece, Affine{edge(bound.value - residue), {}}}};
  // bound = a * sigma + delta with outer = k + n * sigma; split sigma = j + modulus * rho.
  const PreparedLinear& f = bound.form;
  std::vector<IndexBound> out;
  for (long j = 0; j < modulus; ++j) {
    Piece p = piece;
    const long class_residue = f.k + f.n * j;
    if (!restrict_congruence(p, bound.var, f.n * modulus, class_residue)) continue;
    const long constant = edge(f.a * j + f.delta - residue);
    Affine index;
    if (f.a == 0) {
      index.constant = constant;
    } else {
      index = Affine::of(Symbol::linear({f.a, class_residue, f.n * modulus, constant}, bound.var));
    }
    out.push_back({std::move(p), index});
  }
  return out;
}

// Keeps the part of the piece where lo <= hi.
bool restrict_nonempty(Piece& piece, const Affine& lo, const Affine& hi) {
  Affine diff = lo + hi * -1;
  if (diff.is_constant()) return diff.constant <= 0;
  std::optional<int> var;
  Rational slope = 0;
  Rational offset(diff.constant);
  for (const auto& [s, c] : diff.coeffs) {
    if (s.kind != Symbol::Kind::Lin) throw Error(ErrorKind::Domain, "index bound depends on a K-variable");
    if (var && *var != s.gamma) {
      throw Error(ErrorKind::Domain, "lower and upper bounds depending on different Γ-variables are not supported");
    }
    var = s.gamma;
    const auto [sl, off] = line_of(s.lin);
    slope += sl * Rational(c);
    offset += off * Rational(c);
  }
  return restrict_nonpositive(piece, *var, slope, offset);
}

// Appends coeff * q^(exponent - N * S) * factors * poly(S) for S affine.
void emit_polynomial_in_bound(std::vector<Term>& out, const Term& base, const std::vector<AqElem>& coeffs,
                              const Affine& bound, long N, const AqElem& sign) {
  Affine exponent = base.exponent + bound * (-N);
  std::vector<Term> power{Term{base.coeff * sign, exponent, base.factors}};
  for (std::size_t r = 0; r < coeffs.size(); ++r) {
    if (r > 0) power = multiply_by_affine(power, bound);
    if (coeffs[r].is_zero()) continue;
    for (const auto& t : power) out.push_back(Term{t.coeff * coeffs[r], t.exponent, t.factors});
  }
}

Affine negated(const Affine& a) { return a * -1; }

Affine plus_one(Affine a) {
  a.constant += 1;
  return a;
}

// Sums the piece over var in the given region cell.
std::vector<Piece> sum_gamma_cell(const Piece& input, int var, const GammaRegionCell& region) {
  Piece piece = input;
  std::optional<GammaCell> restriction;
  if (auto it = piece.constraints.find(var); it != piece.constraints.end()) {
    restriction = it->second;
    piece.constraints.erase(it);
  }
  auto congruence = intersect(GammaCell{std::nullopt, std::nullopt, region.modulus, region.residue},
                              GammaCell{std::nullopt, std::nullopt, restriction ? restriction->modulus : 1,
                                        restriction ? restriction->residue : 0});
  if (!congruence) return {};
  const long L = congruence->modulus;
  const long r = congruence->residue;

  std::vector<Piece> out;
  for (auto& lower : combine_bound(piece, region.lower, restriction ? restriction->lower : std::nullopt, true)) {
    for (auto& upper :
         combine_bound(lower.piece, region.upper, restriction ? restriction->upper : std::nullopt, false)) {
      for (auto& lo : index_bound(upper.piece, lower.bound, L, r, true)) {
        for (auto& hi : index_bound(lo.piece, upper.bound, L, r, false)) {
          Piece p = std::move(hi.piece);
          if (lo.index && hi.index && !restrict_nonempty(p, *lo.index, *hi.index)) continue;

          std::vector<Term> terms;
          for (const Term& t : p.terms) {
            // gamma = r + L * tau
            Term rest{t.coeff, Affine{t.exponent.constant, {}}, {}};
            long slope = 0;
            auto split_atom = [&](const Symbol& s) -> std::pair<long, long> {
              const PreparedLinear& f = s.lin;
              if (L % f.n != 0 || mod_floor(r - f.k, f.n) != 0) {
                throw Error(ErrorKind::DomainError, s.to_string() + " is not defined on all of the region of " +
                                                        Symbol::gamma_var(var).to_string());
              }
              return {f.a * ((r - f.k) / f.n) + f.delta, f.a * (L / f.n)};
            };
            for (const auto& [s, c] : t.exponent.coeffs) {
              if (s.kind == Symbol::Kind::Lin && s.gamma == var) {
                auto [value, step] = split_atom(s);
                rest.exponent.constant += c * value;
                slope += c * step;
              } else {
                rest.exponent += Affine::of(s, c);
              }
            }
            UPoly weight(Rational(1));
            for (const auto& s : t.factors) {
              if (s.kind == Symbol::Kind::Lin && s.gamma == var) {
                auto [value, step] = split_atom(s);
                weight *= UPoly(std::vector<Rational>{Rational(value), Rational(step)});
              } else {
                rest.factors.push_back(s);
              }
            }
            long N = -slope;
            std::optional<Affine> first = lo.index;
            std::optional<Affine> last = hi.index;
            if (N < 0) {
              weight = weight.scale_argument(Rational(-1));
              first = hi.index ? std::optional<Affine>(negated(*hi.index)) : std::nullopt;
              last = lo.index ? std::optional<Affine>(negated(*lo.index)) : std::nullopt;
              N = -N;
            }
            if (N > 0) {
              if (!first) throw Error(ErrorKind::DivergentSum, "sum over " + Symbol::gamma_var(var).to_string() + " diverges");
              const auto coeffs = tail_sum_coefficients(weight, N);
              emit_polynomial_in_bound(terms, rest, coeffs, *first, N, AqElem(1));
              if (last) emit_polynomial_in_bound(terms, rest, coeffs, plus_one(*last), N, AqElem(-1));
            } else {
              if (!first || !last) {
                throw Error(ErrorKind::DivergentSum, "sum over " + Symbol::gamma_var(var).to_string() +
                                                         " has no decay on an infinite range");
              }
              const UPoly g = prefix_sum_polynomial(weight);
              std::vector<AqElem> coeffs;
              for (const auto& c : g.coeffs()) coeffs.emplace_back(c);
              emit_polynomial_in_bound(terms, rest, coeffs, plus_one(*last), 0, AqElem(1));
              emit_polynomial_in_bound(terms, rest, coeffs, *first, 0, AqElem(-1));
            }
          }
          p.terms = ConstructibleExpr(std::move(terms)).terms();
          if (!p.terms.empty()) out.push_back(std::move(p));
        }
      }
    }
  }
  return out;
}

std::vector<Piece> merge_pieces(std::vector<Piece> pieces) {
  std::vector<Piece> out;
  for (auto& p : pieces) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Piece& o) { return o.constraints == p.constraints; });
    if (it == out.end()) {
      out.push_back(std::move(p));
    } else {
      it->terms.insert(it->terms.end(), p.terms.begin(), p.terms.end());
      it->terms = ConstructibleExpr(std::move(it->terms)).terms();
    }
  }
  std::erase_if(out, [](const Piece& p) { return p.terms.empty(); });
  return out;
}

std::vector<Piece> integrate_k(const std::vector<Piece>& pieces, int k_index, const std::vector<KCell>& cells,
                               const Prime& prime, int& fresh) {
  const int poly_var = k_index - 1;
  std::vector<Piece> out;
  for (const auto& cell : cells) {
    if (cell.is_point()) continue;
    if (!cell.lower) {
      throw Error(ErrorKind::InfiniteMeasure, "K-cell without lower valuation bound: " + to_string(cell));
    }
    const int nu = kFreshGammaBase + fresh++;
    const Symbol nu_symbol = Symbol::gamma_var(nu);
    auto rewrite = [&](const Symbol& s) -> std::optional<Affine> {
      if (s.kind != Symbol::Kind::Ord || !s.poly.involves(poly_var)) return std::nullopt;
      const Polynomial shifted = s.poly.substitute_shift(poly_var, cell.center);
      auto split = shifted.split_power(poly_var);
      if (!split) {
        throw Error(ErrorKind::NotFiberReducible,
                    s.to_string() + " is not a power of (x" + std::to_string(k_index) + " - " +
                        to_string(cell.center) + ") times a function of the other variables");
      }
      Affine a = normalize_ord(split->second, prime);
      a += Affine::of(nu_symbol, split->first);
      return a;
    };
    // fibre measure mu{ord(t - c) = nu, ac_M = xi} = q^-(nu + M)
    Affine fibre{-cell.ac_depth, {}};
    fibre += Affine::of(nu_symbol, -1);
    GammaRegionCell region;
    region.lower = GammaBound::constant(*cell.lower);
    if (cell.upper) region.upper = GammaBound::constant(*cell.upper);
    region.modulus = cell.modulus;
    region.residue = cell.residue;
    for (const auto& piece : pieces) {
      ConstructibleExpr e = substitute(ConstructibleExpr(piece.terms), rewrite) * ConstructibleExpr::q_power(fibre);
      Piece np{piece.constraints, e.terms()};
      auto summed = sum_gamma_cell(np, nu, region);
      out.insert(out.end(), summed.begin(), summed.end());
    }
  }
  return merge_pieces(std::move(out));
}

void check_declared(const ConstructibleExpr& f, const Domain& domain) {
  for (int k : f.k_variables()) {
    const bool ok = std::any_of(domain.variables.begin(), domain.variables.end(),
                                [k](const DomainVariable& v) { return v.sort == Sort::K && v.index == k; });
    if (!ok) throw Error(ErrorKind::Domain, "x" + std::to_string(k) + " is not declared in the domain");
  }
  for (int g : f.gamma_variables()) {
    const bool ok = std::any_of(domain.variables.begin(), domain.variables.end(),
                                [g](const DomainVariable& v) { return v.sort == Sort::Gamma && v.index == g; });
    if (!ok) throw Error(ErrorKind::Domain, "g" + std::to_string(g) + " is not declared in the domain");
  }
}

}  // namespace

AqElem integrate(const ConstructibleExpr& f, const Domain& domain) {
  domain.validate();
  check_declared(f, domain);
  const Prime& prime = domain.prime;
  const ConstructibleExpr normalized = substitute(f, [&](const Symbol& s) -> std::optional<Affine> {
    if (s.kind != Symbol::Kind::Ord) return std::nullopt;
    return normalize_ord(s.poly, prime);
  });
  std::vector<Piece> pieces{Piece{{}, normalized.terms()}};
  int fresh = 0;
  for (auto it = domain.variables.rbegin(); it != domain.variables.rend(); ++it) {
    if (pieces.empty()) break;
    if (it->sort == Sort::K) {
      pieces = integrate_k(pieces, it->index, domain.k_cells_of(*it), prime, fresh);
    } else {
      std::vector<Piece> next;
      for (const auto& piece : pieces) {
        for (const auto& cell : it->gamma_cells) {
          auto summed = sum_gamma_cell(piece, it->index, cell);
          next.insert(next.end(), summed.begin(), summed.end());
        }
      }
      pieces = merge_pieces(std::move(next));
    }
  }
  AqElem result;
  for (const auto& piece : pieces) {
    for (const auto& t : piece.terms) {
      if (!t.factors.empty() || !t.exponent.coeffs.empty()) {
        throw Error(ErrorKind::Domain, "integrand depends on an undeclared variable");
      }
      result += t.coeff * AqElem::q_power(t.exponent.constant);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Residue-enumeration oracle

namespace {

class Oracle {
 public:
  Oracle(const ConstructibleExpr& f, const Domain& domain, const OracleOptions& options)
      : f_(f), domain_(domain), options_(options), prime_(domain.prime) {
    for (const auto& v : domain_.variables) {
      if (v.sort == Sort::K) {
        ++n_;
        k_vars_.push_back(v.index);
        // the whole unit ball needs no membership test
        if (v.unit_ball) continue;
        k_cells_[v.index] = domain_.k_cells_of(v);
        for (const auto& c : k_cells_[v.index]) {
          if (c.is_point()) continue;
          if (!c.lower || *c.lower < -1 || (c.center != 0 && ord(c.center, prime_).value() < 0)) {
            throw Error(ErrorKind::Domain, "the oracle needs K-regions inside the unit ball");
          }
        }
      }
    }
    for (const auto& t : f_.terms()) {
      auto note = [&](const Symbol& s) {
        if (s.kind != Symbol::Kind::Ord) return;
        for (const auto& [e, c] : s.poly.terms()) {
          if (c.get_den() % prime_.value() == 0) {
            throw Error(ErrorKind::Domain, "the oracle needs p-integral polynomial coefficients");
          }
        }
        atoms_.push_back(s.poly);
      };
      for (const auto& [s, c] : t.exponent.coeffs) note(s);
      for (const auto& s : t.factors) note(s);
    }
    if (options_.depth < 0) throw Error(ErrorKind::Domain, "oracle depth must be >= 0");
    if (n_ > 0 && options_.growth.exponent >= n_) {
      throw Error(ErrorKind::Domain, "growth exponent must be below the number of K-variables for a finite tail");
    }
    checked_power(prime_, static_cast<std::uint64_t>(n_) * static_cast<std::uint64_t>(options_.depth),
                  options_.budget);
  }

  OracleResult run() {
    walk(0);
    return result_;
  }

 private:
  enum class Status { Outside, Inside, Undetermined };

  void count_evaluation() {
    if (++result_.evaluated > options_.budget) {
      throw Error(ErrorKind::BudgetExceeded, "oracle evaluations exceed budget " + std::to_string(options_.budget));
    }
  }

  void walk(std::size_t i) {
    if (i == domain_.variables.size()) {
      leaf(options_.depth, options_.refine > 0);
      return;
    }
    const auto& v = domain_.variables[i];
    if (v.sort == Sort::Gamma) {
      for (const auto& region : v.gamma_cells) {
        auto cell = region.instantiate(point_.gamma);
        if (!cell || cell->is_empty()) continue;
        if (!cell->lower || !cell->upper) {
          throw Error(ErrorKind::Domain, "the oracle needs finite Γ-regions");
        }
        const long first = *cell->first_index();
        const long last = *cell->last_index();
        for (long tau = first; tau <= last; ++tau) {
          point_.gamma[v.index] = cell->residue + cell->modulus * tau;
          walk(i + 1);
        }
      }
      point_.gamma.erase(v.index);
      return;
    }
    const long modulus = to_long(prime_.pow(static_cast<unsigned long>(options_.depth)));
    for (long x = 0; x < modulus; ++x) {
      point_.k[v.index] = Rational(x);
      walk(i + 1);
    }
    point_.k.erase(v.index);
  }

  Status membership(int index, const Rational& x, int depth) const {
    const auto& cells = k_cells_.at(index);
    bool inside = false;
    for (const auto& c : cells) {
      if (c.is_point()) continue;
      const Rational d = x - c.center;
      if (d == 0) return Status::Undetermined;
      const long v = ord(d, prime_).value();
      if (v + c.ac_depth > depth) return Status::Undetermined;
      if (kcell_contains(x, c)) inside = true;
    }
    return inside ? Status::Inside : Status::Outside;
  }

  bool saturated(int depth) const {
    for (const auto& g : atoms_) {
      std::vector<Rational> coords(static_cast<std::size_t>(g.num_vars()));
      for (int v = 0; v < g.num_vars(); ++v) {
        if (auto it = point_.k.find(v + 1); it != point_.k.end()) coords[static_cast<std::size_t>(v)] = it->second;
      }
      const Rational value = g.evaluate(coords);
      if (value == 0 || ord(value, prime_).value() >= depth) return true;
    }
    return false;
  }

  // Bound on the integral of |f| over one class of radius p^-depth.
  Rational class_bound(int depth) const {
    const GrowthBound& gb = options_.growth;
    const Rational q(prime_.value());
    UPoly weight(Rational(1));
    for (int i = 0; i < gb.power; ++i) weight *= UPoly(std::vector<Rational>{Rational(1 + depth), Rational(1)});
    const Rational series = index_power_sum(0L, std::nullopt, weight, n_ - gb.exponent).evaluate(prime_);
    return abs(gb.scale) * rpow(q, -n_ * depth) * (1 - rpow(q, -n_)) * rpow(q, gb.exponent * depth) * series;
  }

  void leaf(int depth, bool may_refine) {
    count_evaluation();
    bool undetermined = false;
    for (const auto& [index, cells] : k_cells_) {
      const Status s = membership(index, point_.k.at(index), depth);
      if (s == Status::Outside) return;
      if (s == Status::Undetermined) undetermined = true;
    }
    if (!undetermined && saturated(depth)) undetermined = true;
    const Rational measure = rpow(Rational(prime_.value()), -n_ * depth);
    if (!undetermined) {
      result_.value += measure * eval_constructible(f_, point_, prime_);
      return;
    }
    if (!may_refine || n_ == 0) {
      ++result_.skipped;
      result_.tail_bound += class_bound(depth);
      return;
    }
    // one-level refinement of this class
    const auto base = point_.k;
    const long step = to_long(prime_.pow(static_cast<unsigned long>(depth)));
    const long fan = to_long(prime_.pow(static_cast<unsigned long>(options_.refine)));
    const std::vector<int>& vars = k_vars_;
    std::function<void(std::size_t)> sub = [&](std::size_t i) {
      if (i == vars.size()) {
        leaf(depth + options_.refine, false);
        return;
      }
      for (long j = 0; j < fan; ++j) {
        point_.k[vars[i]] = base.at(vars[i]) + Rational(step * j);
        sub(i + 1);
      }
    };
    sub(0);
    point_.k = base;
  }

  const ConstructibleExpr& f_;
  const Domain& domain_;
  OracleOptions options_;
  Prime prime_;
  long n_ = 0;
  std::vector<int> k_vars_;
  std::map<int, std::vector<KCell>> k_cells_;
  std::vector<Polynomial> atoms_;
  Assignment point_;
  OracleResult result_;
};

}  // namespace

OracleResult brute_force_integrate(const ConstructibleExpr& f, const Domain& domain, const OracleOptions& options) {
  domain.validate();
  check_declared(f, domain);
  return Oracle(f, domain, options).run();
}

}  // namespace padicint
