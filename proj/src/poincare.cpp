#include "padicint/poincare.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "padicint/error.hpp"
#include "padicint/integrate.hpp"

namespace padicint {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// f with coefficients reduced modulo a fixed p^k, evaluated on residues.
class ModularPolynomial {
 public:
  ModularPolynomial(const Polynomial& f, const Prime& prime, int depth, int n)
      : modulus_(static_cast<u64>(prime.pow(static_cast<unsigned long>(depth)).get_ui())), n_(n) {
    for (const auto& [exponents, coeff] : f.terms()) {
      const Integer r = reduce_mod_power(coeff, prime, depth);
      if (r == 0) continue;
      std::vector<int> e(exponents.begin(), exponents.end());
      e.resize(static_cast<std::size_t>(n_), 0);
      terms_.push_back({r.get_ui(), std::move(e)});
    }
  }

  u64 modulus() const { return modulus_; }

  u64 operator()(const long* x) const {
    u64 total = 0;
    for (const auto& [c, e] : terms_) {
      u64 value = c;
      for (int i = 0; i < n_; ++i) {
        for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) {
          value = static_cast<u64>(static_cast<u128>(value) * static_cast<u64>(x[i]) % modulus_);
        }
      }
      total = (total + value) % modulus_;
    }
    return total;
  }

 private:
  struct Term {
    u64 coeff;
    std::vector<int> exponents;
  };
  u64 modulus_;
  int n_;
  std::vector<Term> terms_;
};

void require_p_integral(const Polynomial& f, const Prime& prime) {
  for (const auto& [e, c] : f.terms()) {
    if (c.get_den() % prime.value() == 0) {
      throw Error(ErrorKind::Domain, "counting needs p-integral coefficients");
    }
  }
}

// Lifts of `level` (solutions mod p^k, flattened) that solve f mod p^(k+1).
// Returns the count; appends the lifts to `next` unless it is null.
u64 lift_range(const ModularPolynomial& f, const std::vector<long>& level, std::size_t first, std::size_t last,
               int n, long step, long p, std::vector<long>* next) {
  std::vector<long> z(static_cast<std::size_t>(n));
  std::vector<long> digits(static_cast<std::size_t>(n));
  u64 count = 0;
  for (std::size_t s = first; s < last; ++s) {
    const long* x = level.data() + s * static_cast<std::size_t>(n);
    std::fill(digits.begin(), digits.end(), 0);
    while (true) {
      for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = x[i] + step * digits[static_cast<std::size_t>(i)];
      if (f(z.data()) == 0) {
        ++count;
        if (next) next->insert(next->end(), z.begin(), z.end());
      }
      int i = n - 1;
      while (i >= 0 && ++digits[static_cast<std::size_t>(i)] == p) digits[static_cast<std::size_t>(i--)] = 0;
      if (i < 0) break;
    }
  }
  return count;
}

}  // namespace

int arity(const Polynomial& f) { return std::max(1, f.num_vars()); }

int max_depth(const Prime& prime, int n, std::uint64_t budget) {
  int m = 0;
  Integer size = 1;
  const Integer step = prime.pow(static_cast<unsigned long>(n));
  while (size * step <= Integer(std::to_string(budget))) {
    size *= step;
    ++m;
  }
  return m;
}

std::vector<Integer> count_series(const Polynomial& f, const Prime& prime, int mmax, std::uint64_t budget,
                                  unsigned threads) {
  if (mmax < 0) throw Error(ErrorKind::Domain, "m must be >= 0");
  require_p_integral(f, prime);
  const int n = arity(f);
  checked_power(prime, static_cast<u64>(n) * static_cast<u64>(mmax), budget);
  threads = std::max(1u, threads);
  std::vector<Integer> counts{Integer(1)};
  std::vector<long> level(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < mmax; ++k) {
    const ModularPolynomial fk(f, prime, k + 1, n);
    const long step = to_long(prime.pow(static_cast<unsigned long>(k)));
    const bool keep = k + 1 < mmax;
    const std::size_t size = level.size() / static_cast<std::size_t>(n);
    const std::size_t shards = std::min<std::size_t>(threads, std::max<std::size_t>(1, size / 64));
    std::vector<std::vector<long>> parts(shards);
    std::vector<u64> found(shards, 0);
    auto work = [&](std::size_t s) {
      const std::size_t first = size * s / shards;
      const std::size_t last = size * (s + 1) / shards;
      found[s] = lift_range(fk, level, first, last, n, step, prime.value(), keep ? &parts[s] : nullptr);
    };
    if (shards == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t s = 0; s < shards; ++s) pool.emplace_back(work, s);
      for (auto& t : pool) t.join();
    }
    u64 total = 0;
    for (u64 c : found) total += c;
    counts.emplace_back(std::to_string(total));
    if (keep) {
      level.clear();
      for (const auto& part : parts) level.insert(level.end(), part.begin(), part.end());
    }
  }
  return counts;
}

Integer count_Nm(const Polynomial& f, const Prime& prime, int m, std::uint64_t budget, unsigned threads) {
  return count_series(f, prime, m, budget, threads).back();
}

Integer count_Nm_naive(const Polynomial& f, const Prime& prime, int m, std::uint64_t budget) {
  if (m < 0) throw Error(ErrorKind::Domain, "m must be >= 0");
  require_p_integral(f, prime);
  const int n = arity(f);
  const ModularPolynomial fm(f, prime, m, n);
  ResidueEnumerator it(n, m, prime, budget);
  u64 count = 0;
  do {
    if (fm(it.current().data()) == 0) ++count;
  } while (it.advance());
  return Integer(std::to_string(count));
}

SeriesTable make_table(const Polynomial& f, const Prime& prime, int mmax, std::uint64_t budget, unsigned threads) {
  return SeriesTable{prime, f, arity(f), count_series(f, prime, mmax, budget, threads)};
}

// ---------------------------------------------------------------------------
// Rational functions in T

std::vector<Rational> RationalFunctionT::expand(std::size_t terms) const {
  // denominator(0) = 1, so a_i = num_i - sum_{j>=1} den_j a_{i-j}
  std::vector<Rational> out(terms);
  for (std::size_t i = 0; i < terms; ++i) {
    Rational a = numerator.coeff(i);
    for (std::size_t j = 1; j <= i && static_cast<long>(j) <= denominator.degree(); ++j) {
      a -= denominator.coeff(j) * out[i - j];
    }
    out[i] = a;
  }
  return out;
}

bool RationalFunctionT::has_negative_exponent() const {
  return std::any_of(shape.begin(), shape.end(), [](const ShapeFactor& s) { return s.m < 0; });
}

std::string RationalFunctionT::to_string() const {
  const std::string num = numerator.to_string("T");
  const std::string den = denominator.to_string("T");
  const bool wrap_num = numerator.coeffs().size() > 1 &&
                        std::count_if(numerator.coeffs().begin(), numerator.coeffs().end(),
                                      [](const Rational& c) { return c != 0; }) > 1;
  std::string out = wrap_num ? "(" + num + ")" : num;
  if (denominator == UPoly(Rational(1))) return out;
  return out + "/(" + den + ")";
}

std::string RationalFunctionT::shape_string(const Prime& prime) const {
  if (generic) return "generic";
  if (shape.empty()) return "1";
  std::string out;
  for (const auto& s : shape) {
    const UPoly factor =
        UPoly(Rational(1)) - UPoly::monomial(rpow(Rational(prime.value()), -s.m), static_cast<std::size_t>(s.N));
    out += "(" + factor.to_string("T") + ")";
  }
  return out;
}

namespace {

bool search_shape(const UPoly& d, long min_N, long min_m, const Prime& prime, int n, std::vector<ShapeFactor>& out) {
  if (d.degree() <= 0) return d == UPoly(Rational(1));
  const Rational p(prime.value());
  for (long N = min_N; N <= d.degree(); ++N) {
    for (long m = (N == min_N ? min_m : -n * N); m <= n * N; ++m) {
      UPoly g = UPoly(Rational(1)) - UPoly::monomial(rpow(p, -m), static_cast<std::size_t>(N));
      auto [quotient, remainder] = d.divmod(g);
      if (!remainder.is_zero()) continue;
      out.push_back({m, N});
      if (search_shape(quotient, N, m, prime, n, out)) return true;
      out.pop_back();
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<ShapeFactor>> certify_shape(const UPoly& denominator, const Prime& prime, int n) {
  if (denominator.coeff(0) != 1) return std::nullopt;
  std::vector<ShapeFactor> out;
  if (search_shape(denominator, 1, -n, prime, n, out)) return out;
  return std::nullopt;
}

std::optional<RationalFunctionT> fit_rational(const SeriesTable& table, int guard) {
  if (guard < 0) throw Error(ErrorKind::Domain, "guard must be >= 0");
  const std::size_t total = table.counts.size();
  if (total <= static_cast<std::size_t>(guard)) return std::nullopt;
  const std::size_t prefix = total - static_cast<std::size_t>(guard);
  std::vector<Rational> s;
  for (const auto& c : table.counts) s.emplace_back(c);

  // Berlekamp-Massey over Q on the prefix.
  UPoly C(Rational(1));
  UPoly B(Rational(1));
  std::size_t L = 0;
  std::size_t shift = 1;
  Rational b = 1;
  for (std::size_t i = 0; i < prefix; ++i) {
    Rational d = s[i];
    for (std::size_t j = 1; j <= L; ++j) d += C.coeff(j) * s[i - j];
    if (d == 0) {
      ++shift;
      continue;
    }
    const UPoly update = UPoly::monomial(d / b, shift) * B;
    if (2 * L <= i) {
      UPoly previous = C;
      C -= update;
      L = i + 1 - L;
      B = std::move(previous);
      b = d;
      shift = 1;
    } else {
      C -= update;
      ++shift;
    }
  }
  if (L == 0 || 2 * L > prefix) return std::nullopt;
  for (std::size_t i = L; i < total; ++i) {
    Rational d = s[i];
    for (std::size_t j = 1; j <= L; ++j) d += C.coeff(j) * s[i - j];
    if (d != 0) return std::nullopt;
  }
  RationalFunctionT out;
  out.numerator = (UPoly(s) * C).truncate(L);
  out.denominator = C;
  if (out.expand(total) != s) return std::nullopt;
  if (auto shape = certify_shape(C, table.prime, table.n)) {
    out.shape = *shape;
    out.generic = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Measure identity

namespace {

constexpr std::uint64_t kNaiveLimit = 1u << 21;

// Tuples mod p^depth with f = 0 mod p^target.
Integer count_with_valuation(const Polynomial& f, const Prime& prime, int depth, int target, std::uint64_t budget) {
  const int n = arity(f);
  const ModularPolynomial fd(f, prime, depth, n);
  const u64 threshold = static_cast<u64>(prime.pow(static_cast<unsigned long>(target)).get_ui());
  ResidueEnumerator it(n, depth, prime, budget);
  u64 count = 0;
  do {
    if (fd(it.current().data()) % threshold == 0) ++count;
  } while (it.advance());
  return Integer(std::to_string(count));
}

// mu{ord(c x^e) >= m} over Z_p through the integration engine.
Rational symbolic_monomial_measure(const Rational& c, int e, const Prime& prime, int m) {
  const long v = ord(c, prime).value();
  const long lower = std::max(-1L, ceil_div(m - v, e) - 1);
  DomainVariable x;
  x.sort = Sort::K;
  x.index = 1;
  for (long xi = 1; xi < prime.value(); ++xi) {
    x.k_cells.push_back(KCell{Rational(0), lower, std::nullopt, 1, 0, 1, xi, prime});
  }
  x.k_cells.push_back(KCell{Rational(0), std::nullopt, std::nullopt, 1, 0, 1, 0, prime});
  Domain domain{prime, {x}};
  return integrate(ConstructibleExpr(AqElem(1)), domain).evaluate(prime);
}

}  // namespace

IdentityCheck measure_identity_check(const Polynomial& f, const Prime& prime, int m, std::uint64_t budget) {
  if (m < 0) throw Error(ErrorKind::Domain, "m must be >= 0");
  const int n = arity(f);
  IdentityCheck out;
  out.m = m;
  out.count = count_Nm(f, prime, m, budget);
  const Rational scale(prime.pow(static_cast<unsigned long>(n * m)));
  const Integer cells_deeper = prime.pow(static_cast<unsigned long>(n * (m + 1)));
  Integer deeper;
  if (cells_deeper <= Integer(std::to_string(std::min<std::uint64_t>(budget, kNaiveLimit)))) {
    deeper = count_with_valuation(f, prime, m + 1, m, budget);
  } else {
    // every solution mod p^m has p^n lifts mod p^(m+1)
    deeper = out.count * prime.pow(static_cast<unsigned long>(n));
  }
  out.counted_measure = Rational(deeper) / Rational(cells_deeper);
  out.ok = scale * out.counted_measure == Rational(out.count);
  if (f.terms().size() == 1 && f.num_vars() == 1) {
    const auto& [exponents, coeff] = *f.terms().begin();
    const int e = exponents.empty() ? 0 : exponents[0];
    if (e > 0) {
      out.symbolic_measure = symbolic_monomial_measure(coeff, e, prime, m);
      out.ok = out.ok && scale * *out.symbolic_measure == Rational(out.count);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Report

bool PoincareReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.ok; });
}

std::string PoincareReport::to_string() const {
  std::ostringstream out;
  out << "f = " << table.f.to_string() << ", p = " << table.prime.value() << "\n";
  out << "N_m:";
  for (std::size_t i = 0; i < table.counts.size(); ++i) out << (i ? ", " : " ") << table.counts[i].get_str();
  out << "\n";
  if (rational) {
    out << "P(T) = " << rational->to_string() << "\n";
    out << "shape: " << rational->shape_string(table.prime);
    if (rational->has_negative_exponent()) out << " (negative m_i)";
    out << "\n";
  } else {
    out << "P(T) = UNDETERMINED\n";
  }
  out << "guard: " << guard << "\n";
  const auto passed = std::count_if(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.ok; });
  out << "checks: " << passed << "/" << checks.size() << " pass\n";
  out << "stable: " << (stable ? (*stable ? "yes" : "no") : "not tested") << "\n";
  return out.str();
}

PoincareReport poincare_report(const Polynomial& f, const Prime& prime, int mmax, int guard, std::uint64_t budget,
                               unsigned threads) {
  PoincareReport report;
  report.guard = guard;
  report.table = make_table(f, prime, mmax, budget, threads);
  report.rational = fit_rational(report.table, guard);
  for (int m = 0; m <= mmax; ++m) report.checks.push_back(measure_identity_check(f, prime, m, budget));
  if (report.rational && report.table.counts.size() > 2) {
    SeriesTable shorter = report.table;
    shorter.counts.resize(shorter.counts.size() - 2);
    if (auto earlier = fit_rational(shorter, guard)) report.stable = *earlier == *report.rational;
  }
  return report;
}

}  // namespace padicint
