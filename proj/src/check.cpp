#include "padicint/check.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "padicint/error.hpp"
#include "padicint/integrate.hpp"
#include "padicint/kcells.hpp"
#include "padicint/parse.hpp"
#include "padicint/poincare.hpp"
#include "padicint/presburger.hpp"

namespace padicint {

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

GammaCell random_bounded_cell(Rng& rng) {
  const long n = uniform(rng, 1, 4);
  const long lower = uniform(rng, -8, 8);
  return GammaCell{lower, lower + uniform(rng, 0, 14), n, uniform(rng, 0, n - 1)};
}

Rational enumerate_weighted(const GammaCell& c, const UPoly& poly, long N, long q) {
  Rational total = 0;
  for (long g = *c.lower + 1; g < *c.upper; ++g) {
    if (!c.contains(g)) continue;
    const long tau = (g - c.residue) / c.modulus;
    total += poly(Rational(tau)) * rpow(Rational(q), -N * tau);
  }
  return total;
}

CheckOutcome check_sums(Rng& rng) {
  for (int i = 0; i < 60; ++i) {
    const GammaCell c = random_bounded_cell(rng);
    const long N = uniform(rng, 0, 3);
    const UPoly poly(std::vector<Rational>{Rational(uniform(rng, -3, 3)), Rational(uniform(rng, -2, 2))});
    const AqElem closed = N > 0 && poly == UPoly(Rational(1)) ? geom_sum(c, N) : weighted_sum(c, poly, N);
    for (long q : {2L, 3L, 5L}) {
      if (closed.evaluate(Rational(q)) != enumerate_weighted(c, poly, N, q)) {
        return {"presburger.sums", false, "mismatch on " + to_string(c) + " N=" + std::to_string(N)};
      }
    }
  }
  return {"presburger.sums", true, "60 bounded cells at q = 2, 3, 5"};
}

CheckOutcome check_tails(Rng& rng) {
  for (int i = 0; i < 20; ++i) {
    const long n = uniform(rng, 1, 3);
    const GammaCell c{uniform(rng, -5, 5), std::nullopt, n, uniform(rng, 0, n - 1)};
    const long N = uniform(rng, 1, 3);
    const long first = *c.first_index();
    for (long q : {2L, 3L}) {
      const Rational value = geom_sum(c, N).evaluate(Rational(q));
      const Rational x = rpow(Rational(q), -N);
      for (long D : {5L, 15L}) {
        Rational partial = 0;
        for (long tau = first; tau < first + D; ++tau) partial += rpow(x, tau);
        const Rational bound = rpow(x, first + D) / (1 - x);
        if (abs(value - partial) > bound) return {"presburger.tails", false, "tail bound violated on " + to_string(c)};
      }
    }
  }
  return {"presburger.tails", true, "20 unbounded cells"};
}

CheckOutcome check_wellorder(Rng& rng) {
  for (int i = 0; i < 60; ++i) {
    GammaCellUnion u;
    const long n = uniform(rng, 1, 5);
    const long k = uniform(rng, 0, n - 1);
    std::optional<long> lower;
    std::optional<long> upper;
    if (uniform(rng, 0, 1)) lower = uniform(rng, -40, 30);
    if (uniform(rng, 0, 1)) upper = (lower ? *lower : -40) + uniform(rng, 2, 60);
    u.cells.push_back({lower, upper, n, k});
    bool found = false;
    long best = 0;
    for (long g = -200; g <= 200; ++g) {
      if (u.contains(g) && (!found || wellorder_less(g, best))) {
        best = g;
        found = true;
      }
    }
    if (!found) continue;
    if (wellorder_min(u) != best) return {"presburger.wellorder", false, "minimum differs on " + to_string(u.cells[0])};
  }
  return {"presburger.wellorder", true, "60 random unions against a scan"};
}

CheckOutcome check_partition() {
  for (long p : {2L, 3L, 5L}) {
    for (int M = 1; M <= 2; ++M) {
      for (long N = 1; N <= 3; ++N) {
        AqElem total;
        for (const auto& c : partition_unit_ball(M, N, Prime(p))) total += kcell_measure(c);
        if (total.evaluate(Prime(p)) != 1) {
          return {"kcells.partition", false, "measures do not sum to 1 at p=" + std::to_string(p)};
        }
      }
    }
  }
  return {"kcells.partition", true, "p in {2,3,5}, M <= 2, N <= 3"};
}

CheckOutcome check_kcell_counting(Rng& rng) {
  for (int i = 0; i < 20; ++i) {
    const Prime p(uniform(rng, 0, 1) ? 2 : 3);
    KCell c;
    c.prime = p;
    c.lower = uniform(rng, -1, 2);
    c.upper = *c.lower + uniform(rng, 1, 3);
    c.modulus = uniform(rng, 1, 2);
    c.residue = uniform(rng, 0, c.modulus - 1);
    c.ac_depth = 1;
    c.ac_value = uniform(rng, 1, p.value() - 1);
    c.center = Rational(uniform(rng, 0, 7));
    const int D = static_cast<int>(*c.upper) + c.ac_depth + 1;
    const long size = to_long(p.pow(static_cast<unsigned long>(D)));
    long inside = 0;
    for (long t = 0; t < size; ++t) {
      if (kcell_contains(Rational(t), c)) ++inside;
    }
    if (kcell_measure(c).evaluate(p) * Rational(size) != inside) {
      return {"kcells.counting", false, "count differs on " + to_string(c)};
    }
    KCell moved = c;
    moved.center = fraction(uniform(rng, -50, 50), uniform(rng, 1, 9));
    if (!(kcell_measure(moved) == kcell_measure(c))) return {"kcells.translation", false, to_string(c)};
  }
  return {"kcells.counting", true, "20 random cells counted at depth upper + M + 1"};
}

struct Integrand {
  const char* text;
  GrowthBound growth;
};

CheckOutcome check_oracle(const CheckOptions& options) {
  const std::vector<Integrand> corpus = {
      {"1", {1, 0, 0}},
      {"q^(-ord(x1))", {1, 0, 0}},
      {"ord(x1)", {1, 0, 1}},
      {"ord(x1)*q^(-ord(x1))", {1, 0, 1}},
      {"q^(-2*ord(x1))", {1, 0, 0}},
      {"ord(x1*x2)", {2, 0, 1}},
  };
  std::ostringstream detail;
  for (long p : {2L, 3L}) {
    const Prime prime(p);
    for (const auto& item : corpus) {
      const auto f = parse_constructible(item.text);
      const int n = f.k_variables().empty() ? 1 : *f.k_variables().rbegin();
      const Domain domain = Domain::unit_ball(prime, n);
      const Rational exact = integrate(f, domain).evaluate(prime);
      for (int depth = 4; depth <= options.depth; ++depth) {
        if (n * depth > 12) break;
        OracleOptions o;
        o.depth = depth;
        o.budget = options.budget;
        o.growth = item.growth;
        const auto r = brute_force_integrate(f, domain, o);
        if (abs(exact - r.value) > r.tail_bound) {
          return {"integrate.oracle", false,
                  std::string(item.text) + " at p=" + std::to_string(p) + " depth " + std::to_string(depth)};
        }
      }
    }
  }
  return {"integrate.oracle", true, "6 integrands, p in {2,3}, depths 4.." + std::to_string(options.depth)};
}

CheckOutcome check_linearity() {
  const Prime prime(3);
  const Domain domain = Domain::unit_ball(prime, 1);
  const auto f = parse_constructible("q^(-ord(x1))");
  const auto g = parse_constructible("ord(x1)");
  const AqElem a = AqElem::inverse_factor(1, 1);
  const AqElem b = AqElem::q_power(-2);
  const AqElem lhs = integrate(ConstructibleExpr(a) * f + ConstructibleExpr(b) * g, domain);
  const AqElem rhs = a * integrate(f, domain) + b * integrate(g, domain);
  return {"integrate.linearity", lhs == rhs, "a f + b g at p=3"};
}

CheckOutcome check_gamma_fubini() {
  auto make = [](int first, int second) {
    Domain d;
    for (int i : {first, second}) {
      DomainVariable v;
      v.sort = Sort::Gamma;
      v.index = i;
      GammaRegionCell c;
      c.lower = GammaBound::constant(i == 1 ? -1 : 0);
      c.modulus = i;
      v.gamma_cells = {c};
      d.variables.push_back(v);
    }
    return d;
  };
  const auto f = parse_constructible("g1*q^(-g1-2*g2)");
  const bool ok = integrate(f, make(1, 2)) == integrate(f, make(2, 1));
  return {"integrate.fubini", ok, "swapping two Γ-variables"};
}

CheckOutcome check_counts(const CheckOptions& options) {
  for (long p : {2L, 3L}) {
    const Prime prime(p);
    for (const char* text : {"x1", "x1^2", "x1^3", "x1*x2", "x1^2+x2^2", "x1^2-x2^2"}) {
      const auto f = parse_polynomial(text);
      const int n = arity(f);
      const int mmax = std::min(n == 1 ? 8 : 4, max_depth(prime, n, options.budget));
      const auto counts = count_series(f, prime, mmax, options.budget);
      for (int m = 0; m <= mmax; ++m) {
        if (m > 0 && counts[m] > prime.pow(static_cast<unsigned long>(n)) * counts[m - 1]) {
          return {"poincare.counts", false, std::string("lifting bound fails for ") + text};
        }
        if (counts[m] != count_Nm_naive(f, prime, m, options.budget)) {
          return {"poincare.counts", false, std::string("lifting and enumeration differ for ") + text};
        }
      }
    }
  }
  return {"poincare.counts", true, "lifting tree against enumeration"};
}

CheckOutcome check_rationality(const CheckOptions& options) {
  for (long p : {2L, 3L}) {
    const Prime prime(p);
    for (const char* text : {"x1", "x1^2", "x1^3", "x1*x2", "x1^2+x2^2", "x1^2-x2^2"}) {
      const auto f = parse_polynomial(text);
      const int n = arity(f);
      const int mmax = std::min(n == 1 ? 11 : 10, max_depth(prime, n, options.budget));
      const auto report = poincare_report(f, prime, mmax, options.guard, options.budget);
      if (!report.rational) return {"poincare.rational", false, std::string("no verified fit for ") + text};
      const auto series = report.rational->expand(report.table.counts.size());
      for (std::size_t i = 0; i < series.size(); ++i) {
        if (series[i] != Rational(report.table.counts[i])) {
          return {"poincare.rational", false, std::string("expansion differs for ") + text};
        }
      }
      if (!report.all_checks_pass()) return {"poincare.identity", false, text};
    }
  }
  return {"poincare.rational", true, "corpus reproduced with guard " + std::to_string(options.guard)};
}

}  // namespace

std::vector<CheckOutcome> run_check_suite(const CheckOptions& options) {
  Rng rng(options.seed);
  std::vector<std::function<CheckOutcome()>> checks = {
      [&] { return check_sums(rng); },
      [&] { return check_tails(rng); },
      [&] { return check_wellorder(rng); },
      [] { return check_partition(); },
      [&] { return check_kcell_counting(rng); },
      [&] { return check_oracle(options); },
      [] { return check_linearity(); },
      [] { return check_gamma_fubini(); },
      [&] { return check_counts(options); },
      [&] { return check_rationality(options); },
  };
  std::vector<CheckOutcome> out;
  for (const auto& check : checks) {
    try {
      out.push_back(check());
    } catch (const Error& e) {
      out.push_back({"exception", false, std::string(error_name(e.kind())) + ": " + e.what()});
    }
  }
  return out;
}

}  // namespace padicint
