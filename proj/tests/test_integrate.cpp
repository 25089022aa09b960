#include <doctest.h>

#include <random>

#include "padicint/error.hpp"
#include "padicint/integrate.hpp"
#include "padicint/parse.hpp"

using namespace padicint;

namespace {

ConstructibleExpr expr(const char* text) { return parse_constructible(text); }

DomainVariable gamma_var(int index, std::vector<GammaRegionCell> cells) {
  DomainVariable v;
  v.sort = Sort::Gamma;
  v.index = index;
  v.gamma_cells = std::move(cells);
  return v;
}

GammaRegionCell region(GammaBound lower, GammaBound upper, long modulus = 1, long residue = 0) {
  return GammaRegionCell{lower, upper, modulus, residue};
}

GammaBound c(long v) { return GammaBound::constant(v); }
GammaBound none() { return GammaBound::none(); }
GammaBound lin(long a, long k, long n, long delta, int var) { return GammaBound::linear({a, k, n, delta}, var); }

DomainVariable k_var(int index, std::vector<KCell> cells) {
  DomainVariable v;
  v.sort = Sort::K;
  v.index = index;
  v.k_cells = std::move(cells);
  return v;
}

ErrorKind failure(const ConstructibleExpr& f, const Domain& d) {
  try {
    integrate(f, d);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("integration succeeded");
  return ErrorKind::Domain;
}

struct OracleCase {
  const char* integrand;
  GrowthBound growth;
};

}  // namespace

TEST_CASE("integrals over the unit ball") {
  for (long p : {2L, 3L}) {
    const Prime prime(p);
    const Domain ball = Domain::unit_ball(prime, 1);
    const Rational q(p);
    CHECK(integrate(expr("q^(-ord(x1))"), ball).evaluate(prime) == (1 - 1 / q) / (1 - 1 / (q * q)));
    CHECK(integrate(expr("ord(x1)"), ball).evaluate(prime) == (1 / q) / (1 - 1 / q));
    CHECK(integrate(expr("1"), ball).evaluate(prime) == 1);
  }
  CHECK(integrate(expr("q^(-ord(x1))"), Domain::unit_ball(Prime(2), 1)).evaluate(Prime(2)) == Rational(2, 3));
  CHECK(integrate(expr("q^(-ord(x1))"), Domain::unit_ball(Prime(3), 1)).evaluate(Prime(3)) == Rational(3, 4));
  CHECK(integrate(expr("ord(x1)"), Domain::unit_ball(Prime(3), 1)).evaluate(Prime(3)) == Rational(1, 2));
}

TEST_CASE("counting-measure integral over a Γ-cell") {
  Domain d;
  d.variables = {gamma_var(1, {region(c(1), none())})};
  CHECK(integrate(expr("q^(-g1)"), d) == AqElem::q_power(-2) * AqElem::inverse_factor(1));
}

TEST_CASE("errors") {
  Domain sum_all;
  sum_all.variables = {gamma_var(1, {region(c(0), none())})};
  CHECK(failure(expr("1"), sum_all) == ErrorKind::DivergentSum);
  CHECK(failure(expr("q^(g1)"), sum_all) == ErrorKind::DivergentSum);

  Domain unbounded{Prime(2), {k_var(1, {KCell{0, std::nullopt, 3, 1, 0, 1, 1, Prime(2)}})}};
  CHECK(failure(expr("1"), unbounded) == ErrorKind::InfiniteMeasure);

  const Domain ball = Domain::unit_ball(Prime(2), 1);
  CHECK(failure(expr("ord(x1^2 - x1)"), ball) == ErrorKind::NotFiberReducible);
  CHECK(failure(expr("ord(x2)"), ball) == ErrorKind::Domain);
  CHECK(failure(expr("q^(-g1)"), ball) == ErrorKind::Domain);

  // lin(1,1,2,0;g1) is only defined on odd g1
  Domain partial;
  partial.variables = {gamma_var(1, {region(c(0), c(9))})};
  CHECK(failure(expr("lin(1,1,2,0;g1)"), partial) == ErrorKind::DomainError);
}

TEST_CASE("oracle examples") {
  const Domain z2 = Domain::unit_ball(Prime(2), 1);
  OracleOptions o;
  o.depth = 6;
  const auto abs_x = brute_force_integrate(expr("q^(-ord(x1))"), z2, o);
  CHECK(abs(abs_x.value - Rational(2, 3)) <= Rational(1, 64));
  CHECK(abs(abs_x.value - Rational(2, 3)) <= abs_x.tail_bound);
  for (int depth : {0, 1, 3, 5}) {
    o.depth = depth;
    const auto one = brute_force_integrate(expr("1"), Domain::unit_ball(Prime(3), 1), o);
    CHECK(one.value == 1);
    CHECK(one.tail_bound == 0);
  }
  o.depth = 8;
  o.growth = GrowthBound{1, 0, 1};
  const auto ord_x = brute_force_integrate(expr("ord(x1)"), z2, o);
  CHECK(abs(ord_x.value - 1) <= ord_x.tail_bound);
  o.depth = 30;
  CHECK_THROWS_AS(brute_force_integrate(expr("1"), z2, o), Error);
}

TEST_CASE("symbolic integrals agree with the oracle") {
  const std::vector<OracleCase> corpus = {
      {"1", {1, 0, 0}},
      {"q^(-ord(x1))", {1, 0, 0}},
      {"ord(x1)", {1, 0, 1}},
      {"ord(x1)*q^(-ord(x1))", {1, 0, 1}},
      {"q^(-2*ord(x1))", {1, 0, 0}},
      {"ord(x1)^2 - 3*ord(x1) + q^(-ord(8*x1^3))", {5, 0, 2}},
      {"q^(ord(x1) - 2*ord(x1))", {1, 0, 0}},
  };
  for (long p : {2L, 3L}) {
    const Prime prime(p);
    const Domain ball = Domain::unit_ball(prime, 1);
    for (const auto& item : corpus) {
      const Rational exact = integrate(expr(item.integrand), ball).evaluate(prime);
      for (int depth = 4; depth <= 8; ++depth) {
        OracleOptions o;
        o.depth = depth;
        o.growth = item.growth;
        const auto r = brute_force_integrate(expr(item.integrand), ball, o);
        INFO(item.integrand, " p=", p, " depth=", depth);
        CHECK(abs(exact - r.value) <= r.tail_bound);
      }
    }
  }
}

TEST_CASE("two-variable integrals agree with the oracle") {
  for (long p : {2L, 3L}) {
    const Prime prime(p);
    const Domain ball = Domain::unit_ball(prime, 2);
    for (const char* text : {"ord(x1*x2)", "q^(-ord(x1^2*x2))", "ord(x1)*ord(x2)*q^(-ord(x2))"}) {
      const Rational exact = integrate(expr(text), ball).evaluate(prime);
      for (int depth : {3, 4, 5}) {
        OracleOptions o;
        o.depth = depth;
        o.growth = GrowthBound{2, 0, 2};
        o.refine = 1;
        const auto r = brute_force_integrate(expr(text), ball, o);
        INFO(text, " p=", p, " depth=", depth);
        CHECK(abs(exact - r.value) <= r.tail_bound);
      }
    }
  }
}

TEST_CASE("cells with shifted centers and congruences agree with the oracle") {
  const Prime three(3);
  // ord(x1 - 1) on the unit ball around 1, split by valuation parity and ac
  std::vector<KCell> cells;
  for (long k : {0L, 1L}) {
    for (long xi = 1; xi < 9; ++xi) {
      if (xi % 3 != 0) cells.push_back(KCell{1, -1, std::nullopt, 2, k, 2, xi, three});
    }
  }
  const Domain d{three, {k_var(1, cells)}};
  const auto f = expr("ord(x1 - 1)*q^(-ord(2*x1 - 2))");
  const AqElem exact = integrate(f, d);
  // the cells cover Z_3 minus the point 1; the coarser cover has another
  // A_q representation but the same value at q = 3
  const Domain coarse{three, {k_var(1, {KCell{1, -1, std::nullopt, 1, 0, 1, 1, three},
                                        KCell{1, -1, std::nullopt, 1, 0, 1, 2, three}})}};
  CHECK(exact.evaluate(three) == integrate(f, coarse).evaluate(three));
  for (int depth = 4; depth <= 7; ++depth) {
    OracleOptions o;
    o.depth = depth;
    o.growth = GrowthBound{1, 0, 1};
    const auto r = brute_force_integrate(f, d, o);
    CHECK(abs(exact.evaluate(three) - r.value) <= r.tail_bound);
  }
}

TEST_CASE("integration is linear") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<long> small(-3, 3);
  const char* pool[] = {"q^(-ord(x1))", "ord(x1)", "ord(x1)^2*q^(-ord(x1))", "q^(-3*ord(x1))", "1"};
  for (long p : {2L, 3L, 5L}) {
    const Domain ball = Domain::unit_ball(Prime(p), 1);
    for (int i = 0; i < 10; ++i) {
      const auto f = expr(pool[i % 5]);
      const auto g = expr(pool[(i * 3 + 1) % 5]);
      const AqElem a = AqElem(small(rng)) * AqElem::q_power(small(rng)) + AqElem::inverse_factor(2);
      const AqElem b = AqElem(small(rng)) * AqElem::inverse_factor(1, 2);
      const AqElem lhs = integrate(ConstructibleExpr(a) * f + ConstructibleExpr(b) * g, ball);
      CHECK(lhs == a * integrate(f, ball) + b * integrate(g, ball));
    }
  }
}

TEST_CASE("integration is additive over disjoint cells") {
  for (long p : {2L, 3L}) {
    const Prime prime(p);
    const auto f = expr("ord(x1)*q^(-ord(x1))");
    AqElem pieces;
    for (const auto& cell : partition_unit_ball(1, 3, prime)) {
      pieces += integrate(f, Domain{prime, {k_var(1, {cell})}});
    }
    CHECK(pieces.evaluate(prime) == integrate(f, Domain::unit_ball(prime, 1)).evaluate(prime));
    CHECK(pieces == integrate(f, Domain{prime, {k_var(1, partition_unit_ball(1, 3, prime))}}));
  }
  Domain whole;
  whole.variables = {gamma_var(1, {region(c(-3), none())})};
  Domain split;
  split.variables = {gamma_var(1, {region(c(-3), c(4)), region(c(3), none(), 2, 0), region(c(3), none(), 2, 1)})};
  const auto f = expr("g1^2*q^(-2*g1)");
  CHECK(integrate(f, whole) == integrate(f, split));
}

TEST_CASE("swapping independent Γ-variables") {
  const auto f = expr("g1*g2*q^(-g1 - 3*g2) + lin(2,1,3,0;g2)*q^(-2*g2 - g1)");
  Domain ab;
  ab.variables = {gamma_var(1, {region(c(-2), none())}), gamma_var(2, {region(c(0), none(), 3, 1)})};
  Domain ba;
  ba.variables = {ab.variables[1], ab.variables[0]};
  CHECK(integrate(f, ab) == integrate(f, ba));
}

TEST_CASE("parametric bounds, closed forms") {
  // sum_{g1 >= 0} sum_{g2 > g1} q^(-g1-g2) = q^-1 / ((1-q^-1)(1-q^-2))
  Domain d;
  d.variables = {gamma_var(1, {region(c(-1), none())}), gamma_var(2, {region(lin(1, 0, 1, 0, 1), none())})};
  CHECK(integrate(expr("q^(-g1 - g2)"), d) ==
        AqElem::q_power(-1) * AqElem::inverse_factor(1) * AqElem::inverse_factor(2));
  // lower bound g1/2 on even g1 only
  Domain half;
  half.variables = {gamma_var(1, {region(c(-1), none())}), gamma_var(2, {region(lin(1, 0, 2, 0, 1), none())})};
  CHECK(integrate(expr("q^(-g1 - g2)"), half) ==
        AqElem::q_power(-1) * AqElem::inverse_factor(1) * AqElem::inverse_factor(3));
}

TEST_CASE("parametric bounds agree with direct summation") {
  // g1 in (-1, 7); g2 in (-1, g1 + 3); g3 in (g2, 5) with g3 odd
  Domain d;
  d.variables = {gamma_var(1, {region(c(-1), c(7))}), gamma_var(2, {region(c(-1), lin(1, 0, 1, 3, 1))}),
                 gamma_var(3, {region(lin(1, 0, 1, 0, 2), c(5), 2, 1)})};
  const auto f = expr("g3*q^(-g1 + 2*g2 - g3) + g1*g2");
  const AqElem exact = integrate(f, d);
  for (long q : {2L, 3L, 5L}) {
    Rational direct = 0;
    for (long g1 = 0; g1 < 7; ++g1) {
      for (long g2 = 0; g2 < g1 + 3; ++g2) {
        for (long g3 = g2 + 1; g3 < 5; ++g3) {
          if (g3 % 2 == 0) continue;
          direct += Rational(g3) * rpow(Rational(q), -g1 + 2 * g2 - g3) + Rational(g1 * g2);
        }
      }
    }
    CHECK(exact.evaluate(Rational(q)) == direct);
  }
  const auto r = brute_force_integrate(f, Domain{Prime(3), d.variables}, OracleOptions{});
  CHECK(r.value == exact.evaluate(Prime(3)));
  CHECK(r.tail_bound == 0);
}

TEST_CASE("prepared linear factors with strides") {
  // g1 in (0, 30) with g1 = 2 mod 3; g2 in (lin(2,2,3,1;g1), 40) with g2 = 1 mod 4
  Domain d;
  d.variables = {gamma_var(1, {region(c(0), c(30), 3, 2)}),
                 gamma_var(2, {region(lin(2, 2, 3, 1, 1), c(40), 4, 1)})};
  const auto f = expr("lin(2,2,3,1;g1)*q^(-lin(1,1,4,0;g2)) + q^(-g1)");
  const AqElem exact = integrate(f, d);
  for (long q : {2L, 3L}) {
    Rational direct = 0;
    for (long g1 = 1; g1 < 30; ++g1) {
      if (g1 % 3 != 2) continue;
      const long bound = 2 * (g1 - 2) / 3 + 1;
      for (long g2 = bound + 1; g2 < 40; ++g2) {
        if (mod_floor(g2, 4) != 1) continue;
        direct += Rational(bound) * rpow(Rational(q), -(g2 - 1) / 4) + rpow(Rational(q), -g1);
      }
    }
    CHECK(exact.evaluate(Rational(q)) == direct);
  }
}

TEST_CASE("mixed Γ and K variables") {
  const Prime two(2);
  Domain d{two, {gamma_var(1, {region(c(-1), c(4))}), k_var(1, {})}};
  d.variables[1].unit_ball = true;
  const auto f = expr("g1*q^(-ord(x1)) + q^(-g1)*ord(x1)");
  const AqElem exact = integrate(f, d);
  OracleOptions o;
  o.depth = 7;
  o.growth = GrowthBound{4, 0, 1};
  const auto r = brute_force_integrate(f, d, o);
  CHECK(abs(exact.evaluate(two) - r.value) <= r.tail_bound);
  // the sum over g1 in {0..3} factors out
  const AqElem ball_abs = integrate(expr("q^(-ord(x1))"), Domain::unit_ball(two, 1));
  const AqElem ball_ord = integrate(expr("ord(x1)"), Domain::unit_ball(two, 1));
  CHECK(exact == AqElem(6) * ball_abs + (AqElem(1) + AqElem::q_power(-1) + AqElem::q_power(-2) + AqElem::q_power(-3)) * ball_ord);
}
