#include <doctest.h>

#include <random>

#include "padicint/error.hpp"
#include "padicint/json_io.hpp"
#include "padicint/parse.hpp"

using namespace padicint;

TEST_CASE("polynomials") {
  const Polynomial f = parse_polynomial("x1^2 + x2^2");
  CHECK(f.num_vars() == 2);
  CHECK(f == Polynomial::variable(0).pow(2) + Polynomial::variable(1).pow(2));
  CHECK(parse_polynomial("x1*x2") == Polynomial::variable(0) * Polynomial::variable(1));
  CHECK(parse_polynomial("(x1 - 1)^2") == parse_polynomial("x1^2 - 2*x1 + 1"));
  CHECK(parse_polynomial("-3") == Polynomial(Rational(-3)));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_polynomial("x1^");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 3);
  }
  try {
    parse_polynomial("x1 +\n  * x2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_polynomial("x0"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x1"), ParseError);
  CHECK_THROWS_AS(parse_constructible("x1 + 1"), ParseError);
  CHECK_THROWS_AS(parse_constructible("lin(1,3,2,0;g1)"), ParseError);
}

TEST_CASE("polynomial rendering round trips") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> exponent(0, 3);
  for (int i = 0; i < 200; ++i) {
    Polynomial f;
    for (int t = 0; t < 4; ++t) f.add_term({exponent(rng), exponent(rng), exponent(rng)}, Rational(coeff(rng)));
    const Polynomial back = parse_polynomial(f.to_string());
    CHECK(back == f);
    CHECK(back.to_string() == f.to_string());
  }
}

TEST_CASE("constructible expressions round trip") {
  for (const char* text : {"q^(-ord(x1))", "ord(x1)*q^(-2*ord(x1))", "1 + q^-3", "lin(2,1,3,5;g1)*q^(-g1)",
                           "ord(x1*x2) + g2^2", "-q^(g1 - ord(x1 - 1))"}) {
    const auto f = parse_constructible(text);
    CHECK(parse_constructible(f.to_string()) == f);
  }
}

TEST_CASE("evaluation of constructible functions") {
  const Prime two(2);
  Assignment at;
  at.k[1] = 4;
  CHECK(eval_constructible(parse_constructible("ord(x1)*q^(-ord(x1))"), at, two) == Rational(1, 2));
  CHECK(eval_constructible(parse_constructible("q^0"), at, two) == 1);
  at.k[1] = 2;
  at.k[2] = 6;
  CHECK(eval_constructible(parse_constructible("ord(x1*x2)"), at, two) == 2);
  at.k[1] = 0;
  try {
    eval_constructible(parse_constructible("ord(x1)"), at, two);
    FAIL("expected UndefinedAtPoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedAtPoint);
  }
  Assignment g;
  g.gamma[1] = 7;
  CHECK(eval_constructible(parse_constructible("lin(2,1,3,5;g1)"), g, two) == 9);
}

TEST_CASE("ord atoms are normalized into monomial and content parts") {
  const Prime three(3);
  const Affine a = normalize_ord(parse_polynomial("9*x1^2*x2"), three);
  CHECK(a.constant == 2);
  CHECK(a.coeffs.at(Symbol::ord(Polynomial::variable(0))) == 2);
  CHECK(a.coeffs.at(Symbol::ord(Polynomial::variable(1))) == 1);
}

TEST_CASE("JSON cells") {
  const auto u = gamma_union_from_json(parse_json_text(R"([{"lower":null,"upper":-2,"mod":3,"res":1}])"));
  REQUIRE(u.cells.size() == 1);
  CHECK(u.cells[0] == GammaCell{std::nullopt, -2, 3, 1});
  CHECK(to_json(u.cells[0]).dump() == R"({"lower":null,"upper":-2,"mod":3,"res":1})");
  const KCell k = kcell_from_json(parse_json_text(
      R"({"center":"1/3","lower":-1,"upper":null,"mod":1,"res":0,"acDepth":1,"acValue":2,"p":3})"));
  CHECK(k.center == Rational(1, 3));
  CHECK(kcell_from_json(to_json(k)).center == k.center);
  CHECK_THROWS_AS(gamma_cell_from_json(parse_json_text(R"({"mod":2,"res":5})")), Error);
  try {
    parse_json_text("{\n  \"mod\": ,\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("JSON domains") {
  const Domain d = domain_from_json(parse_json_text(R"({"p": 3, "variables": [
      {"name": "g1", "region": [{"lower": -1, "upper": 5}]},
      {"name": "g2", "region": [{"lower": {"lin": [1, 0, 1, 0], "var": "g1"}, "upper": 9}]},
      {"name": "x1", "region": "unit_ball"}]})"));
  CHECK(d.prime == Prime(3));
  REQUIRE(d.variables.size() == 3);
  CHECK(d.variables[1].gamma_cells[0].lower.kind == GammaBound::Kind::Linear);
  CHECK(d.variables[2].unit_ball);
  // bounds may only refer to earlier Γ-variables
  CHECK_THROWS_AS(domain_from_json(parse_json_text(R"({"variables": [
      {"name": "g2", "region": [{"lower": {"lin": [1, 0, 1, 0], "var": "g1"}}]},
      {"name": "g1", "region": [{"lower": 0}]}]})")),
                  Error);
  // overlapping K-cells are rejected
  CHECK_THROWS_AS(domain_from_json(parse_json_text(R"({"p": 2, "variables": [{"name": "x1", "region": [
      {"center": "0", "lower": -1, "acValue": 1}, {"center": "0", "lower": 0, "acValue": 1}]}]})")),
                  Error);
}
