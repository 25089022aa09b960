#include <doctest.h>

#include <string>

#include "padicint/padicint.h"

namespace {

struct Context {
  padic_context* ctx = nullptr;
  explicit Context(long p) { REQUIRE(padic_context_new(p, &ctx) == PADIC_OK); }
  ~Context() { padic_context_free(ctx); }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;
};

struct Call {
  padic_status status = PADIC_INTERNAL_ERROR;
  std::string text;
};

template <typename F>
Call call(F&& f) {
  char* out = nullptr;
  Call c;
  c.status = f(&out);
  if (out) {
    c.text = out;
    padic_string_free(out);
  }
  return c;
}

const char* kUnitCell = R"({"center":"0","lower":-1,"upper":null})";

}  // namespace

TEST_CASE("context lifecycle") {
  padic_context* ctx = nullptr;
  CHECK(padic_context_new(4, &ctx) == PADIC_DOMAIN_ERROR);
  CHECK(ctx == nullptr);
  CHECK(padic_context_new(2, nullptr) == PADIC_INVALID_ARGUMENT);
  Context c(3);
  CHECK(padic_set_prime(c.ctx, 1) == PADIC_DOMAIN_ERROR);
  CHECK(std::string(padic_last_error_name(c.ctx)) == "Domain");
  CHECK(padic_set_prime(c.ctx, 5) == PADIC_OK);
  CHECK(padic_set_depth(c.ctx, -1) == PADIC_INVALID_ARGUMENT);
  CHECK(std::string(padic_version()).size() > 0);
  padic_context_free(nullptr);
}

TEST_CASE("valuation and angular component") {
  Context c(3);
  auto r = call([&](char** o) { return padic_ord(c.ctx, "54", o); });
  CHECK(r.status == PADIC_OK);
  CHECK(r.text == "3");
  r = call([&](char** o) { return padic_ord(c.ctx, "0", o); });
  CHECK(r.text == "inf");
  r = call([&](char** o) { return padic_ord(c.ctx, "5/9", o); });
  CHECK(r.text == "-2");
  r = call([&](char** o) { return padic_ac(c.ctx, "-1", 1, o); });
  CHECK(r.text == "2");
  r = call([&](char** o) { return padic_ord(c.ctx, "1/x", o); });
  CHECK(r.status == PADIC_PARSE_ERROR);
}

TEST_CASE("measure, sums and minima") {
  Context c(2);
  auto r = call([&](char** o) { return padic_measure(c.ctx, kUnitCell, o); });
  REQUIRE(r.status == PADIC_OK);
  CHECK(r.text.rfind("1\n", 0) == 0);

  r = call([&](char** o) { return padic_wmin(c.ctx, R"([{"lower":-6,"upper":-4},{"lower":3}])", o); });
  REQUIRE(r.status == PADIC_OK);
  // bounds are strict: the union is {-5} and {4, 5, ...}, and 4 precedes -5
  CHECK(r.text.rfind("4", 0) == 0);

  REQUIRE(padic_set_prime(c.ctx, 3) == PADIC_OK);
  REQUIRE(padic_set_json(c.ctx, 1) == PADIC_OK);
  r = call([&](char** o) { return padic_gsum(c.ctx, R"({"lower":0,"upper":5,"mod":2,"res":0})", 2, nullptr, o); });
  REQUIRE(r.status == PADIC_OK);
  CHECK(r.text.find(R"("value": "10/81")") != std::string::npos);

  r = call([&](char** o) { return padic_gsum(c.ctx, R"({"lower":0})", 0, nullptr, o); });
  CHECK(r.status == PADIC_DOMAIN_ERROR);
}

TEST_CASE("errors carry a position") {
  Context c(2);
  auto r = call([&](char** o) { return padic_integrate(c.ctx, "q^(ord(x1)", nullptr, o); });
  CHECK(r.status == PADIC_PARSE_ERROR);
  CHECK(r.text.empty());
  const std::string msg = padic_last_error(c.ctx);
  CHECK(msg.find("line 1, column 11") != std::string::npos);
  CHECK(std::string(padic_last_error_name(c.ctx)) == "ParseError");

  r = call([&](char** o) { return padic_wmin(c.ctx, R"([{"lower": }])", o); });
  CHECK(r.status == PADIC_PARSE_ERROR);

  r = call([&](char** o) { return padic_integrate(c.ctx, "", nullptr, o); });
  CHECK(r.status == PADIC_PARSE_ERROR);
  r = call([&](char** o) { return padic_integrate(c.ctx, nullptr, nullptr, o); });
  CHECK(r.status == PADIC_INVALID_ARGUMENT);
}

TEST_CASE("integration") {
  Context c(2);
  auto r = call([&](char** o) { return padic_integrate(c.ctx, "ord(x1)", nullptr, o); });
  REQUIRE(r.status == PADIC_OK);
  CHECK(r.text.rfind("1\n", 0) == 0);
  REQUIRE(padic_set_prime(c.ctx, 3) == PADIC_OK);
  r = call([&](char** o) { return padic_integrate(c.ctx, "q^(-ord(x1))", nullptr, o); });
  REQUIRE(r.status == PADIC_OK);
  CHECK(r.text.rfind("3/4\n", 0) == 0);
  REQUIRE(padic_set_depth(c.ctx, 5) == PADIC_OK);
  r = call([&](char** o) { return padic_integrate_oracle(c.ctx, "q^(-ord(x1))", nullptr, o); });
  CHECK(r.status == PADIC_OK);

  // t - 1 in 3^k (1 + 3 Z_3), k >= 1: sum of k 3^(-k-1) is 1/4
  const char* shifted = R"({"p":3,"variables":[{"name":"x1","region":[{"center":"1","lower":0,"acValue":1}]}]})";
  r = call([&](char** o) { return padic_integrate(c.ctx, "ord(x1 - 1)", shifted, o); });
  REQUIRE(r.status == PADIC_OK);
  CHECK(r.text.rfind("1/4\n", 0) == 0);
  REQUIRE(padic_set_prime(c.ctx, 2) == PADIC_OK);
  r = call([&](char** o) { return padic_integrate(c.ctx, "ord(x1 - 1)", shifted, o); });
  CHECK(r.status == PADIC_DOMAIN_ERROR);
}

TEST_CASE("budget") {
  Context c(3);
  REQUIRE(padic_set_budget(c.ctx, 100) == PADIC_OK);
  auto r = call([&](char** o) { return padic_poincare(c.ctx, "x1*x2", 8, o); });
  CHECK(r.status == PADIC_BUDGET_EXCEEDED);
  CHECK(std::string(padic_last_error_name(c.ctx)) == "BudgetExceeded");
}

TEST_CASE("poincare json is deterministic") {
  Context c(3);
  REQUIRE(padic_set_json(c.ctx, 1) == PADIC_OK);
  const auto a = call([&](char** o) { return padic_poincare(c.ctx, "x1^2", 8, o); });
  REQUIRE(padic_set_threads(c.ctx, 3) == PADIC_OK);
  const auto b = call([&](char** o) { return padic_poincare(c.ctx, "x1^2", 8, o); });
  REQUIRE(a.status == PADIC_OK);
  CHECK(a.text == b.text);
  CHECK(a.text.find(R"("den": "1 - 3*T^2")") != std::string::npos);
  CHECK(a.text.find(R"("num": "1 + T")") != std::string::npos);
}
