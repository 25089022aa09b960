#include "padicint/padicint.h"

#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>

#include "padicint/check.hpp"
#include "padicint/error.hpp"
#include "padicint/integrate.hpp"
#include "padicint/json_io.hpp"
#include "padicint/parse.hpp"
#include "padicint/poincare.hpp"

using namespace padicint;

struct padic_context {
  Prime prime{2};
  std::uint64_t budget = kDefaultBudget;
  int depth = 6;
  int guard = 5;
  int refine = 0;
  unsigned threads = 1;
  bool json = false;
  GrowthBound growth;
  std::string error;
  std::string error_name;
};

namespace {

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

padic_status fail(padic_context* ctx, padic_status status, std::string_view name, const std::string& message) {
  ctx->error = message;
  ctx->error_name = std::string(name);
  return status;
}

struct NullArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Runs body, storing its string result in *out and mapping exceptions to
// status codes.
template <typename Body>
padic_status run(padic_context* ctx, char** out, Body&& body) {
  if (!ctx) return PADIC_INVALID_ARGUMENT;
  if (!out) return fail(ctx, PADIC_INVALID_ARGUMENT, "InvalidArgument", "output pointer is NULL");
  *out = nullptr;
  ctx->error.clear();
  ctx->error_name.clear();
  try {
    const std::string text = body();
    *out = duplicate(text);
    if (!*out) return fail(ctx, PADIC_INTERNAL_ERROR, "InternalError", "out of memory");
    return PADIC_OK;
  } catch (const NullArgument& e) {
    return fail(ctx, PADIC_INVALID_ARGUMENT, "InvalidArgument", e.what());
  } catch (const ParseError& e) {
    return fail(ctx, PADIC_PARSE_ERROR, error_name(e.kind()), e.what());
  } catch (const Error& e) {
    const padic_status status = e.kind() == ErrorKind::BudgetExceeded ? PADIC_BUDGET_EXCEEDED : PADIC_DOMAIN_ERROR;
    return fail(ctx, status, error_name(e.kind()), e.what());
  } catch (const std::exception& e) {
    return fail(ctx, PADIC_INTERNAL_ERROR, "InternalError", e.what());
  }
}

std::string need(const char* s, const char* what) {
  if (!s) throw NullArgument(std::string(what) + " is NULL");
  return s;
}

std::string dump(const Json& j) { return j.dump(2); }

std::string value_and_form(padic_context* ctx, Json j, const AqElem& a) {
  const Rational value = a.evaluate(ctx->prime);
  if (ctx->json) {
    j["p"] = ctx->prime.value();
    j["aq"] = a.to_string();
    j["value"] = to_string(value);
    return dump(j);
  }
  return to_string(value) + "\nA_q: " + a.to_string();
}

UPoly weight_polynomial(const std::string& text) {
  const Polynomial p = parse_polynomial(text);
  if (p.num_vars() > 1) throw Error(ErrorKind::Domain, "the weight may only use x1 (the summation index)");
  std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(0, p.total_degree()) + 1));
  for (const auto& [e, c] : p.terms()) coeffs[e.empty() ? 0 : static_cast<std::size_t>(e[0])] += c;
  return UPoly(coeffs);
}

Domain domain_for(padic_context* ctx, const ConstructibleExpr& f, const char* domain_json) {
  if (domain_json) {
    const Json j = parse_json_text(domain_json);
    if (j.is_object() && j.contains("p") && j.at("p") != Json(ctx->prime.value())) {
      throw Error(ErrorKind::Domain, "domain prime differs from --p");
    }
    return domain_from_json(j, ctx->prime.value());
  }
  if (!f.gamma_variables().empty()) {
    throw Error(ErrorKind::Domain, "integrands with Γ-variables need an explicit domain");
  }
  const auto ks = f.k_variables();
  return Domain::unit_ball(ctx->prime, ks.empty() ? 1 : *ks.rbegin());
}

}  // namespace

extern "C" {

padic_status padic_context_new(long prime, padic_context** out) {
  if (!out) return PADIC_INVALID_ARGUMENT;
  *out = nullptr;
  try {
    auto* ctx = new padic_context;
    ctx->prime = Prime(prime);
    *out = ctx;
    return PADIC_OK;
  } catch (const Error&) {
    return PADIC_DOMAIN_ERROR;
  } catch (const std::exception&) {
    return PADIC_INTERNAL_ERROR;
  }
}

void padic_context_free(padic_context* ctx) { delete ctx; }

padic_status padic_set_prime(padic_context* ctx, long prime) {
  if (!ctx) return PADIC_INVALID_ARGUMENT;
  try {
    ctx->prime = Prime(prime);
    return PADIC_OK;
  } catch (const Error& e) {
    return fail(ctx, PADIC_DOMAIN_ERROR, error_name(e.kind()), e.what());
  }
}

padic_status padic_set_budget(padic_context* ctx, uint64_t budget) {
  if (!ctx) return PADIC_INVALID_ARGUMENT;
  if (budget == 0) return fail(ctx, PADIC_INVALID_ARGUMENT, "InvalidArgument", "budget must be positive");
  ctx->budget = budget;
  return PADIC_OK;
}

padic_status padic_set_depth(padic_context* ctx, int depth) {
  if (!ctx) return PADIC_INVALID_ARGUMENT;
  if (depth < 0) return fail(ctx, PADIC_INVALID_ARGUMENT, "InvalidArgument", "depth must be >= 0");
  ctx->depth = depth;
  return PADIC_OK;
}

padic_status padic_set_guard(padic_context* ctx, int guard) {
  if (!ctx) return PADIC_INVALID_ARGUMENT;
  if (guard < 0) return fail(ctx, PADIC_INVALID_ARGUMENT, "InvalidArgument", "guard must be >= 0");
  ctx->guard = guard;
  return PADIC_OK;
}

padic_status padic_set_refine(padic_context* ctx, int refine) {
  if (!ctx) return PADIC_INVALID_ARGUMENT;
  if (refine < 0) return fail(ctx, PADIC_INVALID_ARGUMENT, "InvalidArgument", "refine must be >= 0");
  ctx->refine = refine;
  return PADIC_OK;
}

padic_status padic_set_threads(padic_context* ctx, unsigned threads) {
  if (!ctx) return PADIC_INVALID_ARGUMENT;
  ctx->threads = threads == 0 ? 1 : threads;
  return PADIC_OK;
}

padic_status padic_set_json(padic_context* ctx, int json) {
  if (!ctx) return PADIC_INVALID_ARGUMENT;
  ctx->json = json != 0;
  return PADIC_OK;
}

padic_status padic_set_growth(padic_context* ctx, const char* scale, long exponent, int power) {
  if (!ctx) return PADIC_INVALID_ARGUMENT;
  if (power < 0) return fail(ctx, PADIC_INVALID_ARGUMENT, "InvalidArgument", "power must be >= 0");
  try {
    ctx->growth = GrowthBound{scale ? parse_rational(scale) : Rational(1), exponent, power};
    return PADIC_OK;
  } catch (const Error& e) {
    return fail(ctx, PADIC_PARSE_ERROR, error_name(e.kind()), e.what());
  }
}

const char* padic_last_error(const padic_context* ctx) { return ctx ? ctx->error.c_str() : ""; }

const char* padic_last_error_name(const padic_context* ctx) { return ctx ? ctx->error_name.c_str() : ""; }

void padic_string_free(char* s) { std::free(s); }

const char* padic_version(void) { return "1.0.0"; }

padic_status padic_ord(padic_context* ctx, const char* x, char** out) {
  return run(ctx, out, [&] {
    const std::string text = need(x, "x");
    const ExtendedInteger v = ord(parse_rational(text), ctx->prime);
    const std::string value = v.is_infinite() ? "inf" : std::to_string(v.value());
    if (!ctx->json) return value;
    return dump(Json{{"x", text}, {"p", ctx->prime.value()}, {"ord", value}});
  });
}

padic_status padic_ac(padic_context* ctx, const char* x, int m, char** out) {
  return run(ctx, out, [&] {
    const std::string text = need(x, "x");
    if (m < 1) throw Error(ErrorKind::Domain, "ac depth must be >= 1");
    const AngularResidue r = ac(parse_rational(text), ctx->prime, m);
    if (!ctx->json) return std::to_string(r.residue);
    return dump(Json{{"x", text}, {"p", ctx->prime.value()}, {"m", m}, {"ac", std::to_string(r.residue)}});
  });
}

padic_status padic_measure(padic_context* ctx, const char* kcells_json, char** out) {
  return run(ctx, out, [&] {
    Json j = parse_json_text(need(kcells_json, "cells"));
    if (!j.is_array()) j = Json::array({j});
    for (auto& c : j) {
      if (c.is_object() && !c.contains("p")) c["p"] = ctx->prime.value();
    }
    const auto cells = kcells_from_json(j);
    AqElem total;
    for (const auto& c : cells) {
      if (!(c.prime == ctx->prime)) throw Error(ErrorKind::Domain, "cell prime differs from --p");
      total += kcell_measure(c);
    }
    return value_and_form(ctx, Json{{"cells", cells.size()}}, total);
  });
}

padic_status padic_gsum(padic_context* ctx, const char* cells_json, long N, const char* weight, char** out) {
  return run(ctx, out, [&] {
    const GammaCellUnion u = gamma_union_from_json(parse_json_text(need(cells_json, "cells")));
    const UPoly w = weight ? weight_polynomial(weight) : UPoly(Rational(1));
    AqElem total;
    for (const auto& c : u.cells) total += weight || N < 1 ? weighted_sum(c, w, N) : geom_sum(c, N);
    return value_and_form(ctx, Json{{"N", N}, {"weight", w.to_string("tau")}}, total);
  });
}

padic_status padic_wmin(padic_context* ctx, const char* cells_json, char** out) {
  return run(ctx, out, [&] {
    const GammaCellUnion u = gamma_union_from_json(parse_json_text(need(cells_json, "cells")));
    const std::string value = std::to_string(wellorder_min(u));
    if (!ctx->json) return value;
    return dump(Json{{"min", value}});
  });
}

padic_status padic_integrate(padic_context* ctx, const char* integrand, const char* domain_json, char** out) {
  return run(ctx, out, [&] {
    const auto f = parse_constructible(need(integrand, "integrand"));
    const Domain d = domain_for(ctx, f, domain_json);
    return value_and_form(ctx, Json{{"integrand", f.to_string()}}, integrate(f, d));
  });
}

padic_status padic_integrate_oracle(padic_context* ctx, const char* integrand, const char* domain_json,
                                    char** out) {
  return run(ctx, out, [&] {
    const auto f = parse_constructible(need(integrand, "integrand"));
    const Domain d = domain_for(ctx, f, domain_json);
    OracleOptions o;
    o.depth = ctx->depth;
    o.budget = ctx->budget;
    o.growth = ctx->growth;
    o.refine = ctx->refine;
    const OracleResult r = brute_force_integrate(f, d, o);
    if (ctx->json) {
      return dump(Json{{"integrand", f.to_string()},
                       {"p", ctx->prime.value()},
                       {"depth", ctx->depth},
                       {"value", to_string(r.value)},
                       {"tailBound", to_string(r.tail_bound)},
                       {"evaluated", std::to_string(r.evaluated)},
                       {"skipped", std::to_string(r.skipped)}});
    }
    return to_string(r.value) + "\ntail bound: " + to_string(r.tail_bound) +
           "\nclasses evaluated: " + std::to_string(r.evaluated) + ", skipped: " + std::to_string(r.skipped);
  });
}

padic_status padic_poincare(padic_context* ctx, const char* polynomial, int mmax, char** out) {
  return run(ctx, out, [&] {
    const Polynomial f = parse_polynomial(need(polynomial, "polynomial"));
    int depth = mmax;
    if (depth < 0) depth = std::min(12, max_depth(ctx->prime, arity(f), ctx->budget));
    const auto report = poincare_report(f, ctx->prime, depth, ctx->guard, ctx->budget, ctx->threads);
    if (ctx->json) return dump(to_json(report));
    std::string text = report.to_string();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    return text;
  });
}

padic_status padic_check(padic_context* ctx, char** out) {
  bool all_ok = true;
  const padic_status status = run(ctx, out, [&] {
    CheckOptions options;
    options.budget = ctx->budget;
    options.depth = std::max(4, std::min(ctx->depth, 8));
    options.guard = std::max(ctx->guard, 3);
    const auto results = run_check_suite(options);
    Json j = Json::array();
    std::string text;
    for (const auto& r : results) {
      all_ok = all_ok && r.ok;
      j.push_back(Json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
      text += (r.ok ? "PASS " : "FAIL ") + r.name + "  " + r.detail + "\n";
    }
    if (ctx->json) return dump(Json{{"checks", j}, {"ok", all_ok}});
    return text + (all_ok ? "all checks passed" : "some checks FAILED");
  });
  if (status == PADIC_OK && !all_ok) {
    fail(ctx, PADIC_CHECK_FAILED, "CheckFailed", "cross-validation mismatch");
    return PADIC_CHECK_FAILED;
  }
  return status;
}

}  // extern "C"
