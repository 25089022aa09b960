// Command-line front end; talks to the library only through padicint.h.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "padicint/padicint.h"

namespace {

struct Context {
  padic_context* ctx = nullptr;
  ~Context() { padic_context_free(ctx); }
};

// Arguments naming an existing file are replaced by its contents, so JSON
// can be passed inline or by path.
std::string file_or_text(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int report(padic_context* ctx, padic_status status, char* out) {
  if (status == PADIC_OK || status == PADIC_CHECK_FAILED) {
    if (out) std::printf("%s\n", out);
    padic_string_free(out);
    if (status == PADIC_CHECK_FAILED) std::fprintf(stderr, "error: %s\n", padic_last_error(ctx));
    return status;
  }
  std::fprintf(stderr, "error: %s: %s\n", padic_last_error_name(ctx), padic_last_error(ctx));
  return status == PADIC_PARSE_ERROR || status == PADIC_BUDGET_EXCEEDED ? status : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact p-adic integration, measures and Poincaré series"};
  app.require_subcommand(1);
  app.fallthrough();

  long prime = 2;
  std::uint64_t budget = 100'000'000;
  int depth = 6;
  int guard = 5;
  unsigned threads = 1;
  bool json = false;
  app.add_option("--p", prime, "prime")->capture_default_str();
  app.add_option("--budget", budget, "enumeration budget (PADIC_BUDGET overrides)")->capture_default_str();
  app.add_option("--depth", depth, "oracle depth")->capture_default_str();
  app.add_option("--guard", guard, "verification margin for rational fits")->capture_default_str();
  app.add_option("--threads", threads, "worker threads for counting")->capture_default_str();
  app.add_flag("--json", json, "JSON output");

  std::string x;
  auto* ord_cmd = app.add_subcommand("ord", "p-adic valuation of a rational");
  ord_cmd->add_option("x", x, "rational a/b")->required();

  int ac_depth = 1;
  auto* ac_cmd = app.add_subcommand("ac", "angular component mod p^m");
  ac_cmd->add_option("x", x, "rational a/b")->required();
  ac_cmd->add_option("-m", ac_depth, "depth")->capture_default_str();

  std::string cells;
  auto* measure_cmd = app.add_subcommand("measure", "Haar measure of K-cells");
  measure_cmd->add_option("cells", cells, "K-cell JSON (file or text)")->required();

  long N = 1;
  std::string weight;
  auto* gsum_cmd = app.add_subcommand("gsum", "sum of weight(tau) q^(-N tau) over a Γ-cell union");
  gsum_cmd->add_option("cells", cells, "Γ-cell JSON (file or text)")->required();
  gsum_cmd->add_option("-N", N, "decay exponent")->capture_default_str();
  gsum_cmd->add_option("--weight", weight, "polynomial in x1 standing for tau");

  auto* wmin_cmd = app.add_subcommand("wmin", "◁-least element of a Γ-cell union");
  wmin_cmd->add_option("cells", cells, "Γ-cell JSON (file or text)")->required();

  std::string integrand;
  std::string domain;
  bool oracle = false;
  int refine = 0;
  std::string growth_scale = "1";
  long growth_exponent = 0;
  int growth_power = 0;
  auto* integrate_cmd = app.add_subcommand("integrate", "exact integral of a constructible function");
  integrate_cmd->add_option("integrand", integrand, "e.g. \"q^(-ord(x1))\"")->required();
  integrate_cmd->add_option("domain", domain, "domain JSON (file or text); default unit ball");
  integrate_cmd->add_flag("--oracle", oracle, "residue enumeration with certified tail bound");
  integrate_cmd->add_option("--refine", refine, "re-enumerate skipped classes this many digits deeper");
  integrate_cmd->add_option("--growth-scale", growth_scale, "C in |f| <= C (1+w)^d q^(c w)");
  integrate_cmd->add_option("--growth-exponent", growth_exponent, "c in the growth bound");
  integrate_cmd->add_option("--growth-power", growth_power, "d in the growth bound");

  std::string polynomial;
  int mmax = -1;
  auto* poincare_cmd = app.add_subcommand("poincare", "counts N_m and the rational Poincaré series");
  poincare_cmd->add_option("polynomial", polynomial, "e.g. \"x1^2 - x2^2\"")->required();
  poincare_cmd->add_option("--mmax", mmax, "largest m (default: as deep as the budget allows, at most 12)");

  auto* check_cmd = app.add_subcommand("check", "run the oracle-versus-symbolic suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (const char* env = std::getenv("PADIC_BUDGET")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (!*env || *end || value == 0) {
      std::fprintf(stderr, "error: Parse: PADIC_BUDGET must be a positive integer\n");
      return 2;
    }
    budget = value;
  }

  Context c;
  if (padic_context_new(prime, &c.ctx) != PADIC_OK) {
    std::fprintf(stderr, "error: Domain: %ld is not a prime\n", prime);
    return 1;
  }
  padic_context* ctx = c.ctx;
  if (padic_set_budget(ctx, budget) != PADIC_OK || padic_set_depth(ctx, depth) != PADIC_OK ||
      padic_set_guard(ctx, guard) != PADIC_OK || padic_set_threads(ctx, threads) != PADIC_OK ||
      padic_set_refine(ctx, refine) != PADIC_OK || padic_set_json(ctx, json ? 1 : 0) != PADIC_OK) {
    std::fprintf(stderr, "error: %s\n", padic_last_error(ctx));
    return 1;
  }
  if (const padic_status s = padic_set_growth(ctx, growth_scale.c_str(), growth_exponent, growth_power); s != PADIC_OK) {
    return report(ctx, s, nullptr);
  }

  char* out = nullptr;
  padic_status status = PADIC_OK;
  if (*ord_cmd) {
    status = padic_ord(ctx, x.c_str(), &out);
  } else if (*ac_cmd) {
    status = padic_ac(ctx, x.c_str(), ac_depth, &out);
  } else if (*measure_cmd) {
    status = padic_measure(ctx, file_or_text(cells).c_str(), &out);
  } else if (*gsum_cmd) {
    status = padic_gsum(ctx, file_or_text(cells).c_str(), N, weight.empty() ? nullptr : weight.c_str(), &out);
  } else if (*wmin_cmd) {
    status = padic_wmin(ctx, file_or_text(cells).c_str(), &out);
  } else if (*integrate_cmd) {
    const std::string d = domain.empty() ? std::string() : file_or_text(domain);
    const char* dp = domain.empty() ? nullptr : d.c_str();
    status = oracle ? padic_integrate_oracle(ctx, integrand.c_str(), dp, &out)
                    : padic_integrate(ctx, integrand.c_str(), dp, &out);
  } else if (*poincare_cmd) {
    status = padic_poincare(ctx, polynomial.c_str(), mmax, &out);
  } else if (*check_cmd) {
    status = padic_check(ctx, &out);
  }
  return report(ctx, status, out);
}
