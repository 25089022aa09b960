#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padicint/padic.hpp"

namespace padicint {

struct CheckOutcome {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 20240521;
  std::uint64_t budget = kDefaultBudget;
  /// Deepest oracle depth used by the integration checks.
  int depth = 6;
  int guard = 5;
};

/// Oracle-versus-symbolic cross validation over the presburger, kcells,
/// integrate and poincare invariants. Deterministic for fixed options.
std::vector<CheckOutcome> run_check_suite(const CheckOptions& options);

}  // namespace padicint
