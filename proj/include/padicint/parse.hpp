#pragma once

#include <string_view>

#include "padicint/expr.hpp"
#include "padicint/polynomial.hpp"

namespace padicint {

/// Grammar: integer literals, x1..xn, + - * ^ (non-negative integer
/// exponents) and parentheses. Throws ParseError with line/column.
Polynomial parse_polynomial(std::string_view text);

/// Integrand grammar: integer literals; q, q^k, q^-k, q^(expr) with a linear
/// exponent; ord(poly); lin(a,k,n,delta;gj); Γ-variables g1..gm; + - * and
/// non-negative integer powers; parentheses. K-variables x1..xn may only
/// occur inside ord(...).
ConstructibleExpr parse_constructible(std::string_view text);

}  // namespace padicint
