#pragma once

// Text format for systems and expressions.
//
//   var u, v;                    # optional; fixes the variable order
//   u' = v[-1] - v;              # u is u_n, v[-1] is v_{n-1}
//   v' = v*(u - u[1]);
//   weight v = 2;                # optional weight override
//   symmetry 1 = { v - v[-1], v*(u[1] - u) };
//   density = log(v);            # optional seed densities
//
// Without a var line the variables are the equation heads, in order.

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddero/calculus.hpp"

namespace ddero::frontend {

struct SystemDocument {
  std::vector<std::string> names;
  VectorExpression rhs;
  bool declared = false;
  std::map<int, Rational> weights;
  std::vector<std::pair<int, VectorExpression>> symmetries;
  std::vector<LogDensity> densities;

  DDESystem system() const { return DDESystem(names, rhs); }
  friend bool operator==(const SystemDocument&, const SystemDocument&) = default;
};

/// Throws ParseError (with line and column), UndeclaredVariable or
/// NonPolynomialRHS.
SystemDocument parse_system(std::string_view text);

/// Laurent polynomial; parameters written $c<k> are allowed.
Expression parse_expression(std::string_view text,
                            const std::vector<std::string>& names);

/// Quotient of polynomials, e.g. "v/(1 + u*v)".
Fraction parse_fraction(std::string_view text,
                        const std::vector<std::string>& names);

/// Laurent polynomial plus rational multiples of log(name).
LogDensity parse_density(std::string_view text,
                         const std::vector<std::string>& names);

}  // namespace ddero::frontend
