#pragma once

// Text (the input grammar) and LaTeX renderings.

#include <string>
#include <vector>

#include "ddero/calculus.hpp"
#include "ddero/frontend/parser.hpp"
#include "ddero/operator.hpp"

namespace ddero::frontend {

using Names = std::vector<std::string>;

std::string to_text(const Rational& r);
std::string to_text(const CoefficientForm& c);
/// Terms from the leading (greatest) monomial down; parses back to e.
std::string to_text(const Expression& e, const Names& names);
std::string to_text(const Fraction& f, const Names& names);
std::string to_text(const LogDensity& d, const Names& names);
std::string to_text(const VectorExpression& v, const Names& names);
/// One line per nonzero entry: "R[i,j] = ...".
std::string to_text(const PseudoDifferenceOperator& r, const Names& names);

std::string to_latex(const Expression& e, const Names& names);
std::string to_latex(const Fraction& f, const Names& names);
std::string to_latex(const LogDensity& d, const Names& names);
std::string to_latex(const VectorExpression& v, const Names& names);
/// pmatrix; the inverse difference is written (D - I)^{-1}.
std::string to_latex(const PseudoDifferenceOperator& r, const Names& names);

/// Canonical document text; parse_system(print_system(d)) == d.
std::string print_system(const SystemDocument& d);

}  // namespace ddero::frontend
