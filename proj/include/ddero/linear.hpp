#pragma once

#include <map>
#include <vector>

#include "ddero/kernel.hpp"

namespace ddero {

/// A set of affine-linear equations over parameters, each `form == 0`.
struct LinearSystem {
  std::vector<CoefficientForm> equations;

  void append(const LinearSystem& other) {
    equations.insert(equations.end(), other.equations.begin(),
                     other.equations.end());
  }
  std::size_t size() const { return equations.size(); }
  bool empty() const { return equations.empty(); }
};

/// Every determined parameter expressed as an affine form over the free
/// parameters.
struct Solution {
  std::map<Parameter, CoefficientForm> values;
  std::vector<Parameter> free;

  bool unique() const { return free.empty(); }
  /// Value of p; free parameters map to themselves.
  CoefficientForm value(Parameter p) const;
  /// Same solution with every free parameter fixed to a rational.
  Solution specialize(const std::map<Parameter, Rational>& fixed) const;
};

/// One equation per monomial of e: the coefficient form must vanish.
LinearSystem collect_zero_conditions(const Expression& e);
void collect_zero_conditions(const Expression& e, LinearSystem& out);

/// Exact sparse Gaussian elimination. Pivots on the lowest-numbered
/// parameter, so higher-numbered parameters are the ones reported free.
/// Throws NoSolution when inconsistent.
Solution solve_linear(const LinearSystem& s);
/// As above, with every unknown not constrained by s reported free.
Solution solve_linear(const LinearSystem& s,
                      const std::vector<Parameter>& unknowns);

/// For a homogeneous system: one fully determined solution per free
/// parameter (that parameter 1, every other free parameter 0).
std::vector<Solution> basis_solutions(const Solution& s);

/// Parameters appearing in the system, sorted.
std::vector<Parameter> parameters_of(const LinearSystem& s);

CoefficientForm substitute(const CoefficientForm& c, const Solution& s);
Expression substitute(const Expression& e, const Solution& s);

}  // namespace ddero
