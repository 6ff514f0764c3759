#pragma once

// Discrete calculus on shifted variables: shifts, the forward difference and
// its canonical inverse, total time derivative on solutions, Frechet
// derivatives, the discrete Euler operator and the adjoint linearization.

#include <map>
#include <string>
#include <vector>

#include "ddero/kernel.hpp"
#include "ddero/operator.hpp"

namespace ddero {

/// N evolution equations (u_i)'_n = F_i over shifted variables.
class DDESystem {
 public:
  DDESystem() = default;
  /// Throws InputError if rhs carries parameters, sizes disagree, or a
  /// variable references a missing component.
  DDESystem(std::vector<std::string> names, VectorExpression rhs);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const VectorExpression& rhs() const { return rhs_; }
  const Expression& rhs(std::size_t i) const { return rhs_[i]; }

  /// (min, max) shift over all right-hand sides; (0, 0) if none.
  std::pair<int, int> shift_span() const;
  /// Every shifted variable occurring in some F_i, sorted.
  std::vector<ShiftedVariable> occurring_variables() const;

 private:
  std::vector<std::string> names_;
  VectorExpression rhs_;
};

/// poly + sum_i a_i ln((u_i)_n).
struct LogDensity {
  Expression poly;
  std::map<int, Rational> logs;

  bool has_logs() const { return !logs.empty(); }
  friend bool operator==(const LogDensity&, const LogDensity&) = default;
};

Expression shift(const Expression& e, int k);
VectorExpression shift(const VectorExpression& v, int k);

/// shift(e, 1) - e.
Expression delta(const Expression& e);

/// Canonical J with delta(J) == e, built by telescoping every term to its
/// shift-minimal representative (minimal shift 0). Throws
/// NotExactDifference when a nonzero shift-minimal residue remains.
Expression antidifference(const Expression& e);

/// Shift-minimal residue of e: the part that antidifference cannot
/// telescope away. Zero iff e is an exact difference.
Expression difference_residue(const Expression& e);

Expression partial(const Expression& e, ShiftedVariable v);

/// sum_{j,k} shift(f_j, k) * d e / d(u_j)_{n+k}.
Expression directional_derivative(const Expression& e,
                                  const VectorExpression& f);
Fraction directional_derivative(const Fraction& e, const VectorExpression& f);

Expression t_derivative(const Expression& e, const DDESystem& s);
Expression t_derivative(const LogDensity& rho, const DDESystem& s);
VectorExpression t_derivative(const VectorExpression& g, const DDESystem& s);

/// Matrix with entries sum_k dF_i/d(u_j)_{n+k} D^k.
PseudoDifferenceOperator frechet_operator(const VectorExpression& f,
                                          std::size_t n);
PseudoDifferenceOperator frechet_operator(const DDESystem& s);

/// Componentwise sum_{j,k} dF_i/d(u_j)_{n+k} * shift(g_j, k).
VectorExpression frechet_apply(const VectorExpression& f,
                               const VectorExpression& g);

/// sum_k shift(d e / d(u_c)_{n+k}, -k).
Expression euler_derivative(const Expression& e, int component);

/// Component j = sum_{i,k} shift(gamma_i * dF_i/d(u_j)_{n+k}, -k).
VectorExpression adjoint_frechet_apply(const DDESystem& s,
                                       const VectorExpression& gamma);

}  // namespace ddero
