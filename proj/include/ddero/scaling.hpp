#pragma once

// Dilation weights, ranks and rank-constrained monomial bases.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddero/calculus.hpp"

namespace ddero {

/// One weight per dependent variable, plus the weight of D_t (1 unless the
/// nonpositive-weights relaxation was requested).
struct WeightAssignment {
  std::vector<Rational> weights;
  Rational time_weight = 1;

  const Rational& of(std::size_t component) const { return weights.at(component); }
  bool all_positive() const;
};

struct WeightOptions {
  bool allow_nonpositive = false;
  /// Fixed weights by component, taking precedence over the solver.
  std::map<int, Rational> overrides;
};

/// Solves rank(m) = w(u_i) + w(D_t) for every monomial m of every F_i.
/// Free weights default to 1. Throws NoDilationSymmetry when no scaling
/// exists, NonpositiveWeights when one only exists with a nonpositive
/// weight (mixed signs, or w(D_t) forced to 0) and the relaxation is off.
WeightAssignment compute_weights(const DDESystem& s,
                                 const WeightOptions& opts = {});

Rational rank_of(const Monomial& m, const WeightAssignment& w);

/// Common rank of every term. nullopt for the zero expression. Throws
/// NotUniform naming two monomials of different rank.
std::optional<Rational> rank_of(const Expression& e,
                                const WeightAssignment& w);

struct ShiftWindow {
  int min_shift = 0;
  int max_shift = 0;
};

/// All monomials of exactly `rank` with nonnegative exponents over the
/// variables (component, shift) with shift in the window. With mod_shift, one
/// representative per shift class: the one whose minimal shift is 0, kept
/// only if it fits in the window. Order is lexicographically descending in
/// exponent vectors over (component, shift). Throws InfiniteBasis when a
/// weight is nonpositive and no degree cap is given.
std::vector<Monomial> monomial_basis(const Rational& rank,
                                     const WeightAssignment& w,
                                     ShiftWindow window, bool mod_shift,
                                     std::optional<int> degree_cap = {});

/// Same enumeration over an explicit, sorted variable list.
std::vector<Monomial> monomial_basis(const Rational& rank,
                                     const WeightAssignment& w,
                                     const std::vector<ShiftedVariable>& vars,
                                     std::optional<int> degree_cap = {});

}  // namespace ddero
