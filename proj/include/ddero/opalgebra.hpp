#pragma once

// Pseudo-difference operator algebra: linear combinations, composition,
// action on vector expressions, Frechet derivative of an operator, the
// normalization rewrite system and a (one-sided) zero test.

#include <string>
#include <variant>

#include "ddero/calculus.hpp"
#include "ddero/linear.hpp"
#include "ddero/operator.hpp"

namespace ddero {

PseudoDifferenceOperator operator+(const PseudoDifferenceOperator& a,
                                   const PseudoDifferenceOperator& b);
PseudoDifferenceOperator operator-(const PseudoDifferenceOperator& a,
                                   const PseudoDifferenceOperator& b);
PseudoDifferenceOperator operator*(const Rational& r,
                                   const PseudoDifferenceOperator& a);

/// P o Q. Throws NonlocalDepthExceeded for a nonlocal-nonlocal product.
PseudoDifferenceOperator compose(const PseudoDifferenceOperator& p,
                                 const PseudoDifferenceOperator& q);

/// R applied to g. Nonlocal terms of a row that share the same left factor
/// (up to a rational scale) have their Delta^{-1} arguments summed before the
/// antidifference is taken. Throws NotExactDifference when an argument is
/// not in the image of Delta.
VectorExpression apply(const PseudoDifferenceOperator& r,
                       const VectorExpression& g);

/// R'[f]: the Frechet derivative of the operator's coefficients in the
/// direction f.
PseudoDifferenceOperator frechet_in_direction(const PseudoDifferenceOperator& r,
                                              const VectorExpression& f);

/// Rewrites to normal form: every nonlocal term ends in D^0 (summation by
/// parts), local terms collected by power, nonlocal terms grouped by right
/// factor with the right factor scaled to leading coefficient 1. Throws
/// NonPolynomial when summation by parts would need a rational local
/// coefficient.
PseudoDifferenceOperator normalize(const PseudoDifferenceOperator& r);

/// D_t R + [R, F'] = R'[F] + R o F' - F' o R, normalized.
PseudoDifferenceOperator defining_residual(const PseudoDifferenceOperator& r,
                                           const DDESystem& s);

struct ZeroVerdict {
  enum class Kind { Zero, NonzeroLocal, Inconclusive };
  Kind kind = Kind::Zero;
  PseudoDifferenceOperator residual;
  std::string note;

  bool is_zero() const { return kind == Kind::Zero; }
};

std::string to_string(ZeroVerdict::Kind k);

/// Precondition: r normalized. Local coefficients must all vanish
/// (else NonzeroLocal). Nonlocal terms are folded along rational linear
/// dependencies among their right factors; Zero iff every folded left
/// factor vanishes, Inconclusive otherwise.
ZeroVerdict is_zero(const PseudoDifferenceOperator& r);

/// Linear conditions on the parameters of a normalized, parameter-linear r
/// that make is_zero(r) report Zero. Nonlocal right factors must be
/// parameter-free; terms whose right factor carries parameters are skipped.
LinearSystem zero_conditions(const PseudoDifferenceOperator& r);

PseudoDifferenceOperator substitute(const PseudoDifferenceOperator& r,
                                    const Solution& s);

/// The parameter-free operator multiplying p, and the parameter-free rest.
PseudoDifferenceOperator parameter_part(const PseudoDifferenceOperator& r,
                                        Parameter p);
PseudoDifferenceOperator constant_part(const PseudoDifferenceOperator& r);
std::vector<Parameter> parameters_of(const PseudoDifferenceOperator& r);

}  // namespace ddero
