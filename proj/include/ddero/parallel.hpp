#pragma once

// Condition assembly for linear ansatz problems.
//
// An ansatz X = offset + sum_p c_p * X_p is linear in its parameters, so the
// zero conditions of X can be built from the parameter-free images X_p
// independently. The images are computed in an OpenMP loop (when available)
// and merged into one equation per (component, monomial). The serial
// reference path instead evaluates the whole parameter-carrying expression
// and collects its coefficients; both must produce the same system.

#include <functional>
#include <vector>

#include "ddero/linear.hpp"

namespace ddero {

enum class Execution { serial, parallel };

/// Number of OpenMP threads the parallel path uses (1 without OpenMP).
int parallel_threads();

/// Equations sum_p c_p [X_p]_{i,m} + [offset]_{i,m} == 0, ordered by
/// component, then monomial.
LinearSystem assemble_conditions(
    const std::vector<Parameter>& params,
    const std::function<VectorExpression(std::size_t)>& image,
    const VectorExpression& offset);

/// Reference: one equation per (component, monomial) of e, same order.
LinearSystem collect_conditions(const VectorExpression& e);

/// Runs body(i) for i in [0, count), in parallel when exec says so. The
/// first exception thrown by any iteration is rethrown on the caller.
void for_each_index(std::size_t count, Execution exec,
                    const std::function<void(std::size_t)>& body);

}  // namespace ddero
