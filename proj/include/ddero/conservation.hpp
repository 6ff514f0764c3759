#pragma once

// Conserved densities and fluxes (D_t rho + Delta J = 0 on solutions) and
// their covariants.

#include <optional>
#include <vector>

#include "ddero/calculus.hpp"
#include "ddero/parallel.hpp"
#include "ddero/scaling.hpp"

namespace ddero {

struct DensityFluxPair {
  LogDensity rho;
  Expression flux;
  Rational rank;
};

/// Row vector gamma; for a conserved density it satisfies
/// D_t gamma + F'^dagger(gamma) = 0.
struct Covariant {
  VectorExpression gamma;
};

struct DensityOptions {
  std::optional<ShiftWindow> window;
  std::optional<int> degree_cap;
  Execution exec = Execution::parallel;
};

/// [-d, d] with d = max(1, rank - 1) * (largest |shift| in F).
ShiftWindow default_density_window(const DDESystem& s, const Rational& rank);

/// Polynomial densities of exactly the given rank, one per independent
/// solution, each with leading coefficient 1. Constants are excluded.
std::vector<DensityFluxPair> find_densities(const DDESystem& s,
                                            const WeightAssignment& w,
                                            const Rational& rank,
                                            const DensityOptions& opts = {});

/// Densities sum_i a_i ln((u_i)_n) whose time derivative is exact.
std::vector<DensityFluxPair> find_log_densities(const DDESystem& s);

/// Component j = sum_k shift(d rho / d(u_j)_{n+k}, -k) (+ a_j / (u_j)_n).
Covariant covariant(const LogDensity& rho, std::size_t n);

/// D_t rho + Delta J, which must vanish.
Expression conservation_residual(const DDESystem& s, const DensityFluxPair& p);

/// D_t gamma + F'^dagger(gamma), which must vanish componentwise.
VectorExpression covariant_residual(const DDESystem& s, const Covariant& c);

}  // namespace ddero
