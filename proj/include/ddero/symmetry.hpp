#pragma once

// Generalized symmetries: G with D_t G = F'[G] on solutions.

#include <optional>
#include <vector>

#include "ddero/calculus.hpp"
#include "ddero/parallel.hpp"
#include "ddero/scaling.hpp"

namespace ddero {

struct Symmetry {
  VectorExpression g;
  int level = 0;
  /// Rank of each component; nullopt where the component is zero.
  std::vector<std::optional<Rational>> ranks;
};

struct SymmetryOptions {
  std::optional<ShiftWindow> window;
  std::optional<int> degree_cap;
  Execution exec = Execution::parallel;
};

/// level times the shift span of F in each direction.
ShiftWindow default_symmetry_window(const DDESystem& s, int level);

/// Independent symmetries with component ranks level + w(u_i), each scaled
/// so the leading term of its first nonzero component has coefficient 1.
std::vector<Symmetry> find_symmetries(const DDESystem& s,
                                      const WeightAssignment& w, int level,
                                      const SymmetryOptions& opts = {});

/// D_t g - F'[g].
VectorExpression symmetry_residual(const DDESystem& s,
                                   const VectorExpression& g);

bool verify_symmetry(const DDESystem& s, const VectorExpression& g);

/// Wraps g with its component ranks. Throws NotUniform.
Symmetry make_symmetry(const VectorExpression& g, int level,
                       const WeightAssignment& w);

}  // namespace ddero
