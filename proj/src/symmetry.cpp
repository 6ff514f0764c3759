#include "ddero/symmetry.hpp"

#include <algorithm>

#include "ddero/errors.hpp"
#include "ddero/linear.hpp"

namespace ddero {

ShiftWindow default_symmetry_window(const DDESystem& s, int level) {
  auto [lo, hi] = s.shift_span();
  return {level * std::min(lo, 0), level * std::max(hi, 0)};
}

VectorExpression symmetry_residual(const DDESystem& s,
                                   const VectorExpression& g) {
  VectorExpression out = t_derivative(g, s);
  VectorExpression lin = frechet_apply(s.rhs(), g);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= lin[i];
  return out;
}

bool verify_symmetry(const DDESystem& s, const VectorExpression& g) {
  if (g.size() != s.size()) return false;
  for (const auto& e : symmetry_residual(s, g))
    if (!e.is_zero()) return false;
  return true;
}

Symmetry make_symmetry(const VectorExpression& g, int level,
                       const WeightAssignment& w) {
  Symmetry sym;
  sym.g = g;
  sym.level = level;
  for (const auto& e : g) sym.ranks.push_back(rank_of(e, w));
  return sym;
}

std::vector<Symmetry> find_symmetries(const DDESystem& s,
                                      const WeightAssignment& w, int level,
                                      const SymmetryOptions& opts) {
  if (level < 1) throw InputError("symmetry level must be at least 1");
  const std::size_t n = s.size();
  const ShiftWindow window = opts.window.value_or(default_symmetry_window(s, level));

  // Unknowns: one per (component, basis monomial), numbered in that order.
  struct Slot {
    std::size_t component;
    Monomial m;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < n; ++i) {
    Rational r = w.of(i) + level;
    if (sgn(r) < 0) continue;
    for (auto& m : monomial_basis(r, w, window, false, opts.degree_cap))
      slots.push_back({i, std::move(m)});
  }
  if (slots.empty()) return {};
  std::vector<Parameter> params;
  for (std::size_t k = 0; k < slots.size(); ++k)
    params.push_back(Parameter{static_cast<std::uint32_t>(k + 1)});

  LinearSystem conditions;
  if (opts.exec == Execution::serial) {
    VectorExpression g(n);
    for (std::size_t k = 0; k < slots.size(); ++k)
      g[slots[k].component].add_term(slots[k].m,
                                     CoefficientForm::parameter(params[k]));
    conditions = collect_conditions(symmetry_residual(s, g));
  } else {
    conditions = assemble_conditions(
        params,
        [&](std::size_t k) {
          VectorExpression g(n);
          g[slots[k].component] = Expression(slots[k].m);
          return symmetry_residual(s, g);
        },
        {});
  }

  const Solution sol = solve_linear(conditions, params);
  std::vector<Symmetry> out;
  for (const Solution& b : basis_solutions(sol)) {
    VectorExpression g(n);
    for (std::size_t k = 0; k < slots.size(); ++k)
      g[slots[k].component].add_term(slots[k].m, b.value(params[k]));
    auto first = std::find_if(g.begin(), g.end(),
                              [](const Expression& e) { return !e.is_zero(); });
    if (first == g.end()) continue;
    const Rational scale = 1 / first->leading_term().second.constant();
    for (auto& e : g) e *= scale;
    out.push_back(make_symmetry(g, level, w));
  }
  return out;
}

}  // namespace ddero
