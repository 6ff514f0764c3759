#include "ddero/conservation.hpp"

#include <algorithm>
#include <cstdlib>

#include "ddero/errors.hpp"
#include "ddero/linear.hpp"

namespace ddero {

namespace {

int max_abs_shift(const DDESystem& s) {
  auto [lo, hi] = s.shift_span();
  return std::max(std::abs(lo), std::abs(hi));
}

Expression scale_to_leading_one(const Expression& e) {
  if (e.is_zero()) return e;
  return e * (1 / e.leading_term().second.constant());
}

std::vector<Parameter> numbered(std::size_t count) {
  std::vector<Parameter> ps;
  for (std::size_t i = 0; i < count; ++i)
    ps.push_back(Parameter{static_cast<std::uint32_t>(i + 1)});
  return ps;
}

// Euler derivative in every component plus the constant term: together they
// vanish iff the expression is an exact difference.
VectorExpression exactness_image(const Expression& e, std::size_t n) {
  VectorExpression out;
  out.reserve(n + 1);
  for (std::size_t j = 0; j < n; ++j)
    out.push_back(euler_derivative(e, static_cast<int>(j)));
  out.push_back(Expression(Monomial(), e.constant_term()));
  return out;
}

}  // namespace

ShiftWindow default_density_window(const DDESystem& s, const Rational& rank) {
  int r = 1;
  if (rank > 2) {
    mpz_class f = rank.get_num() / rank.get_den();
    r = static_cast<int>(f.get_si()) - 1;
  }
  const int d = std::max(1, r) * std::max(1, max_abs_shift(s));
  return {-d, d};
}

std::vector<DensityFluxPair> find_densities(const DDESystem& s,
                                            const WeightAssignment& w,
                                            const Rational& rank,
                                            const DensityOptions& opts) {
  if (sgn(rank) < 0) throw InputError("density rank must be nonnegative");
  const ShiftWindow window = opts.window.value_or(default_density_window(s, rank));
  std::vector<Monomial> basis =
      monomial_basis(rank, w, window, true, opts.degree_cap);
  std::erase_if(basis, [](const Monomial& m) { return m.is_one(); });
  if (basis.empty()) return {};

  const std::vector<Parameter> params = numbered(basis.size());
  const std::size_t n = s.size();
  LinearSystem conditions;
  if (opts.exec == Execution::serial) {
    Expression rho;
    for (std::size_t i = 0; i < basis.size(); ++i)
      rho.add_term(basis[i], CoefficientForm::parameter(params[i]));
    conditions = collect_conditions(exactness_image(t_derivative(rho, s), n));
  } else {
    conditions = assemble_conditions(
        params,
        [&](std::size_t i) {
          return exactness_image(t_derivative(Expression(basis[i]), s), n);
        },
        {});
  }

  const Solution sol = solve_linear(conditions, params);
  std::vector<DensityFluxPair> out;
  for (const Solution& b : basis_solutions(sol)) {
    Expression rho;
    for (std::size_t i = 0; i < basis.size(); ++i)
      rho.add_term(basis[i], b.value(params[i]));
    rho = scale_to_leading_one(rho);
    if (rho.is_zero()) continue;
    DensityFluxPair p;
    p.rho.poly = rho;
    p.flux = -antidifference(t_derivative(rho, s));
    p.rank = rank;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<DensityFluxPair> find_log_densities(const DDESystem& s) {
  const std::size_t n = s.size();
  const std::vector<Parameter> params = numbered(n);
  // D_t ln((u_i)_n) = F_i / (u_i)_n; exactness via the telescoping residue.
  LinearSystem conditions = assemble_conditions(
      params,
      [&](std::size_t i) {
        LogDensity l;
        l.logs[static_cast<int>(i)] = 1;
        return VectorExpression{difference_residue(t_derivative(l, s))};
      },
      {});
  const Solution sol = solve_linear(conditions, params);
  std::vector<DensityFluxPair> out;
  for (const Solution& b : basis_solutions(sol)) {
    LogDensity rho;
    Rational lead = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rational a = b.value(params[i]).constant();
      if (sgn(a) == 0) continue;
      if (sgn(lead) == 0) lead = a;
      rho.logs[static_cast<int>(i)] = a;
    }
    if (rho.logs.empty()) continue;
    for (auto& [c, a] : rho.logs) a /= lead;
    DensityFluxPair p;
    p.rho = rho;
    p.flux = -antidifference(t_derivative(rho, s));
    p.rank = 0;
    out.push_back(std::move(p));
  }
  return out;
}

Covariant covariant(const LogDensity& rho, std::size_t n) {
  Covariant c;
  c.gamma.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    c.gamma[j] = euler_derivative(rho.poly, static_cast<int>(j));
  for (const auto& [comp, a] : rho.logs)
    c.gamma.at(static_cast<std::size_t>(comp)) +=
        Expression(Monomial::variable({comp, 0}, -1), a);
  return c;
}

Expression conservation_residual(const DDESystem& s, const DensityFluxPair& p) {
  return t_derivative(p.rho, s) + delta(p.flux);
}

VectorExpression covariant_residual(const DDESystem& s, const Covariant& c) {
  VectorExpression out = t_derivative(c.gamma, s);
  VectorExpression adj = adjoint_frechet_apply(s, c.gamma);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += adj[j];
  return out;
}

}  // namespace ddero
