#include "ddero/linear.hpp"

#include <algorithm>
#include <unordered_map>

#include "ddero/errors.hpp"

namespace ddero {

CoefficientForm Solution::value(Parameter p) const {
  auto it = values.find(p);
  if (it != values.end()) return it->second;
  return CoefficientForm::parameter(p);
}

Solution Solution::specialize(const std::map<Parameter, Rational>& fixed) const {
  Solution out;
  Solution pin;
  for (const auto& [p, r] : fixed) pin.values[p] = r;
  for (const auto& [p, c] : values) out.values[p] = substitute(c, pin);
  for (const auto& p : free) {
    auto it = fixed.find(p);
    if (it != fixed.end())
      out.values[p] = it->second;
    else
      out.free.push_back(p);
  }
  return out;
}

std::vector<Solution> basis_solutions(const Solution& s) {
  std::vector<Solution> out;
  for (const auto& f : s.free) {
    std::map<Parameter, Rational> fixed;
    for (const auto& g : s.free) fixed[g] = (g == f) ? 1 : 0;
    out.push_back(s.specialize(fixed));
  }
  return out;
}

void collect_zero_conditions(const Expression& e, LinearSystem& out) {
  for (const auto& [m, c] : e.terms()) out.equations.push_back(c);
}

LinearSystem collect_zero_conditions(const Expression& e) {
  LinearSystem s;
  collect_zero_conditions(e, s);
  return s;
}

std::vector<Parameter> parameters_of(const LinearSystem& s) {
  std::vector<Parameter> ps;
  for (const auto& eq : s.equations)
    for (const auto& [p, r] : eq.terms()) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

namespace {

// Sparse row: constant + sum coeffs[p] * p. A std::map keeps parameters
// ordered so a single forward sweep eliminates every pivoted parameter:
// subtracting pivot row p only introduces parameters greater than p.
struct Row {
  std::map<std::uint32_t, Rational> coeffs;
  Rational constant;
};

Row to_row(const CoefficientForm& c) {
  Row r;
  r.constant = c.constant();
  for (const auto& [p, x] : c.terms()) r.coeffs.emplace_hint(r.coeffs.end(), p.id, x);
  return r;
}

void axpy(Row& target, const Rational& factor, const Row& source) {
  // target -= factor * source
  target.constant -= factor * source.constant;
  for (const auto& [q, x] : source.coeffs) {
    auto [it, inserted] = target.coeffs.try_emplace(q);
    it->second -= factor * x;
    if (sgn(it->second) == 0) target.coeffs.erase(it);
  }
}

}  // namespace

Solution solve_linear(const LinearSystem& s,
                      const std::vector<Parameter>& unknowns) {
  Solution sol = solve_linear(s);
  for (const auto& p : unknowns)
    if (!sol.values.count(p) &&
        std::find(sol.free.begin(), sol.free.end(), p) == sol.free.end())
      sol.free.push_back(p);
  std::sort(sol.free.begin(), sol.free.end());
  return sol;
}

Solution solve_linear(const LinearSystem& s) {
  // pivot id -> row normalized so the pivot coefficient is 1 and every other
  // parameter in the row has a larger id.
  std::unordered_map<std::uint32_t, Row> pivots;
  std::vector<std::uint32_t> pivot_order;

  for (const auto& eq : s.equations) {
    if (eq.is_zero()) continue;
    Row r = to_row(eq);
    auto it = r.coeffs.begin();
    while (it != r.coeffs.end()) {
      auto pv = pivots.find(it->first);
      if (pv == pivots.end()) {
        ++it;
        continue;
      }
      const std::uint32_t key = it->first;
      Rational factor = it->second;
      axpy(r, factor, pv->second);
      it = r.coeffs.upper_bound(key);
    }
    if (r.coeffs.empty()) {
      if (sgn(r.constant) != 0) throw NoSolution();
      continue;
    }
    const std::uint32_t pivot = r.coeffs.begin()->first;
    Rational inv = 1 / r.coeffs.begin()->second;
    for (auto& [q, x] : r.coeffs) x *= inv;
    r.constant *= inv;
    pivots.emplace(pivot, std::move(r));
    pivot_order.push_back(pivot);
  }

  // Back substitution from the largest pivot down; every parameter in row p
  // other than p is larger than p, so its row is final by the time p is
  // processed.
  std::sort(pivot_order.begin(), pivot_order.end());
  for (auto pit = pivot_order.rbegin(); pit != pivot_order.rend(); ++pit) {
    Row& r = pivots.at(*pit);
    auto it = r.coeffs.upper_bound(*pit);
    while (it != r.coeffs.end()) {
      auto pv = pivots.find(it->first);
      if (pv == pivots.end()) {
        ++it;
        continue;
      }
      const std::uint32_t key = it->first;
      Rational factor = it->second;
      axpy(r, factor, pv->second);
      it = r.coeffs.upper_bound(key);
    }
  }

  Solution sol;
  std::vector<Parameter> all = parameters_of(s);
  for (const auto& p : all)
    if (!pivots.count(p.id)) sol.free.push_back(p);
  for (const auto id : pivot_order) {
    const Row& r = pivots.at(id);
    CoefficientForm v(Rational(-r.constant));
    for (const auto& [q, x] : r.coeffs)
      if (q != id) v += CoefficientForm::parameter(Parameter{q}, -x);
    sol.values.emplace(Parameter{id}, std::move(v));
  }
  return sol;
}

CoefficientForm substitute(const CoefficientForm& c, const Solution& s) {
  CoefficientForm out(c.constant());
  for (const auto& [p, r] : c.terms()) {
    auto it = s.values.find(p);
    if (it == s.values.end())
      out += CoefficientForm::parameter(p, r);
    else
      out += it->second * r;
  }
  return out;
}

Expression substitute(const Expression& e, const Solution& s) {
  Expression out;
  for (const auto& [m, c] : e.terms()) {
    if (c.is_constant())
      out.add_term(m, c);
    else
      out.add_term(m, substitute(c, s));
  }
  return out;
}

}  // namespace ddero
