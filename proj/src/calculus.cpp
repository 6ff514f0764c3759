#include "ddero/calculus.hpp"

#include <algorithm>
#include <set>

#include "ddero/errors.hpp"

namespace ddero {

DDESystem::DDESystem(std::vector<std::string> names, VectorExpression rhs)
    : names_(std::move(names)), rhs_(std::move(rhs)) {
  if (names_.size() != rhs_.size())
    throw InputError("system needs one equation per dependent variable");
  const int n = static_cast<int>(names_.size());
  for (const auto& f : rhs_) {
    if (f.has_parameters())
      throw InputError("right-hand side must not contain parameters");
    for (const auto& [m, c] : f.terms())
      for (const auto& fac : m.factors())
        if (fac.var.component < 0 || fac.var.component >= n)
          throw InputError("variable references a missing component");
  }
}

std::pair<int, int> DDESystem::shift_span() const {
  std::optional<std::pair<int, int>> r;
  for (const auto& f : rhs_) {
    auto s = f.shift_range();
    if (!s) continue;
    if (!r) {
      r = s;
    } else {
      r->first = std::min(r->first, s->first);
      r->second = std::max(r->second, s->second);
    }
  }
  return r.value_or(std::make_pair(0, 0));
}

std::vector<ShiftedVariable> DDESystem::occurring_variables() const {
  std::set<ShiftedVariable> vars;
  for (const auto& f : rhs_)
    for (const auto& [m, c] : f.terms())
      for (const auto& fac : m.factors()) vars.insert(fac.var);
  return {vars.begin(), vars.end()};
}

Expression shift(const Expression& e, int k) { return e.shifted(k); }

VectorExpression shift(const VectorExpression& v, int k) {
  VectorExpression out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(e.shifted(k));
  return out;
}

Expression delta(const Expression& e) { return e.shifted(1) - e; }

namespace {

// Splits e into J and a shift-minimal residue with e == delta(J) + residue.
// A term tau with minimal shift m > 0 telescopes as
//   tau = delta(sum_{j=1..m} D^{-j} tau) + D^{-m} tau,
// and one with m < 0 as
//   tau = -delta(sum_{j=0..|m|-1} D^j tau) + D^{|m|} tau.
void telescope(const Expression& e, Expression& j, Expression& residue) {
  for (const auto& [mono, c] : e.terms()) {
    auto range = mono.shift_range();
    const int m = range ? range->first : 0;
    if (m > 0) {
      for (int s = 1; s <= m; ++s) j.add_term(mono.shifted(-s), c);
      residue.add_term(mono.shifted(-m), c);
    } else if (m < 0) {
      for (int s = 0; s < -m; ++s) j.add_term(mono.shifted(s), -c);
      residue.add_term(mono.shifted(-m), c);
    } else {
      residue.add_term(mono, c);
    }
  }
}

}  // namespace

Expression antidifference(const Expression& e) {
  Expression j;
  Expression residue;
  telescope(e, j, residue);
  if (!residue.is_zero())
    throw NotExactDifference("expression is not an exact difference");
  return j;
}

Expression difference_residue(const Expression& e) {
  Expression j;
  Expression residue;
  telescope(e, j, residue);
  return residue;
}

Expression partial(const Expression& e, ShiftedVariable v) {
  Expression out;
  for (const auto& [m, c] : e.terms()) {
    const int a = m.exponent(v);
    if (a == 0) continue;
    out.add_term(m * Monomial::variable(v, -1), c * Rational(a));
  }
  return out;
}

Expression directional_derivative(const Expression& e,
                                  const VectorExpression& f) {
  // Cache D^k f_j, which are reused across terms.
  std::map<ShiftedVariable, Expression> shifted;
  auto shifted_f = [&](ShiftedVariable v) -> const Expression& {
    auto it = shifted.find(v);
    if (it == shifted.end())
      it = shifted.emplace(v, f.at(v.component).shifted(v.shift)).first;
    return it->second;
  };
  Expression out;
  for (const auto& [m, c] : e.terms()) {
    for (const auto& fac : m.factors()) {
      const Expression& df = shifted_f(fac.var);
      if (df.is_zero()) continue;
      Monomial rest = m * Monomial::variable(fac.var, -1);
      CoefficientForm k = c * Rational(fac.exponent);
      for (const auto& [mf, cf] : df.terms()) out.add_term(rest * mf, k * cf);
    }
  }
  return out;
}

Fraction directional_derivative(const Fraction& e, const VectorExpression& f) {
  if (e.is_polynomial())
    return Fraction(directional_derivative(e.numerator(), f));
  const Expression& n = e.numerator();
  const Expression& d = e.denominator();
  return Fraction(directional_derivative(n, f) * d -
                      n * directional_derivative(d, f),
                  d * d);
}

Expression t_derivative(const Expression& e, const DDESystem& s) {
  return directional_derivative(e, s.rhs());
}

Expression t_derivative(const LogDensity& rho, const DDESystem& s) {
  Expression out = t_derivative(rho.poly, s);
  for (const auto& [comp, a] : rho.logs)
    out += s.rhs(comp) * Expression(Monomial::variable({comp, 0}, -1), a);
  return out;
}

VectorExpression t_derivative(const VectorExpression& g, const DDESystem& s) {
  VectorExpression out;
  out.reserve(g.size());
  for (const auto& e : g) out.push_back(t_derivative(e, s));
  return out;
}

PseudoDifferenceOperator frechet_operator(const VectorExpression& f,
                                          std::size_t n) {
  PseudoDifferenceOperator op(n);
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::set<ShiftedVariable> vars;
    for (const auto& [m, c] : f[i].terms())
      for (const auto& fac : m.factors()) vars.insert(fac.var);
    for (const auto& v : vars)
      op.at(i, static_cast<std::size_t>(v.component))
          .add_local(v.shift, partial(f[i], v));
  }
  return op;
}

PseudoDifferenceOperator frechet_operator(const DDESystem& s) {
  return frechet_operator(s.rhs(), s.size());
}

VectorExpression frechet_apply(const VectorExpression& f,
                               const VectorExpression& g) {
  VectorExpression out;
  out.reserve(f.size());
  for (const auto& fi : f) out.push_back(directional_derivative(fi, g));
  return out;
}

Expression euler_derivative(const Expression& e, int component) {
  std::set<int> shifts;
  for (const auto& [m, c] : e.terms())
    for (const auto& fac : m.factors())
      if (fac.var.component == component) shifts.insert(fac.var.shift);
  Expression out;
  for (int k : shifts) out += partial(e, {component, k}).shifted(-k);
  return out;
}

VectorExpression adjoint_frechet_apply(const DDESystem& s,
                                       const VectorExpression& gamma) {
  VectorExpression out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (gamma.at(i).is_zero()) continue;
    std::set<ShiftedVariable> vars;
    for (const auto& [m, c] : s.rhs(i).terms())
      for (const auto& fac : m.factors()) vars.insert(fac.var);
    for (const auto& v : vars)
      out[static_cast<std::size_t>(v.component)] +=
          (gamma[i] * partial(s.rhs(i), v)).shifted(-v.shift);
  }
  return out;
}

}  // namespace ddero
