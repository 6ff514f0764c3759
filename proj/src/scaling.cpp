#include "ddero/scaling.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "ddero/errors.hpp"
#include "ddero/linear.hpp"

namespace ddero {

bool WeightAssignment::all_positive() const {
  return std::all_of(weights.begin(), weights.end(),
                     [](const Rational& r) { return sgn(r) > 0; });
}

namespace {

// Unknowns: w(u_i) is parameter i+1, w(D_t) is parameter N+1.
Parameter weight_param(std::size_t i) {
  return Parameter{static_cast<std::uint32_t>(i + 1)};
}

LinearSystem uniformity_system(const DDESystem& s, const WeightOptions& opts,
                               bool time_weight_unknown) {
  const std::size_t n = s.size();
  LinearSystem sys;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [m, c] : s.rhs(i).terms()) {
      CoefficientForm eq = -CoefficientForm::parameter(weight_param(i));
      if (time_weight_unknown)
        eq -= CoefficientForm::parameter(weight_param(n));
      else
        eq -= CoefficientForm(1);
      for (const auto& f : m.factors())
        eq += CoefficientForm::parameter(
            weight_param(static_cast<std::size_t>(f.var.component)),
            f.exponent);
      if (!eq.is_zero()) sys.equations.push_back(std::move(eq));
    }
  }
  for (const auto& [comp, value] : opts.overrides) {
    if (comp < 0 || static_cast<std::size_t>(comp) >= n)
      throw InputError("weight override for a missing component");
    sys.equations.push_back(
        CoefficientForm::parameter(weight_param(static_cast<std::size_t>(comp))) -
        CoefficientForm(value));
  }
  return sys;
}

std::string name_of(const DDESystem& s, Parameter p) {
  if (p.id == s.size() + 1) return "w(D_t)";
  return "w(" + s.names().at(p.id - 1) + ")";
}

std::string format_form(const DDESystem& s, const CoefficientForm& c) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, r] : c.terms()) {
    Rational mag = abs(r);
    if (first)
      out << (sgn(r) < 0 ? "-" : "");
    else
      out << (sgn(r) < 0 ? " - " : " + ");
    if (mag != 1) out << mag.get_str() << "*";
    out << name_of(s, p);
    first = false;
  }
  if (sgn(c.constant()) != 0 || first) {
    if (first)
      out << c.constant().get_str();
    else
      out << (sgn(c.constant()) < 0 ? " - " : " + ")
          << Rational(abs(c.constant())).get_str();
  }
  return out.str();
}

std::vector<Parameter> weight_unknowns(std::size_t count) {
  std::vector<Parameter> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(weight_param(i));
  return out;
}

WeightAssignment read_weights(const DDESystem& s, const Solution& sol) {
  std::map<Parameter, Rational> ones;
  for (auto p : sol.free) ones[p] = 1;
  Solution fixed = sol.specialize(ones);
  WeightAssignment w;
  for (std::size_t i = 0; i < s.size(); ++i) {
    CoefficientForm v = fixed.value(weight_param(i));
    w.weights.push_back(v.constant());
  }
  return w;
}

}  // namespace

WeightAssignment compute_weights(const DDESystem& s, const WeightOptions& opts) {
  const std::size_t n = s.size();
  try {
    Solution sol = solve_linear(uniformity_system(s, opts, false), weight_unknowns(n));
    WeightAssignment w = read_weights(s, sol);
    if (!opts.allow_nonpositive && !w.all_positive()) {
      std::ostringstream msg;
      msg << "uniformity requires a nonpositive weight:";
      for (std::size_t i = 0; i < n; ++i)
        msg << " w(" << s.names()[i] << ") = " << w.weights[i].get_str();
      throw NonpositiveWeights(msg.str());
    }
    return w;
  } catch (const NoSolution&) {
  }

  // No scaling with w(D_t) = 1. Relax w(D_t) to an unknown and see whether
  // a nontrivial (necessarily w(D_t) = 0) scaling survives.
  Solution rel;
  try {
    rel = solve_linear(uniformity_system(s, opts, true), weight_unknowns(n + 1));
  } catch (const NoSolution&) {
    throw NoDilationSymmetry("rank-uniformity equations are inconsistent");
  }
  if (rel.unique())
    throw NoDilationSymmetry("only the trivial scaling exists");
  if (!opts.allow_nonpositive) {
    std::ostringstream msg;
    msg << "no scaling with w(D_t) = 1; mixed-sign weights required:";
    for (const auto& [p, v] : rel.values)
      msg << " " << name_of(s, p) << " = " << format_form(s, v) << ";";
    throw NonpositiveWeights(msg.str());
  }
  WeightAssignment w = read_weights(s, rel);
  std::map<Parameter, Rational> ones;
  for (auto p : rel.free) ones[p] = 1;
  w.time_weight = rel.specialize(ones).value(weight_param(n)).constant();
  return w;
}

Rational rank_of(const Monomial& m, const WeightAssignment& w) {
  Rational r = 0;
  for (const auto& f : m.factors())
    r += w.of(static_cast<std::size_t>(f.var.component)) * f.exponent;
  return r;
}

std::optional<Rational> rank_of(const Expression& e, const WeightAssignment& w) {
  std::optional<Rational> r;
  for (const auto& [m, c] : e.terms()) {
    Rational rm = rank_of(m, w);
    if (!r) {
      r = rm;
    } else if (*r != rm) {
      throw NotUniform("expression mixes ranks " + r->get_str() + " and " +
                       rm.get_str());
    }
  }
  return r;
}

namespace {

void enumerate(const std::vector<ShiftedVariable>& vars,
               const WeightAssignment& w, std::size_t index, Rational remaining,
               std::optional<int> degree_left, bool mixed,
               std::vector<Monomial::Factor>& acc, std::vector<Monomial>& out) {
  if (index == vars.size()) {
    if (sgn(remaining) == 0) out.emplace_back(acc);
    return;
  }
  const Rational& wt = w.of(static_cast<std::size_t>(vars[index].component));
  int max_exp;
  // With a nonpositive weight present the remaining rank can grow again,
  // so only the degree bounds the exponent.
  if (sgn(wt) > 0 && !mixed) {
    if (sgn(remaining) < 0 && !degree_left) return;
    mpz_class q = sgn(remaining) < 0 ? mpz_class(0)
                                     : mpz_class(remaining.get_num() *
                                                 wt.get_den() /
                                                 (remaining.get_den() *
                                                  wt.get_num()));
    max_exp = static_cast<int>(q.get_si());
    if (degree_left) max_exp = std::min(max_exp, *degree_left);
  } else {
    max_exp = degree_left ? *degree_left : 0;
  }
  for (int e = max_exp; e >= 0; --e) {
    if (e > 0) acc.push_back({vars[index], e});
    enumerate(vars, w, index + 1, remaining - wt * e,
              degree_left ? std::optional<int>(*degree_left - e) : std::nullopt,
              mixed, acc, out);
    if (e > 0) acc.pop_back();
  }
}

}  // namespace

std::vector<Monomial> monomial_basis(const Rational& rank,
                                     const WeightAssignment& w,
                                     const std::vector<ShiftedVariable>& vars,
                                     std::optional<int> degree_cap) {
  bool mixed = false;
  for (const auto& v : vars)
    if (sgn(w.of(static_cast<std::size_t>(v.component))) <= 0) mixed = true;
  if (mixed && !degree_cap)
    throw InfiniteBasis("nonpositive weight and no degree cap: basis is unbounded");
  std::vector<Monomial> out;
  std::vector<Monomial::Factor> acc;
  enumerate(vars, w, 0, rank, degree_cap, mixed, acc, out);
  return out;
}

std::vector<Monomial> monomial_basis(const Rational& rank,
                                     const WeightAssignment& w,
                                     ShiftWindow window, bool mod_shift,
                                     std::optional<int> degree_cap) {
  if (window.min_shift > window.max_shift)
    throw InputError("empty shift window");
  const int lo = mod_shift ? std::max(0, window.min_shift) : window.min_shift;
  const int hi = window.max_shift;
  std::vector<ShiftedVariable> vars;
  if (!mod_shift || window.min_shift <= 0) {
    for (std::size_t c = 0; c < w.weights.size(); ++c)
      for (int k = lo; k <= hi; ++k) vars.push_back({static_cast<int>(c), k});
  }
  std::vector<Monomial> all = monomial_basis(rank, w, vars, degree_cap);
  if (!mod_shift) return all;
  std::vector<Monomial> out;
  for (auto& m : all) {
    auto r = m.shift_range();
    if (!r || r->first == 0) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace ddero
