#include "ddero/recursion.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ddero/errors.hpp"

namespace ddero {

RankMatrix rank_matrix(const Symmetry& low, const Symmetry& high) {
  const std::size_t n = low.ranks.size();
  if (high.ranks.size() != n)
    throw InputError("symmetries have different component counts");
  RankMatrix rm(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!high.ranks[i] || !low.ranks[j])
        throw InputError("rank matrix needs symmetries with nonzero components");
      rm[i][j] = *high.ranks[i] - *low.ranks[j];
    }
  }
  return rm;
}

namespace {

std::optional<std::pair<int, int>> component_range(const Expression& e,
                                                   int component) {
  std::optional<std::pair<int, int>> r;
  for (const auto& [m, c] : e.terms())
    for (const auto& f : m.factors()) {
      if (f.var.component != component) continue;
      if (!r) {
        r = {f.var.shift, f.var.shift};
      } else {
        r->first = std::min(r->first, f.var.shift);
        r->second = std::max(r->second, f.var.shift);
      }
    }
  return r;
}

std::set<int> components_of(const Expression& e) {
  std::set<int> out;
  for (const auto& [m, c] : e.terms())
    for (const auto& f : m.factors()) out.insert(f.var.component);
  return out;
}

VectorExpression concat(const std::vector<VectorExpression>& parts) {
  VectorExpression out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::string labels(const std::vector<Parameter>& ps) {
  std::string out;
  for (const auto& p : ps) out += (out.empty() ? "" : ", ") + p.label();
  return out;
}

bool proportional_to(const VectorExpression& g, const VectorExpression& f) {
  std::optional<Rational> scale;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].is_zero() != f[i].is_zero()) return false;
    if (f[i].is_zero()) continue;
    if (g[i].has_parameters()) return false;
    if (!scale)
      scale = g[i].leading_term().second.constant() / f[i].leading_term().second.constant();
    if (g[i] != f[i] * *scale) return false;
  }
  return scale.has_value();
}

}  // namespace

std::optional<std::pair<int, int>> power_range(const Expression& high_i,
                                               const Expression& low_j) {
  if (high_i.is_zero() || low_j.is_zero()) return std::nullopt;
  std::optional<std::pair<int, int>> r;
  const std::set<int> hc = components_of(high_i);
  for (int c : components_of(low_j)) {
    if (!hc.count(c)) continue;
    auto h = component_range(high_i, c);
    auto l = component_range(low_j, c);
    std::pair<int, int> rc{h->first - l->first, h->second - l->second};
    if (!r) {
      r = rc;
    } else {
      r->first = std::max(r->first, rc.first);
      r->second = std::min(r->second, rc.second);
    }
  }
  if (!r) {
    auto h = high_i.shift_range();
    auto l = low_j.shift_range();
    if (!h || !l) return std::make_pair(0, 0);
    r = {h->first - l->first, h->second - l->second};
  }
  if (r->first > r->second) return std::nullopt;
  return r;
}

CandidateBundle build_candidate(const DDESystem& s, const WeightAssignment& w,
                                const std::vector<Symmetry>& symmetries,
                                const std::vector<Covariant>& covariants,
                                const RankMatrix& rm,
                                const RecursionConfig& cfg) {
  if (symmetries.size() < 2)
    throw InputError("candidate needs a linked pair of symmetries");
  const std::size_t n = s.size();
  std::vector<ShiftedVariable> pool =
      cfg.coefficient_pool.value_or(s.occurring_variables());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  const VectorExpression& low = symmetries[0].g;
  const VectorExpression& high = symmetries[1].g;
  CandidateBundle b;
  b.op = PseudoDifferenceOperator(n);
  b.powers.assign(n, std::vector<std::optional<std::pair<int, int>>>(n));
  std::uint32_t next = 1;
  auto fresh = [&]() {
    Parameter p{next++};
    b.parameters.push_back(p);
    return p;
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto range = power_range(high.at(i), low.at(j));
      b.powers[i][j] = range;
      if (!range) continue;
      const std::vector<Monomial> basis = monomial_basis(rm[i][j], w, pool);
      for (int k = range->first; k <= range->second; ++k)
        for (const auto& m : basis)
          b.op.at(i, j).add_local(
              k, Expression(m, CoefficientForm::parameter(fresh())));
    }
  }
  b.local_parameter_count = b.parameters.size();

  for (std::size_t si = 0; si < symmetries.size(); ++si) {
    // The flow itself is the level-one symmetry; a multiple of it enters the
    // nonlocal part as F.
    const VectorExpression& g =
        proportional_to(symmetries[si].g, s.rhs()) ? s.rhs() : symmetries[si].g;
    for (std::size_t ci = 0; ci < covariants.size(); ++ci) {
      const VectorExpression& gamma = covariants[ci].gamma;
      bool any = false;
      bool fits = true;
      for (std::size_t i = 0; i < n && fits; ++i) {
        if (g.at(i).is_zero()) continue;
        for (std::size_t j = 0; j < n && fits; ++j) {
          if (gamma.at(j).is_zero()) continue;
          any = true;
          try {
            auto rg = rank_of(g[i], w);
            auto rc = rank_of(gamma[j], w);
            fits = *rg + *rc == rm[i][j];
          } catch (const NotUniform&) {
            fits = false;
          }
        }
      }
      if (!any || !fits) continue;
      const Parameter p = fresh();
      b.nonlocal.push_back({p, si, ci});
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!g[i].is_zero() && !gamma[j].is_zero())
            b.op.at(i, j).add_nonlocal(
                {g[i] * CoefficientForm::parameter(p), Fraction(gamma[j]), 0});
    }
  }
  if (b.parameters.empty())
    throw EmptyCandidate("no candidate term has the required ranks");
  return b;
}

LinearSystem action_conditions(const CandidateBundle& bundle,
                               const std::vector<SymmetryPair>& pairs,
                               Execution exec,
                               std::vector<Parameter>* forced_zero) {
  // A nonlocal term whose argument is not an exact difference on its own
  // cannot contribute; its parameter is pinned to zero.
  std::vector<Parameter> pinned;
  for (const auto& origin : bundle.nonlocal) {
    const PseudoDifferenceOperator part =
        parameter_part(bundle.op, origin.parameter);
    try {
      for (const auto& pr : pairs) ddero::apply(part, pr.first);
    } catch (const NotExactDifference&) {
      pinned.push_back(origin.parameter);
    }
  }
  if (forced_zero) *forced_zero = pinned;

  std::vector<Parameter> active;
  for (const auto& p : bundle.parameters)
    if (std::find(pinned.begin(), pinned.end(), p) == pinned.end())
      active.push_back(p);

  LinearSystem sys;
  if (exec == Execution::serial) {
    Solution zero;
    for (const auto& p : pinned) zero.values[p] = CoefficientForm();
    const PseudoDifferenceOperator op = substitute(bundle.op, zero);
    std::vector<VectorExpression> parts;
    for (const auto& [lo, hi] : pairs) {
      VectorExpression img = ddero::apply(op, lo);
      for (std::size_t i = 0; i < img.size(); ++i) img[i] -= hi.at(i);
      parts.push_back(std::move(img));
    }
    sys = collect_conditions(concat(parts));
  } else {
    std::vector<VectorExpression> offset_parts;
    const PseudoDifferenceOperator base = constant_part(bundle.op);
    for (const auto& [lo, hi] : pairs) {
      VectorExpression img = ddero::apply(base, lo);
      for (std::size_t i = 0; i < img.size(); ++i) img[i] -= hi.at(i);
      offset_parts.push_back(std::move(img));
    }
    sys = assemble_conditions(
        active,
        [&](std::size_t k) {
          const PseudoDifferenceOperator part =
              parameter_part(bundle.op, active[k]);
          std::vector<VectorExpression> parts;
          for (const auto& pr : pairs) parts.push_back(ddero::apply(part, pr.first));
          return concat(parts);
        },
        concat(offset_parts));
  }
  for (const auto& p : pinned)
    sys.equations.push_back(CoefficientForm::parameter(p));
  return sys;
}

Rational normalize_scale(PseudoDifferenceOperator& r) {
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : r.at(i, j).local) {
        if (c.is_zero()) continue;
        const CoefficientForm& lc = c.leading_term().second;
        if (!lc.is_constant()) return 1;
        const Rational scale = 1 / lc.constant();
        if (scale != 1) r = scale * r;
        return scale;
      }
  return 1;
}

SolvedOperator solve_candidate(const DDESystem& s, const CandidateBundle& bundle,
                               const std::vector<SymmetryPair>& pairs,
                               const RecursionConfig& cfg) {
  if (pairs.empty()) throw InputError("solving needs at least one pair");
  SolvedOperator out;
  LinearSystem sys = action_conditions(bundle, pairs, cfg.exec, &out.forced_zero);
  Solution sol = solve_linear(sys, bundle.parameters);
  if (!sol.unique() && cfg.operator_conditions) {
    const PseudoDifferenceOperator partial = substitute(bundle.op, sol);
    try {
      sys.append(zero_conditions(defining_residual(partial, s)));
      sol = solve_linear(sys, bundle.parameters);
      out.used_operator_conditions = true;
    } catch (const NonPolynomial&) {
      // The identity cannot be put in normal form; keep the action result.
    }
  }
  if (!sol.unique())
    throw Underdetermined("free parameters remain: " + labels(sol.free));
  out.solution = sol;
  out.op = substitute(bundle.op, sol);
  out.scale = normalize_scale(out.op);
  return out;
}

namespace {

bool all_zero(const VectorExpression& g) {
  return std::all_of(g.begin(), g.end(),
                     [](const Expression& e) { return e.is_zero(); });
}

}  // namespace

Hierarchy generate_hierarchy(const PseudoDifferenceOperator& r,
                             const DDESystem& s, const VectorExpression& seed,
                             int count) {
  if (count < 1) throw InputError("hierarchy count must be at least 1");
  Hierarchy h;
  VectorExpression g = seed;
  for (int step = 1; step <= count; ++step) {
    try {
      g = ddero::apply(r, g);
    } catch (const NotExactDifference& e) {
      h.failure = "step " + std::to_string(step) + ": " + e.what();
      return h;
    }
    if (all_zero(g)) {
      h.failure = "step " + std::to_string(step) + ": image is zero";
      return h;
    }
    if (!verify_symmetry(s, g)) {
      h.failure = "step " + std::to_string(step) + ": image is not a symmetry";
      return h;
    }
    h.members.push_back(g);
  }
  return h;
}

VerificationReport verify(const PseudoDifferenceOperator& r,
                          const DDESystem& s, const VectorExpression& seed,
                          const RecursionConfig& cfg) {
  VerificationReport rep;
  rep.mode = cfg.mode;
  if (cfg.mode != VerifyMode::action) {
    try {
      rep.operator_verdict = is_zero(defining_residual(r, s));
    } catch (const MathError& e) {
      ZeroVerdict v;
      v.kind = ZeroVerdict::Kind::Inconclusive;
      v.note = e.what();
      rep.operator_verdict = v;
      rep.operator_note = e.what();
    }
  }
  const bool inconclusive =
      rep.operator_verdict &&
      rep.operator_verdict->kind == ZeroVerdict::Kind::Inconclusive;
  if (cfg.mode != VerifyMode::operator_identity || inconclusive) {
    rep.action_checked = true;
    rep.action_ok = true;
    VectorExpression g = seed;
    for (int step = 1; step <= cfg.hierarchy_length; ++step) {
      ActionStep st;
      try {
        g = ddero::apply(r, g);
        st.image = g;
        if (all_zero(g))
          st.diagnostic = "image is zero";
        else if (!verify_symmetry(s, g))
          st.diagnostic = "image is not a symmetry";
        else
          st.ok = true;
      } catch (const NotExactDifference& e) {
        st.diagnostic = e.what();
      }
      rep.steps.push_back(st);
      if (!st.ok) {
        rep.action_ok = false;
        break;
      }
    }
  }
  switch (cfg.mode) {
    case VerifyMode::action:
      rep.passed = rep.action_ok;
      break;
    case VerifyMode::operator_identity:
      rep.passed = rep.operator_verdict->is_zero() || (inconclusive && rep.action_ok);
      break;
    case VerifyMode::both:
      rep.passed = rep.action_ok &&
                   rep.operator_verdict->kind != ZeroVerdict::Kind::NonzeroLocal;
      break;
  }
  return rep;
}

bool inverse_pair_check(const PseudoDifferenceOperator& r1,
                        const PseudoDifferenceOperator& r2,
                        const std::vector<VectorExpression>& seeds,
                        std::string* diagnostic) {
  auto fail = [&](const std::string& msg) {
    if (diagnostic) *diagnostic = msg;
    return false;
  };
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const VectorExpression& g = seeds[k];
    const std::string tag = "seed " + std::to_string(k + 1) + ": ";
    try {
      if (ddero::apply(r1, ddero::apply(r2, g)) != g) return fail(tag + "R1(R2 g) != g");
      if (ddero::apply(r2, ddero::apply(r1, g)) != g) return fail(tag + "R2(R1 g) != g");
    } catch (const NotExactDifference& e) {
      return fail(tag + e.what());
    }
  }
  if (diagnostic) diagnostic->clear();
  return true;
}

namespace {

std::map<int, Symmetry> by_level(const std::vector<Symmetry>& syms) {
  std::map<int, Symmetry> out;
  for (const auto& s : syms) out.emplace(s.level, s);
  return out;
}

// Density ranks R for which a covariant could pass the nonlocal rank filter
// against the low symmetry.
std::set<Rational> useful_density_ranks(const Symmetry& low,
                                        const WeightAssignment& w,
                                        const RankMatrix& rm) {
  std::set<Rational> out;
  const std::size_t n = rm.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!low.ranks[i]) continue;
      Rational r = rm[i][j] + w.of(j) - *low.ranks[i];
      if (sgn(r) > 0 && r.get_den() == 1) out.insert(r);
    }
  return out;
}

RecursionResult attempt(const DDESystem& s, const WeightAssignment& w,
                        const std::map<int, Symmetry>& levels,
                        const std::vector<LogDensity>& densities, int gap,
                        const RecursionConfig& cfg) {
  RecursionResult res;
  res.gap = gap;
  std::vector<SymmetryPair> pairs;
  std::vector<int> used;
  for (const auto& [lvl, sym] : levels) {
    if (static_cast<int>(pairs.size()) >= cfg.pairs) break;
    auto hi = levels.find(lvl + gap);
    if (hi == levels.end()) continue;
    pairs.emplace_back(sym.g, hi->second.g);
    if (used.empty()) used = {lvl, lvl + gap};
  }
  if (pairs.empty())
    throw NoSolution("no pair of symmetries " + std::to_string(gap) +
                     " level(s) apart");
  const Symmetry& low = levels.at(used[0]);
  const Symmetry& high = levels.at(used[1]);
  res.symmetries.push_back(low);
  res.symmetries.push_back(high);
  for (const auto& [lvl, sym] : levels)
    if (lvl != used[0] && lvl != used[1]) res.symmetries.push_back(sym);

  res.ranks = rank_matrix(low, high);

  if (!densities.empty()) {
    for (const auto& d : densities) res.covariants.push_back(covariant(d, s.size()));
  } else {
    for (const auto& d : find_log_densities(s))
      res.covariants.push_back(covariant(d.rho, s.size()));
    for (const auto& r : useful_density_ranks(low, w, res.ranks))
      for (const auto& d : find_densities(s, w, r))
        res.covariants.push_back(covariant(d.rho, s.size()));
  }

  res.candidate = build_candidate(s, w, res.symmetries, res.covariants,
                                  res.ranks, cfg);
  res.solved = solve_candidate(s, res.candidate, pairs, cfg);
  res.report = verify(res.solved.op, s, low.g, cfg);
  return res;
}

}  // namespace

RecursionResult find_recursion_operator(const DDESystem& s,
                                        const WeightAssignment& w,
                                        const RecursionInputs& inputs,
                                        const RecursionConfig& cfg) {
  if (cfg.gap < 1) throw InputError("gap must be at least 1");
  if (cfg.pairs < 1) throw InputError("pair count must be at least 1");
  std::map<int, Symmetry> levels;
  if (!inputs.symmetries.empty()) {
    levels = by_level(inputs.symmetries);
  } else {
    SymmetryOptions so;
    so.window = cfg.window;
    so.exec = cfg.exec;
    for (int lvl = 1; lvl <= cfg.pairs + cfg.gap; ++lvl) {
      auto found = find_symmetries(s, w, lvl, so);
      if (found.empty())
        throw NoSolution("no symmetry at level " + std::to_string(lvl));
      levels.emplace(lvl, found.front());
    }
  }
  try {
    return attempt(s, w, levels, inputs.densities, cfg.gap, cfg);
  } catch (const MathError& e) {
    const bool retryable = dynamic_cast<const NoSolution*>(&e) ||
                           dynamic_cast<const EmptyCandidate*>(&e) ||
                           dynamic_cast<const Underdetermined*>(&e);
    if (!retryable || cfg.gap != 1 || inputs.symmetries.empty()) throw;
    bool spaced = false;
    for (const auto& [lvl, sym] : levels)
      if (levels.count(lvl + 2)) spaced = true;
    if (!spaced) throw;
    return attempt(s, w, levels, inputs.densities, 2, cfg);
  }
}

}  // namespace ddero
