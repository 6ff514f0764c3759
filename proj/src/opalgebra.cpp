#include "ddero/opalgebra.hpp"

#include <algorithm>

#include "ddero/errors.hpp"

namespace ddero {

// ---------------------------------------------------------------------------
// Data type helpers

void OperatorEntry::add_local(int power, const Expression& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = local.try_emplace(power, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) local.erase(it);
  }
}

void OperatorEntry::add_nonlocal(NonlocalTerm t) {
  if (t.left.is_zero() || t.right.is_zero()) return;
  for (auto it = nonlocal.begin(); it != nonlocal.end(); ++it) {
    if (it->power == t.power && it->right == t.right) {
      it->left += t.left;
      if (it->left.is_zero()) nonlocal.erase(it);
      return;
    }
  }
  nonlocal.push_back(std::move(t));
}

PseudoDifferenceOperator PseudoDifferenceOperator::identity(std::size_t n) {
  PseudoDifferenceOperator op(n);
  for (std::size_t i = 0; i < n; ++i) op.at(i, i).add_local(0, Expression(1));
  return op;
}

bool PseudoDifferenceOperator::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const OperatorEntry& e) { return e.empty(); });
}

bool PseudoDifferenceOperator::is_local() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const OperatorEntry& e) { return e.is_local(); });
}

bool PseudoDifferenceOperator::has_parameters() const {
  for (const auto& e : entries_) {
    for (const auto& [k, c] : e.local)
      if (c.has_parameters()) return true;
    for (const auto& t : e.nonlocal)
      if (t.left.has_parameters() || t.right.numerator().has_parameters())
        return true;
  }
  return false;
}

std::string to_string(ZeroVerdict::Kind k) {
  switch (k) {
    case ZeroVerdict::Kind::Zero:
      return "zero";
    case ZeroVerdict::Kind::NonzeroLocal:
      return "nonzero-local";
    case ZeroVerdict::Kind::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Linear structure

namespace {

void check_sizes(const PseudoDifferenceOperator& a,
                 const PseudoDifferenceOperator& b) {
  if (a.size() != b.size()) throw Error("operator size mismatch");
}

void accumulate(OperatorEntry& into, const OperatorEntry& from,
                const Rational& scale) {
  for (const auto& [k, c] : from.local) into.add_local(k, c * scale);
  for (const auto& t : from.nonlocal)
    into.add_nonlocal({t.left * scale, t.right, t.power});
}

}  // namespace

PseudoDifferenceOperator operator+(const PseudoDifferenceOperator& a,
                                   const PseudoDifferenceOperator& b) {
  check_sizes(a, b);
  PseudoDifferenceOperator out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      accumulate(out.at(i, j), b.at(i, j), 1);
  return out;
}

PseudoDifferenceOperator operator-(const PseudoDifferenceOperator& a,
                                   const PseudoDifferenceOperator& b) {
  check_sizes(a, b);
  PseudoDifferenceOperator out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      accumulate(out.at(i, j), b.at(i, j), -1);
  return out;
}

PseudoDifferenceOperator operator*(const Rational& r,
                                   const PseudoDifferenceOperator& a) {
  PseudoDifferenceOperator out(a.size());
  if (sgn(r) == 0) return out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      accumulate(out.at(i, j), a.at(i, j), r);
  return out;
}

// ---------------------------------------------------------------------------
// Composition

namespace {

Expression as_expression(const Fraction& f, const char* what) {
  if (f.is_polynomial()) return f.numerator();
  if (auto q = divide_exact(f.numerator(), f.denominator())) return *q;
  throw NonPolynomial(std::string("rational coefficient in ") + what);
}

void compose_entries(const OperatorEntry& p, const OperatorEntry& q,
                     OperatorEntry& out) {
  for (const auto& [k, a] : p.local) {
    for (const auto& [m, b] : q.local) out.add_local(k + m, a * b.shifted(k));
    for (const auto& t : q.nonlocal)
      out.add_nonlocal(
          {a * t.left.shifted(k), t.right.shifted(k), k + t.power});
  }
  for (const auto& t : p.nonlocal) {
    if (!q.nonlocal.empty()) throw NonlocalDepthExceeded();
    for (const auto& [m, b] : q.local)
      out.add_nonlocal(
          {t.left, t.right * Fraction(b.shifted(t.power)), t.power + m});
  }
}

}  // namespace

PseudoDifferenceOperator compose(const PseudoDifferenceOperator& p,
                                 const PseudoDifferenceOperator& q) {
  check_sizes(p, q);
  const std::size_t n = p.size();
  PseudoDifferenceOperator out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        compose_entries(p.at(i, l), q.at(l, j), out.at(i, j));
  return out;
}

// ---------------------------------------------------------------------------
// Action

VectorExpression apply(const PseudoDifferenceOperator& r,
                       const VectorExpression& g) {
  const std::size_t n = r.size();
  if (g.size() != n) throw Error("vector length does not match operator");
  VectorExpression out(n);
  for (std::size_t i = 0; i < n; ++i) {
    struct Group {
      Expression left;
      Fraction argument;
    };
    std::vector<Group> groups;
    for (std::size_t j = 0; j < n; ++j) {
      const OperatorEntry& e = r.at(i, j);
      for (const auto& [k, c] : e.local) out[i] += c * g[j].shifted(k);
      for (const auto& t : e.nonlocal) {
        if (t.left.is_zero()) continue;
        Expression left = t.left;
        Fraction piece = t.right * Fraction(g[j].shifted(t.power));
        const CoefficientForm& lc = left.leading_term().second;
        if (lc.is_constant() && lc.constant() != 1) {
          Rational s = lc.constant();
          left *= Rational(1 / s);
          piece = piece * Fraction(Expression(s));
        }
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const Group& gr) { return gr.left == left; });
        if (it == groups.end())
          groups.push_back({std::move(left), std::move(piece)});
        else
          it->argument = it->argument + piece;
      }
    }
    for (const auto& gr : groups) {
      if (gr.argument.is_zero()) continue;
      Expression arg;
      if (gr.argument.is_polynomial()) {
        arg = gr.argument.numerator();
      } else if (auto q = divide_exact(gr.argument.numerator(),
                                       gr.argument.denominator())) {
        arg = std::move(*q);
      } else {
        throw NotExactDifference(
            "argument of the inverse difference is not polynomial");
      }
      out[i] += gr.left * antidifference(arg);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frechet derivative of an operator

PseudoDifferenceOperator frechet_in_direction(const PseudoDifferenceOperator& r,
                                              const VectorExpression& f) {
  const std::size_t n = r.size();
  PseudoDifferenceOperator out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const OperatorEntry& e = r.at(i, j);
      OperatorEntry& o = out.at(i, j);
      for (const auto& [k, c] : e.local)
        o.add_local(k, directional_derivative(c, f));
      for (const auto& t : e.nonlocal) {
        o.add_nonlocal({directional_derivative(t.left, f), t.right, t.power});
        o.add_nonlocal({t.left, directional_derivative(t.right, f), t.power});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

void normalize_entry(const OperatorEntry& in, OperatorEntry& out) {
  for (const auto& [k, c] : in.local) out.add_local(k, c);
  std::vector<NonlocalTerm> flat;
  for (const auto& t0 : in.nonlocal) {
    NonlocalTerm t = t0;
    // Summation by parts, one step at a time.
    while (t.power > 0) {
      t.right = t.right.shifted(-1);
      out.add_local(t.power - 1,
                    as_expression(Fraction(t.left) * t.right, "local term"));
      t.power -= 1;
    }
    while (t.power < 0) {
      out.add_local(t.power,
                    -as_expression(Fraction(t.left) * t.right, "local term"));
      t.right = t.right.shifted(1);
      t.power += 1;
    }
    if (t.left.is_zero() || t.right.is_zero()) continue;
    // Move the scale of the right factor into the left factor.
    const CoefficientForm& lc = t.right.numerator().leading_term().second;
    if (lc.is_constant() && lc.constant() != 1) {
      Rational s = lc.constant();
      t.right = t.right * Fraction(Expression(Rational(1 / s)));
      t.left *= s;
    }
    flat.push_back(std::move(t));
  }
  for (auto& t : flat) out.add_nonlocal(std::move(t));
  std::sort(out.nonlocal.begin(), out.nonlocal.end(),
            [](const NonlocalTerm& a, const NonlocalTerm& b) {
              if (int c = compare(a.right, b.right); c != 0) return c < 0;
              return compare(a.left, b.left) < 0;
            });
}

}  // namespace

PseudoDifferenceOperator normalize(const PseudoDifferenceOperator& r) {
  const std::size_t n = r.size();
  PseudoDifferenceOperator out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      normalize_entry(r.at(i, j), out.at(i, j));
  return out;
}

PseudoDifferenceOperator defining_residual(const PseudoDifferenceOperator& r,
                                           const DDESystem& s) {
  const PseudoDifferenceOperator fp = frechet_operator(s);
  PseudoDifferenceOperator res = frechet_in_direction(r, s.rhs());
  res = res + compose(r, fp);
  res = res - compose(fp, r);
  return normalize(res);
}

// ---------------------------------------------------------------------------
// Zero test

namespace {

// Folds the nonlocal terms of one normalized entry along rational linear
// dependencies among right factors. Returns the folded left factors, or
// nullopt when some right factor carries parameters.
std::optional<std::vector<Expression>> fold_nonlocal(const OperatorEntry& e) {
  const auto& terms = e.nonlocal;
  if (terms.empty()) return std::vector<Expression>{};
  for (const auto& t : terms)
    if (t.right.numerator().has_parameters()) return std::nullopt;

  // Common denominator of all right factors.
  std::vector<Expression> dens;
  for (const auto& t : terms)
    if (std::find(dens.begin(), dens.end(), t.right.denominator()) == dens.end())
      dens.push_back(t.right.denominator());
  Expression common(1);
  for (const auto& d : dens) common = common * d;
  std::vector<Expression> nums;
  for (const auto& t : terms) {
    auto scale = divide_exact(common, t.right.denominator());
    nums.push_back(t.right.numerator() * *scale);
  }

  std::vector<std::size_t> basis;
  std::vector<Expression> folded;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    Expression eq = nums[k];
    for (std::size_t b = 0; b < basis.size(); ++b)
      eq -= nums[basis[b]] *
            Expression::parameter(Parameter{static_cast<std::uint32_t>(b + 1)});
    std::optional<Solution> sol;
    if (!basis.empty()) {
      try {
        sol = solve_linear(collect_zero_conditions(eq));
      } catch (const NoSolution&) {
      }
    }
    if (!sol) {
      basis.push_back(k);
      folded.push_back(terms[k].left);
      continue;
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      CoefficientForm lambda =
          sol->value(Parameter{static_cast<std::uint32_t>(b + 1)});
      // The basis is independent, so lambda is a pure rational.
      folded[b] += terms[k].left * lambda.constant();
    }
  }
  return folded;
}

}  // namespace

ZeroVerdict is_zero(const PseudoDifferenceOperator& r) {
  ZeroVerdict v;
  v.residual = r;
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!r.at(i, j).local.empty()) {
        v.kind = ZeroVerdict::Kind::NonzeroLocal;
        v.note = "local coefficient does not vanish in entry (" +
                 std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
        return v;
      }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto folded = fold_nonlocal(r.at(i, j));
      bool ok = folded.has_value() &&
                std::all_of(folded->begin(), folded->end(),
                            [](const Expression& e) { return e.is_zero(); });
      if (!ok) {
        v.kind = ZeroVerdict::Kind::Inconclusive;
        v.note = "nonlocal residue in entry (" + std::to_string(i + 1) + "," +
                 std::to_string(j + 1) + ")";
        return v;
      }
    }
  }
  return v;
}

LinearSystem zero_conditions(const PseudoDifferenceOperator& r) {
  LinearSystem s;
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const OperatorEntry& e = r.at(i, j);
      for (const auto& [k, c] : e.local) collect_zero_conditions(c, s);
      if (auto folded = fold_nonlocal(e))
        for (const auto& a : *folded) collect_zero_conditions(a, s);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Parameters

PseudoDifferenceOperator substitute(const PseudoDifferenceOperator& r,
                                    const Solution& s) {
  const std::size_t n = r.size();
  PseudoDifferenceOperator out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const OperatorEntry& e = r.at(i, j);
      OperatorEntry& o = out.at(i, j);
      for (const auto& [k, c] : e.local) o.add_local(k, substitute(c, s));
      for (const auto& t : e.nonlocal)
        o.add_nonlocal({substitute(t.left, s),
                        Fraction(substitute(t.right.numerator(), s),
                                 t.right.denominator()),
                        t.power});
    }
  }
  return out;
}

PseudoDifferenceOperator parameter_part(const PseudoDifferenceOperator& r,
                                        Parameter p) {
  const std::size_t n = r.size();
  PseudoDifferenceOperator out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const OperatorEntry& e = r.at(i, j);
      OperatorEntry& o = out.at(i, j);
      for (const auto& [k, c] : e.local) o.add_local(k, c.parameter_part(p));
      for (const auto& t : e.nonlocal)
        o.add_nonlocal({t.left.parameter_part(p), t.right, t.power});
    }
  }
  return out;
}

PseudoDifferenceOperator constant_part(const PseudoDifferenceOperator& r) {
  const std::size_t n = r.size();
  PseudoDifferenceOperator out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const OperatorEntry& e = r.at(i, j);
      OperatorEntry& o = out.at(i, j);
      for (const auto& [k, c] : e.local) o.add_local(k, c.constant_part());
      for (const auto& t : e.nonlocal)
        o.add_nonlocal({t.left.constant_part(), t.right, t.power});
    }
  }
  return out;
}

std::vector<Parameter> parameters_of(const PseudoDifferenceOperator& r) {
  std::vector<Parameter> ps;
  const std::size_t n = r.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const OperatorEntry& e = r.at(i, j);
      for (const auto& [k, c] : e.local) {
        auto q = c.parameters();
        ps.insert(ps.end(), q.begin(), q.end());
      }
      for (const auto& t : e.nonlocal) {
        auto q = t.left.parameters();
        ps.insert(ps.end(), q.begin(), q.end());
      }
    }
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

}  // namespace ddero
