#include "ddero/kernel.hpp"

#include <algorithm>
#include <cassert>

#include "ddero/errors.hpp"

namespace ddero {

// ---------------------------------------------------------------------------
// CoefficientForm

CoefficientForm CoefficientForm::parameter(Parameter p, const Rational& scale) {
  CoefficientForm c;
  if (sgn(scale) != 0) c.terms_.emplace_back(p, scale);
  return c;
}

CoefficientForm CoefficientForm::from_sorted(Rational constant,
                                             std::vector<Term> terms) {
  CoefficientForm c;
  c.constant_ = std::move(constant);
  c.terms_ = std::move(terms);
  return c;
}

Rational CoefficientForm::coefficient(Parameter p) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), p,
      [](const Term& t, Parameter q) { return t.first < q; });
  if (it != terms_.end() && it->first == p) return it->second;
  return 0;
}

namespace {

// out = a + sign * b over sorted sparse term lists.
void merge_terms(const std::vector<CoefficientForm::Term>& a,
                 const std::vector<CoefficientForm::Term>& b, int sign,
                 std::vector<CoefficientForm::Term>& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, sign > 0 ? Rational(j->second)
                                          : Rational(-j->second));
      ++j;
    } else {
      Rational s = sign > 0 ? Rational(i->second + j->second)
                            : Rational(i->second - j->second);
      if (sgn(s) != 0) out.emplace_back(i->first, std::move(s));
      ++i;
      ++j;
    }
  }
}

}  // namespace

CoefficientForm& CoefficientForm::operator+=(const CoefficientForm& o) {
  constant_ += o.constant_;
  if (!o.terms_.empty()) {
    if (terms_.empty()) {
      terms_ = o.terms_;
    } else {
      std::vector<Term> out;
      merge_terms(terms_, o.terms_, +1, out);
      terms_.swap(out);
    }
  }
  return *this;
}

CoefficientForm& CoefficientForm::operator-=(const CoefficientForm& o) {
  constant_ -= o.constant_;
  if (!o.terms_.empty()) {
    std::vector<Term> out;
    merge_terms(terms_, o.terms_, -1, out);
    terms_.swap(out);
  }
  return *this;
}

CoefficientForm& CoefficientForm::operator*=(const Rational& r) {
  if (sgn(r) == 0) {
    constant_ = 0;
    terms_.clear();
    return *this;
  }
  constant_ *= r;
  for (auto& t : terms_) t.second *= r;
  return *this;
}

CoefficientForm CoefficientForm::operator-() const {
  CoefficientForm c = *this;
  c.constant_ = -c.constant_;
  for (auto& t : c.terms_) t.second = -t.second;
  return c;
}

CoefficientForm operator*(const CoefficientForm& a, const CoefficientForm& b) {
  if (a.has_parameters() && b.has_parameters()) throw ParameterDegreeOverflow();
  if (!a.has_parameters()) return b * a.constant_;
  return a * b.constant_;
}

int compare(const CoefficientForm& a, const CoefficientForm& b) {
  if (int c = cmp(a.constant_, b.constant_); c != 0) return c < 0 ? -1 : 1;
  const auto n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].first != b.terms_[i].first)
      return a.terms_[i].first < b.terms_[i].first ? -1 : 1;
    if (int c = cmp(a.terms_[i].second, b.terms_[i].second); c != 0)
      return c < 0 ? -1 : 1;
  }
  if (a.terms_.size() == b.terms_.size()) return 0;
  return a.terms_.size() < b.terms_.size() ? -1 : 1;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.var < b.var; });
  for (auto& f : factors) {
    if (!factors_.empty() && factors_.back().var == f.var) {
      factors_.back().exponent += f.exponent;
      if (factors_.back().exponent == 0) factors_.pop_back();
    } else if (f.exponent != 0) {
      factors_.push_back(f);
    }
  }
}

Monomial Monomial::variable(ShiftedVariable v, int exponent) {
  Monomial m;
  if (exponent != 0) m.factors_.push_back({v, exponent});
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.exponent;
  return d;
}

int Monomial::exponent(ShiftedVariable v) const {
  for (const auto& f : factors_)
    if (f.var == v) return f.exponent;
  return 0;
}

bool Monomial::has_negative_exponent() const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [](const Factor& f) { return f.exponent < 0; });
}

int Monomial::component_degree(int component) const {
  int d = 0;
  for (const auto& f : factors_)
    if (f.var.component == component) d += f.exponent;
  return d;
}

std::optional<std::pair<int, int>> Monomial::shift_range() const {
  if (factors_.empty()) return std::nullopt;
  int lo = factors_.front().var.shift;
  int hi = lo;
  for (const auto& f : factors_) {
    lo = std::min(lo, f.var.shift);
    hi = std::max(hi, f.var.shift);
  }
  return std::make_pair(lo, hi);
}

Monomial Monomial::shifted(int k) const {
  Monomial m = *this;
  for (auto& f : m.factors_) f.var.shift += k;
  return m;
}

Monomial Monomial::inverse() const {
  Monomial m = *this;
  for (auto& f : m.factors_) f.exponent = -f.exponent;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  // exponent(this, v) <= exponent(other, v) for every variable v.
  auto i = factors_.begin();
  auto j = other.factors_.begin();
  while (i != factors_.end() || j != other.factors_.end()) {
    if (j == other.factors_.end() ||
        (i != factors_.end() && i->var < j->var)) {
      if (i->exponent > 0) return false;
      ++i;
    } else if (i == factors_.end() || j->var < i->var) {
      if (j->exponent < 0) return false;
      ++j;
    } else {
      if (i->exponent > j->exponent) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.factors_.empty()) return b;
  if (b.factors_.empty()) return a;
  Monomial m;
  m.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->var < j->var)) {
      m.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->var < i->var) {
      m.factors_.push_back(*j++);
    } else {
      int e = i->exponent + j->exponent;
      if (e != 0) m.factors_.push_back({i->var, e});
      ++i;
      ++j;
    }
  }
  return m;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->var < j->var))
      return i->exponent <=> 0;
    if (i == a.factors_.end() || j->var < i->var) return 0 <=> j->exponent;
    if (auto c = i->exponent <=> j->exponent; c != 0) return c;
    ++i;
    ++j;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Expression

Expression::Expression(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial(), CoefficientForm(c));
}

Expression::Expression(int c) : Expression(Rational(c)) {}

Expression::Expression(const Monomial& m, const CoefficientForm& c) {
  if (!c.is_zero()) terms_.emplace(m, c);
}

Expression Expression::variable(int component, int shift) {
  return Expression(Monomial::variable({component, shift}));
}

Expression Expression::parameter(Parameter p) {
  return Expression(Monomial(), CoefficientForm::parameter(p));
}

bool Expression::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool Expression::has_parameters() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.second.has_parameters();
  });
}

std::vector<Parameter> Expression::parameters() const {
  std::vector<Parameter> ps;
  for (const auto& [m, c] : terms_)
    for (const auto& [p, r] : c.terms()) ps.push_back(p);
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

CoefficientForm Expression::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? CoefficientForm() : it->second;
}

std::optional<std::pair<int, int>> Expression::shift_range() const {
  std::optional<std::pair<int, int>> r;
  for (const auto& [m, c] : terms_) {
    auto s = m.shift_range();
    if (!s) continue;
    if (!r) {
      r = s;
    } else {
      r->first = std::min(r->first, s->first);
      r->second = std::max(r->second, s->second);
    }
  }
  return r;
}

Expression Expression::shifted(int k) const {
  if (k == 0) return *this;
  // A uniform shift preserves the monomial order, so hinted insertion at the
  // end is linear.
  Expression out;
  for (const auto& [m, c] : terms_)
    out.terms_.emplace_hint(out.terms_.end(), m.shifted(k), c);
  return out;
}

Expression Expression::parameter_part(Parameter p) const {
  Expression out;
  for (const auto& [m, c] : terms_) {
    Rational r = c.coefficient(p);
    if (sgn(r) != 0) out.terms_.emplace_hint(out.terms_.end(), m, r);
  }
  return out;
}

Expression Expression::constant_part() const {
  Expression out;
  for (const auto& [m, c] : terms_)
    if (sgn(c.constant()) != 0)
      out.terms_.emplace_hint(out.terms_.end(), m, c.constant());
  return out;
}

void Expression::add_term(const Monomial& m, const CoefficientForm& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Expression& Expression::operator+=(const Expression& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Expression& Expression::operator-=(const Expression& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Expression& Expression::operator*=(const Rational& r) {
  if (sgn(r) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= r;
  return *this;
}

Expression Expression::operator-() const {
  Expression out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Expression operator*(const Expression& a, const Expression& b) {
  if (a.has_parameters() && b.has_parameters()) throw ParameterDegreeOverflow();
  Expression out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Expression operator*(const Expression& a, const CoefficientForm& c) {
  return a * Expression(Monomial(), c);
}

int compare(const Expression& a, const Expression& b) {
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  for (; i != a.terms_.end() && j != b.terms_.end(); ++i, ++j) {
    if (auto c = i->first <=> j->first; c != 0) return c < 0 ? -1 : 1;
    if (int c = compare(i->second, j->second); c != 0) return c;
  }
  if (i == a.terms_.end() && j == b.terms_.end()) return 0;
  return i == a.terms_.end() ? -1 : 1;
}

Rational Expression::evaluate(
    const std::function<Rational(ShiftedVariable)>& at) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    if (c.has_parameters())
      throw Error("cannot evaluate an expression with parameters");
    Rational v = c.constant();
    for (const auto& f : m.factors()) {
      Rational x = at(f.var);
      if (f.exponent < 0 && sgn(x) == 0)
        throw Error("division by zero during evaluation");
      for (int e = 0; e < std::abs(f.exponent); ++e) {
        if (f.exponent > 0)
          v *= x;
        else
          v /= x;
      }
    }
    total += v;
  }
  return total;
}

Expression pow(const Expression& e, int exponent) {
  if (exponent < 0) {
    if (e.size() != 1)
      throw NonPolynomial("negative power of a non-monomial expression");
    const auto& [m, c] = *e.terms().begin();
    if (c.has_parameters())
      throw NonPolynomial("negative power of a parameter");
    Rational inv = 1 / c.constant();
    Monomial mi = m.inverse();
    Expression base(mi, inv);
    return pow(base, -exponent);
  }
  Expression result(1);
  for (int i = 0; i < exponent; ++i) result = result * e;
  return result;
}

// ---------------------------------------------------------------------------
// Exact division

namespace {

// Monomial with, per variable, the minimum exponent across all terms (only
// the variables where that minimum is not attained by every term being 0).
Monomial min_content(const Expression& e) {
  std::map<ShiftedVariable, int> lo;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    if (first) {
      for (const auto& f : m.factors()) lo[f.var] = f.exponent;
      first = false;
      continue;
    }
    for (auto& [v, x] : lo) x = std::min(x, m.exponent(v));
    for (const auto& f : m.factors())
      if (!lo.count(f.var)) lo[f.var] = std::min(0, f.exponent);
  }
  std::vector<Monomial::Factor> fs;
  for (const auto& [v, x] : lo)
    if (x != 0) fs.push_back({v, x});
  return Monomial(std::move(fs));
}

Expression times_monomial(const Expression& e, const Monomial& m) {
  Expression out;
  for (const auto& [mm, c] : e.terms()) out.add_term(mm * m, c);
  return out;
}

}  // namespace

std::optional<Expression> divide_exact(const Expression& n,
                                       const Expression& d) {
  if (d.is_zero()) throw Error("division by zero expression");
  if (d.has_parameters()) throw Error("division by a parameter expression");
  if (n.is_zero()) return Expression();
  // Strip the monomial content of d and make n polynomial; for a divisor
  // with no monomial factor, divisibility in the Laurent ring is the same as
  // polynomial divisibility.
  const Monomial dc = min_content(d);
  const Monomial nc = min_content(n);
  const Expression dp = times_monomial(d, dc.inverse());
  Expression rem = times_monomial(n, nc.inverse());
  const auto& [lm, lc] = dp.leading_term();
  const Rational lcr = lc.constant();
  Expression quotient;
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading_term();
    if (!lm.divides(rm)) return std::nullopt;
    Expression step(rm / lm, rc * (1 / lcr));
    quotient += step;
    rem -= step * dp;
  }
  return times_monomial(quotient, nc * dc.inverse());
}

// ---------------------------------------------------------------------------
// Fraction

Fraction::Fraction(Expression num) : num_(std::move(num)), den_(1) {}

Fraction::Fraction(Expression num, Expression den)
    : num_(std::move(num)), den_(std::move(den)) {
  simplify();
}

void Fraction::simplify() {
  if (den_.is_zero()) throw Error("fraction with zero denominator");
  if (den_.has_parameters()) throw Error("parameter in a denominator");
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  if (den_.size() == 1) {
    num_ = num_ * pow(den_, -1);
    den_ = 1;
    return;
  }
  if (auto q = divide_exact(num_, den_)) {
    num_ = std::move(*q);
    den_ = 1;
    return;
  }
  // Scale so the denominator's leading coefficient is 1.
  Rational lc = den_.leading_term().second.constant();
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  if (a.den_ == b.den_) return Fraction(a.num_ + b.num_, a.den_);
  if (a.is_polynomial()) return Fraction(a.num_ * b.den_ + b.num_, b.den_);
  if (b.is_polynomial()) return Fraction(a.num_ + b.num_ * a.den_, a.den_);
  return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  if (a.is_polynomial() && b.is_polynomial()) return Fraction(a.num_ * b.num_);
  return Fraction(a.num_ * b.num_, a.den_ * b.den_);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  return Fraction(a.num_ * b.den_, a.den_ * b.num_);
}

int compare(const Fraction& a, const Fraction& b) {
  if (int c = compare(a.den_, b.den_); c != 0) return c;
  return compare(a.num_, b.num_);
}

}  // namespace ddero
