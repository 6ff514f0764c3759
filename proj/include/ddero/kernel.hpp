#pragma once

// Exact-arithmetic expression kernel.
//
// An Expression is a Laurent polynomial in shifted dependent variables
// (u_i)_{n+k} whose coefficients are affine-linear forms over undetermined
// parameters c1, c2, ... Everything is exact (GMP rationals); there is no
// floating point anywhere in the core.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ddero {

using Rational = mpq_class;

/// An undetermined coefficient. Labels are "c<id>".
struct Parameter {
  std::uint32_t id = 0;

  std::string label() const { return "c" + std::to_string(id); }
  friend auto operator<=>(const Parameter&, const Parameter&) = default;
};

/// constant + sum_p r_p * p, with no zero rationals stored.
class CoefficientForm {
 public:
  using Term = std::pair<Parameter, Rational>;

  CoefficientForm() = default;
  CoefficientForm(const Rational& c) : constant_(c) {}  // NOLINT(implicit)
  CoefficientForm(int c) : constant_(c) {}              // NOLINT(implicit)

  static CoefficientForm parameter(Parameter p, const Rational& scale = 1);
  /// Precondition: terms sorted by parameter, no duplicates, no zeros.
  static CoefficientForm from_sorted(Rational constant, std::vector<Term> terms);

  const Rational& constant() const { return constant_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return sgn(constant_) == 0 && terms_.empty(); }
  bool is_constant() const { return terms_.empty(); }
  bool has_parameters() const { return !terms_.empty(); }
  Rational coefficient(Parameter p) const;

  CoefficientForm& operator+=(const CoefficientForm& o);
  CoefficientForm& operator-=(const CoefficientForm& o);
  CoefficientForm& operator*=(const Rational& r);
  CoefficientForm operator-() const;

  friend CoefficientForm operator+(CoefficientForm a, const CoefficientForm& b) {
    return a += b;
  }
  friend CoefficientForm operator-(CoefficientForm a, const CoefficientForm& b) {
    return a -= b;
  }
  friend CoefficientForm operator*(CoefficientForm a, const Rational& r) {
    return a *= r;
  }
  /// Throws ParameterDegreeOverflow when both factors carry parameters.
  friend CoefficientForm operator*(const CoefficientForm& a,
                                   const CoefficientForm& b);

  friend bool operator==(const CoefficientForm& a, const CoefficientForm& b) {
    return a.constant_ == b.constant_ && a.terms_ == b.terms_;
  }
  friend int compare(const CoefficientForm& a, const CoefficientForm& b);

 private:
  Rational constant_;
  std::vector<Term> terms_;  // sorted by parameter
};

struct ShiftedVariable {
  int component = 0;
  int shift = 0;

  friend auto operator<=>(const ShiftedVariable&,
                          const ShiftedVariable&) = default;
};

/// Product of powers of shifted variables. Exponents are nonzero and may be
/// negative. Factors are kept sorted by (component, shift).
class Monomial {
 public:
  struct Factor {
    ShiftedVariable var;
    int exponent = 0;
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);
  static Monomial variable(ShiftedVariable v, int exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  int exponent(ShiftedVariable v) const;
  bool has_negative_exponent() const;
  /// Sum of exponents of every shift of one component.
  int component_degree(int component) const;

  /// (min shift, max shift) over all factors; nullopt for the unit monomial.
  std::optional<std::pair<int, int>> shift_range() const;

  Monomial shifted(int k) const;
  Monomial inverse() const;
  /// Every exponent of `this` is <= the matching exponent of `other`.
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    return a * b.inverse();
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Graded lexicographic order: total degree first, then dense lex with
  /// earlier variables (component, shift) taking priority.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
};

class Expression {
 public:
  using TermMap = std::map<Monomial, CoefficientForm>;
  using Term = TermMap::value_type;

  Expression() = default;
  Expression(const Rational& c);  // NOLINT(implicit)
  Expression(int c);              // NOLINT(implicit)
  Expression(const Monomial& m, const CoefficientForm& c = 1);

  static Expression variable(int component, int shift = 0);
  static Expression parameter(Parameter p);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// True for zero and for pure constants (with or without parameters).
  bool is_constant() const;
  bool has_parameters() const;
  std::vector<Parameter> parameters() const;
  /// Term with the greatest monomial. Precondition: nonzero.
  const Term& leading_term() const { return *terms_.rbegin(); }
  /// Coefficient of the unit monomial.
  CoefficientForm constant_term() const;

  std::optional<std::pair<int, int>> shift_range() const;
  Expression shifted(int k) const;

  /// The parameter-free expression multiplying parameter p.
  Expression parameter_part(Parameter p) const;
  /// The parameter-free remainder (all parameters set to zero).
  Expression constant_part() const;

  void add_term(const Monomial& m, const CoefficientForm& c);

  Expression& operator+=(const Expression& o);
  Expression& operator-=(const Expression& o);
  Expression& operator*=(const Rational& r);
  Expression& operator*=(const Expression& o) { return *this = *this * o; }
  Expression operator-() const;

  friend Expression operator+(Expression a, const Expression& b) {
    return a += b;
  }
  friend Expression operator-(Expression a, const Expression& b) {
    return a -= b;
  }
  friend Expression operator*(Expression a, const Rational& r) { return a *= r; }
  friend Expression operator*(const Rational& r, Expression a) { return a *= r; }
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const CoefficientForm& c);

  friend bool operator==(const Expression& a, const Expression& b) {
    return a.terms_ == b.terms_;
  }
  friend int compare(const Expression& a, const Expression& b);
  friend bool operator<(const Expression& a, const Expression& b) {
    return compare(a, b) < 0;
  }

  /// Exact evaluation at a point; parameters are not allowed.
  Rational evaluate(const std::function<Rational(ShiftedVariable)>& at) const;

 private:
  TermMap terms_;
};

using VectorExpression = std::vector<Expression>;

Expression pow(const Expression& e, int exponent);

/// Exact quotient n / d if d divides n in the Laurent polynomial ring,
/// nullopt otherwise. d must be nonzero and parameter-free.
std::optional<Expression> divide_exact(const Expression& n,
                                       const Expression& d);

/// numerator / denominator with a parameter-free polynomial denominator.
/// Denominators that are single terms are folded into the numerator, and
/// exact quotients are taken whenever they exist.
class Fraction {
 public:
  Fraction() : den_(1) {}
  Fraction(Expression num);  // NOLINT(implicit)
  Fraction(Expression num, Expression den);

  const Expression& numerator() const { return num_; }
  const Expression& denominator() const { return den_; }
  bool is_polynomial() const { return den_ == Expression(1); }
  bool is_zero() const { return num_.is_zero(); }

  Fraction shifted(int k) const { return {num_.shifted(k), den_.shifted(k)}; }
  Fraction operator-() const { return {-num_, den_}; }

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    return a + (-b);
  }
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);

  friend bool operator==(const Fraction& a, const Fraction& b) = default;
  friend int compare(const Fraction& a, const Fraction& b);

 private:
  void simplify();

  Expression num_;
  Expression den_;
};

}  // namespace ddero
