#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ddero/calculus.hpp"
#include "ddero/frontend/operator_io.hpp"
#include "ddero/frontend/parser.hpp"

namespace testing {

using namespace ddero;

inline Expression ex(const std::string& text, const std::vector<std::string>& names = {"u"}) {
  return frontend::parse_expression(text, names);
}

inline VectorExpression vex(const std::vector<std::string>& parts,
                            const std::vector<std::string>& names) {
  VectorExpression v;
  for (const auto& p : parts) v.push_back(ex(p, names));
  return v;
}

inline Fraction fr(const std::string& text, const std::vector<std::string>& names = {"u"}) {
  return frontend::parse_fraction(text, names);
}

#ifdef DDERO_DATA_DIR
inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(DDERO_DATA_DIR) + "/" + name, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline frontend::SystemDocument load_system(const std::string& name) {
  return frontend::parse_system(read_data(name));
}

inline PseudoDifferenceOperator load_op(const std::string& name) {
  return frontend::load_operator(read_data(name));
}
#endif

inline DDESystem kvm() { return DDESystem({"u"}, {ex("u*(u[1] - u[-1])")}); }

inline DDESystem toda() {
  const std::vector<std::string> n{"u", "v"};
  return DDESystem(n, {ex("v[-1] - v", n), ex("v*(u - u[1])", n)});
}

// Small random Laurent-free polynomials for property runs.
class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int range = 3) {
    int n = 0;
    while (n == 0) n = integer(-range, range);
    Rational r(n, integer(1, 2));
    r.canonicalize();
    return r;
  }

  Monomial monomial(int components, int max_shift, int max_degree) {
    Monomial m;
    const int deg = integer(0, max_degree);
    for (int i = 0; i < deg; ++i)
      m = m * Monomial::variable({integer(0, components - 1), integer(-max_shift, max_shift)});
    return m;
  }

  Expression polynomial(int components = 1, int max_terms = 3, int max_shift = 2,
                        int max_degree = 3) {
    Expression e;
    const int terms = integer(1, max_terms);
    for (int i = 0; i < terms; ++i)
      e += Expression(monomial(components, max_shift, max_degree), rational());
    return e;
  }

  Expression nonconstant(int components = 1, int max_terms = 3, int max_shift = 2,
                         int max_degree = 3) {
    for (;;) {
      Expression e = polynomial(components, max_terms, max_shift, max_degree);
      if (!e.is_constant()) return e;
    }
  }

  VectorExpression vector(int components, int max_terms = 2, int max_shift = 1,
                          int max_degree = 2) {
    VectorExpression v;
    for (int i = 0; i < components; ++i)
      v.push_back(polynomial(components, max_terms, max_shift, max_degree));
    return v;
  }

  Rational point() {
    Rational r(integer(-9, 9), integer(1, 5));
    r.canonicalize();
    return r;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing
