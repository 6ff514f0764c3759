#include "doctest.h"
#include "ddero/errors.hpp"
#include "ddero/linear.hpp"
#include "support.hpp"

using namespace ddero;

namespace {

CoefficientForm c(std::uint32_t id, Rational r = 1) { return CoefficientForm::parameter(Parameter{id}, r); }

}  // namespace

TEST_CASE("unique solution") {
  // c1 + c2 = 3, c1 - c2 = 1
  LinearSystem s;
  auto e1 = c(1);
  e1 += c(2);
  e1 -= CoefficientForm(3);
  auto e2 = c(1);
  e2 -= c(2);
  e2 -= CoefficientForm(1);
  s.equations = {e1, e2};
  Solution sol = solve_linear(s);
  CHECK(sol.unique());
  CHECK(sol.value(Parameter{1}) == CoefficientForm(2));
  CHECK(sol.value(Parameter{2}) == CoefficientForm(1));
}

TEST_CASE("higher parameters stay free") {
  // c1 - 2 c3 = 0
  LinearSystem s;
  auto e = c(1);
  e -= c(3, 2);
  s.equations = {e};
  Solution sol = solve_linear(s, {Parameter{1}, Parameter{2}, Parameter{3}});
  CHECK(sol.free == std::vector<Parameter>{Parameter{2}, Parameter{3}});
  CHECK(sol.value(Parameter{1}) == c(3, 2));
  auto basis = basis_solutions(sol);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].value(Parameter{2}) == CoefficientForm(1));
  CHECK(basis[0].value(Parameter{1}) == CoefficientForm(0));
  CHECK(basis[1].value(Parameter{1}) == CoefficientForm(2));
}

TEST_CASE("inconsistent systems throw") {
  LinearSystem s;
  auto e1 = c(1);
  auto e2 = c(1);
  e2 -= CoefficientForm(1);
  s.equations = {e1, e2};
  CHECK_THROWS_AS(solve_linear(s), NoSolution);
}

TEST_CASE("zero conditions and substitution") {
  Expression e = testing::ex("$c1*u + $c2*u - 2*u[1] + $c1*u[1]");
  LinearSystem s = collect_zero_conditions(e);
  CHECK(s.size() == 2);
  Solution sol = solve_linear(s);
  CHECK(substitute(e, sol).is_zero());
  CHECK(parameters_of(s) == std::vector<Parameter>{Parameter{1}, Parameter{2}});
}

TEST_CASE("specialize fixes free parameters") {
  LinearSystem s;
  auto e = c(1);
  e += c(2);
  s.equations = {e};
  Solution sol = solve_linear(s).specialize({{Parameter{2}, 5}});
  CHECK(sol.value(Parameter{1}) == CoefficientForm(-5));
}
