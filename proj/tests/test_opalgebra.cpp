#include "doctest.h"
#include "ddero/errors.hpp"
#include "ddero/opalgebra.hpp"
#include "support.hpp"

using namespace ddero;
using testing::ex;
using testing::fr;
using testing::vex;

namespace {

PseudoDifferenceOperator local1(std::initializer_list<std::pair<int, const char*>> terms) {
  PseudoDifferenceOperator r(1);
  for (auto [k, c] : terms) r.at(0, 0).add_local(k, ex(c));
  return r;
}

PseudoDifferenceOperator nonlocal1(const char* left, const char* right, int power = 0) {
  PseudoDifferenceOperator r(1);
  r.at(0, 0).add_nonlocal({ex(left), fr(right), power});
  return r;
}

}  // namespace

TEST_CASE("composition of local terms shifts the right coefficient") {
  auto p = compose(local1({{1, "1"}}), local1({{0, "u"}}));
  CHECK(p == local1({{1, "u[1]"}}));
  auto id = PseudoDifferenceOperator::identity(1);
  auto r = local1({{-1, "u"}, {2, "u[1]^2"}});
  CHECK(compose(id, r) == r);
  CHECK(compose(r, id) == r);
}

TEST_CASE("composition through a nonlocal factor") {
  // (u Delta^-1 (1/u) I) o u D = u Delta^-1 I D
  auto p = compose(nonlocal1("u", "1/(u)"), local1({{1, "u"}}));
  REQUIRE(p.at(0, 0).nonlocal.size() == 1);
  const NonlocalTerm& t = p.at(0, 0).nonlocal.front();
  CHECK(t.left == ex("u"));
  CHECK(t.right == Fraction(ex("1")));
  CHECK(t.power == 1);
  // D o (u Delta^-1 u) = u[1] Delta^-1 u[1] D
  auto q = compose(local1({{1, "1"}}), nonlocal1("u", "u"));
  const NonlocalTerm& s = q.at(0, 0).nonlocal.front();
  CHECK(s.left == ex("u[1]"));
  CHECK(s.right == Fraction(ex("u[1]")));
  CHECK(s.power == 1);
}

TEST_CASE("nonlocal times nonlocal is refused") {
  CHECK_THROWS_AS(compose(nonlocal1("u", "1"), nonlocal1("u", "1")), NonlocalDepthExceeded);
}

TEST_CASE("normalization by summation by parts") {
  // Delta^-1 o D = I + Delta^-1
  auto r = normalize(nonlocal1("1", "1", 1));
  auto expect = local1({{0, "1"}});
  expect.at(0, 0).add_nonlocal({ex("1"), Fraction(ex("1")), 0});
  CHECK(r == expect);
  // Delta^-1 o u D = u[-1] I + Delta^-1 u[-1] I
  auto s = normalize(nonlocal1("1", "u", 1));
  auto expect2 = local1({{0, "u[-1]"}});
  expect2.at(0, 0).add_nonlocal({ex("1"), fr("u[-1]"), 0});
  CHECK(s == expect2);
  CHECK(normalize(s) == s);
}

TEST_CASE("apply: KvM operator maps G1 to G2") {
  auto r = testing::load_op("kvm.op");
  auto g2 = ddero::apply(r, vex({"u*(u[1] - u[-1])"}, {"u"}));
  CHECK(g2[0] == ex("u*u[1]*(u + u[1] + u[2]) - u[-1]*u*(u[-2] + u[-1] + u)"));
  CHECK(ddero::apply(PseudoDifferenceOperator::identity(1), g2) == g2);
}

TEST_CASE("apply outside the domain throws") {
  CHECK_THROWS_AS(ddero::apply(nonlocal1("1", "1"), vex({"u"}, {"u"})), NotExactDifference);
}

TEST_CASE("Frechet derivative of an operator") {
  auto r = frechet_in_direction(local1({{0, "u"}}), testing::kvm().rhs());
  CHECK(r == local1({{0, "u*(u[1] - u[-1])"}}));
  CHECK(frechet_in_direction(local1({{1, "3"}}), testing::kvm().rhs()).is_zero());
}

TEST_CASE("defining identity of the published operators") {
  auto toda = testing::load_op("toda.op");
  auto v = is_zero(defining_residual(toda, testing::toda()));
  CHECK(v.kind == ZeroVerdict::Kind::Zero);
  auto kvm = testing::load_op("kvm.op");
  CHECK(is_zero(defining_residual(kvm, testing::kvm())).is_zero());
}

TEST_CASE("flipping the nonlocal sign breaks the identity") {
  auto toda = testing::load_op("toda.op");
  for (auto& t : toda.at(0, 1).nonlocal) t.left = -t.left;
  for (auto& t : toda.at(1, 1).nonlocal) t.left = -t.left;
  CHECK_FALSE(is_zero(defining_residual(toda, testing::toda())).is_zero());
}

TEST_CASE("zero test folds dependent right factors") {
  // u Delta^-1 u[1] - u Delta^-1 u[1]: cancels after folding
  PseudoDifferenceOperator r(1);
  r.at(0, 0).nonlocal.push_back({ex("u"), fr("u[1]"), 0});
  r.at(0, 0).nonlocal.push_back({ex("-u"), fr("u[1]"), 0});
  CHECK(is_zero(r).is_zero());
  CHECK(is_zero(nonlocal1("u", "1")).kind == ZeroVerdict::Kind::Inconclusive);
  CHECK(is_zero(local1({{0, "u"}})).kind == ZeroVerdict::Kind::NonzeroLocal);
}

TEST_CASE("parameter parts of an operator") {
  PseudoDifferenceOperator r(1);
  r.at(0, 0).add_local(0, ex("$c1*u + u[1]"));
  r.at(0, 0).add_nonlocal({ex("$c2*u"), fr("1/(u)"), 0});
  CHECK(parameters_of(r) == std::vector<Parameter>{Parameter{1}, Parameter{2}});
  CHECK(parameter_part(r, Parameter{1}) == local1({{0, "u"}}));
  CHECK(constant_part(r) == local1({{0, "u[1]"}}));
  Solution sol;
  sol.values[Parameter{1}] = 2;
  sol.values[Parameter{2}] = 0;
  CHECK(substitute(r, sol) == local1({{0, "2*u + u[1]"}}));
}
