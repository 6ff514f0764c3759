#include "doctest.h"
#include "ddero/errors.hpp"
#include "ddero/symmetry.hpp"
#include "support.hpp"

using namespace ddero;
using testing::ex;
using testing::vex;

TEST_CASE("KvM symmetries") {
  const DDESystem s = testing::kvm();
  const auto w = compute_weights(s);
  auto g1 = find_symmetries(s, w, 1);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0].g[0] == -ex("u*(u[1] - u[-1])"));
  CHECK(g1[0].ranks[0] == std::optional<Rational>(2));
  auto g2 = find_symmetries(s, w, 2);
  REQUIRE(g2.size() == 1);
  CHECK(verify_symmetry(s, g2[0].g));
}

TEST_CASE("Toda symmetries at levels 1 and 2") {
  const DDESystem s = testing::toda();
  const auto w = compute_weights(s);
  const std::vector<std::string> n{"u", "v"};
  auto g1 = find_symmetries(s, w, 1);
  REQUIRE(g1.size() == 1);
  CHECK(g1[0].g == vex({"v[-1] - v", "v*(u - u[1])"}, n));
  auto g2 = find_symmetries(s, w, 2);
  REQUIRE(g2.size() == 1);
  for (const auto& e : symmetry_residual(s, g2[0].g)) CHECK(e.is_zero());
}

TEST_CASE("residual of a non-symmetry") {
  const DDESystem s = testing::kvm();
  CHECK_FALSE(verify_symmetry(s, vex({"u^2"}, {"u"})));
  CHECK(verify_symmetry(s, s.rhs()));
}

TEST_CASE("make_symmetry records ranks") {
  const auto w = compute_weights(testing::toda());
  const std::vector<std::string> n{"u", "v"};
  auto g = make_symmetry(vex({"v - v[-1]", "v*(u[1] - u)"}, n), 1, w);
  CHECK(g.ranks == std::vector<std::optional<Rational>>{Rational(2), Rational(3)});
  CHECK_THROWS_AS(make_symmetry(vex({"u + v", "v"}, n), 1, w), NotUniform);
}

TEST_CASE("default window scales with the level") {
  const auto win = default_symmetry_window(testing::kvm(), 2);
  CHECK(win.min_shift == -2);
  CHECK(win.max_shift == 2);
}
