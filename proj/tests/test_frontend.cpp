#include "doctest.h"
#include "ddero/errors.hpp"
#include "ddero/frontend/json_output.hpp"
#include "ddero/frontend/operator_io.hpp"
#include "ddero/frontend/parser.hpp"
#include "ddero/frontend/printer.hpp"
#include "support.hpp"

using namespace ddero;
using namespace ddero::frontend;
using testing::ex;

TEST_CASE("parse KvM and Toda") {
  auto k = parse_system("u' = u*(u[1]-u[-1]);");
  CHECK(k.names == std::vector<std::string>{"u"});
  CHECK(k.rhs[0] == testing::kvm().rhs(0));
  auto t = parse_system("u' = v[-1]-v; v' = v*(u-u[1]);");
  CHECK(t.names == std::vector<std::string>{"u", "v"});
  CHECK(t.rhs == testing::toda().rhs());
  CHECK_FALSE(t.declared);
}

TEST_CASE("statements") {
  auto d = parse_system(
      "var v, u;  # order from the declaration\n"
      "u' = u*v;\n"
      "v' = v^2 - 1/2*v[1]*v;\n"
      "weight v = 1;\n"
      "symmetry 2 = { v^3, u*v^2 };\n"
      "density = 2*u - 3/4*log(v);\n");
  CHECK(d.declared);
  CHECK(d.names == std::vector<std::string>{"v", "u"});
  CHECK(d.weights.at(0) == 1);
  REQUIRE(d.symmetries.size() == 1);
  CHECK(d.symmetries[0].first == 2);
  REQUIRE(d.densities.size() == 1);
  CHECK(d.densities[0].logs.at(0) == Rational(-3, 4));
}

TEST_CASE("errors carry positions") {
  CHECK_THROWS_AS(parse_system("u' = exp(u);"), NonPolynomialRHS);
  CHECK_THROWS_AS(parse_system("u' = 1/u;"), NonPolynomialRHS);
  CHECK_THROWS_AS(parse_system("u' = u^-1;"), NonPolynomialRHS);
  CHECK_THROWS_AS(parse_system("u' = w;"), UndeclaredVariable);
  CHECK_THROWS_AS(parse_system("var u; u' = u; v' = u;"), UndeclaredVariable);
  try {
    parse_system("u' = u;\nu' = u *;");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_system("var u, v; u' = v;"), InputError);  // missing v'
  CHECK_THROWS_AS(parse_system("u' = u @ 2;"), ParseError);
}

TEST_CASE("expressions, fractions and densities") {
  CHECK(parse_expression("u^-2*u[1]", {"u"}) * ex("u^2") == ex("u[1]"));
  CHECK(parse_expression("(u + 1)^2", {"u"}) == ex("u^2 + 2*u + 1"));
  CHECK(parse_expression("u/2", {"u"}) == ex("1/2*u"));
  auto f = parse_fraction("v/(1 + u*v)", {"u", "v"});
  CHECK_FALSE(f.is_polynomial());
  auto d = parse_density("log(u) + u*u[1]", {"u"});
  CHECK(d.logs.at(0) == 1);
  CHECK(d.poly == ex("u*u[1]"));
}

TEST_CASE("print then parse is the identity on fixtures") {
  for (const char* name : {"kvm.dde", "toda.dde", "al.dde", "rt.dde"}) {
    const auto d = testing::load_system(name);
    const std::string text = print_system(d);
    CHECK_MESSAGE(parse_system(text) == d, name);
    CHECK(print_system(parse_system(text)) == text);
  }
}

TEST_CASE("operator documents round trip byte for byte") {
  for (const char* name : {"kvm.op", "toda.op", "al_r1.op", "al_r2.op", "rt.op"}) {
    const std::string text = testing::read_data(name);
    std::vector<std::string> names;
    const auto op = load_operator(text, &names);
    CHECK_MESSAGE(save_operator(op, names) == text, name);
  }
}

TEST_CASE("operator document validation") {
  CHECK_THROWS_AS(load_operator("{"), InputError);
  CHECK_THROWS_AS(load_operator(R"({"format":"x","version":1})"), InputError);
  CHECK_THROWS_AS(
      load_operator(R"({"format":"dde-operator","version":1,"size":1,"variables":["u"],
                       "entries":[{"row":2,"col":1,"kind":"local","power":0,"coeff":"u"}]})"),
      InputError);
  CHECK_THROWS_AS(load_operator_for(testing::read_data("kvm.op"), {"v"}), InputError);
}

TEST_CASE("text and LaTeX rendering") {
  const std::vector<std::string> n{"u"};
  CHECK(to_text(ex("1/2*u^2 - u[-1]*u"), n) == "-u[-1]*u + 1/2*u^2");
  CHECK(to_text(ex("$c3*u - 2*$c1"), n) == "$c3*u - 2*$c1");
  CHECK(to_latex(ex("u*u[1] - 1/2*u[-1]"), n) == "u_{n} u_{n+1} - \\frac{1}{2} u_{n-1}");
  const auto op = testing::load_op("kvm.op");
  const std::string tex = to_latex(op, n);
  CHECK(tex.find("(\\mathbf{D} - \\mathbf{I})^{-1}") != std::string::npos);
  CHECK(to_text(op, n).rfind("R[1,1] = u*D^-1", 0) == 0);
  CHECK(to_text(LogDensity{ex("u"), {{0, Rational(-1, 2)}}}, n) == "u - 1/2*log(u)");
}

TEST_CASE("JSON output is deterministic") {
  const DDESystem s = testing::kvm();
  const auto w = compute_weights(s);
  const auto a = densities_json(s.names(), 2, find_densities(s, w, 2));
  const auto b = densities_json(s.names(), 2, find_densities(s, w, 2));
  CHECK(a == b);
  CHECK(a.find("\"schema\": \"ddero/densities\"") != std::string::npos);
  CHECK(a.find("\"version\": 1") != std::string::npos);
  const auto r1 = recursion_json(s.names(), find_recursion_operator(s, w, {}));
  const auto r2 = recursion_json(s.names(), find_recursion_operator(s, w, {}));
  CHECK(r1 == r2);
}
