#include <atomic>
#include <stdexcept>

#include "doctest.h"
#include "ddero/conservation.hpp"
#include "ddero/parallel.hpp"
#include "ddero/recursion.hpp"
#include "ddero/symmetry.hpp"
#include "support.hpp"

using namespace ddero;

TEST_CASE("for_each_index visits every index once and rethrows") {
  std::vector<std::atomic<int>> hits(257);
  for_each_index(hits.size(), Execution::parallel, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(for_each_index(10, Execution::parallel,
                                 [](std::size_t i) {
                                   if (i == 7) throw std::runtime_error("x");
                                 }),
                  std::runtime_error);
  CHECK(parallel_threads() >= 1);
}

TEST_CASE("assembled conditions equal the collected reference") {
  testing::Random rnd(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Parameter> params;
    std::vector<VectorExpression> images;
    VectorExpression whole(2), offset = rnd.vector(2);
    whole = offset;
    for (std::uint32_t p = 1; p <= 4; ++p) {
      params.push_back(Parameter{p});
      images.push_back(rnd.vector(2));
      for (std::size_t i = 0; i < 2; ++i)
        whole[i] += images.back()[i] * CoefficientForm::parameter(Parameter{p});
    }
    auto a = assemble_conditions(params, [&](std::size_t k) { return images[k]; }, offset);
    auto b = collect_conditions(whole);
    CHECK(a.equations == b.equations);
  }
}

TEST_CASE("serial and parallel searches agree") {
  const DDESystem s = testing::toda();
  const auto w = compute_weights(s);
  for (int rank = 1; rank <= 4; ++rank) {
    DensityOptions ser, par;
    ser.exec = Execution::serial;
    par.exec = Execution::parallel;
    auto a = find_densities(s, w, rank, ser);
    auto b = find_densities(s, w, rank, par);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].rho == b[i].rho);
      CHECK(a[i].flux == b[i].flux);
    }
  }
  for (int level = 1; level <= 2; ++level) {
    SymmetryOptions ser, par;
    ser.exec = Execution::serial;
    par.exec = Execution::parallel;
    auto a = find_symmetries(s, w, level, ser);
    auto b = find_symmetries(s, w, level, par);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].g == b[i].g);
  }
  RecursionConfig ser, par;
  ser.exec = Execution::serial;
  par.exec = Execution::parallel;
  auto doc = testing::load_system("toda.dde");
  RecursionInputs in;
  for (const auto& [l, g] : doc.symmetries) in.symmetries.push_back(make_symmetry(g, l, w));
  auto a = find_recursion_operator(s, w, in, ser);
  auto b = find_recursion_operator(s, w, in, par);
  CHECK(a.solved.op == b.solved.op);
}
