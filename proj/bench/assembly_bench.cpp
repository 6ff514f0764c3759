// Serial reference against OpenMP assembly on the Toda lattice.
//
//   ddero_bench --benchmark_filter=Symmetries

#include <benchmark/benchmark.h>

#include "ddero/conservation.hpp"
#include "ddero/frontend/parser.hpp"
#include "ddero/recursion.hpp"
#include "ddero/symmetry.hpp"

namespace {

using namespace ddero;

DDESystem toda() {
  const std::vector<std::string> n{"u", "v"};
  return DDESystem(n, {frontend::parse_expression("v[-1] - v", n),
                       frontend::parse_expression("v*(u - u[1])", n)});
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void Densities(benchmark::State& state) {
  const DDESystem s = toda();
  const WeightAssignment w = compute_weights(s);
  DensityOptions opts;
  opts.exec = mode(state);
  const Rational rank(static_cast<long>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(find_densities(s, w, rank, opts));
}

void Symmetries(benchmark::State& state) {
  const DDESystem s = toda();
  const WeightAssignment w = compute_weights(s);
  SymmetryOptions opts;
  opts.exec = mode(state);
  const int level = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(find_symmetries(s, w, level, opts));
}

void ActionConditions(benchmark::State& state) {
  const DDESystem s = toda();
  const WeightAssignment w = compute_weights(s);
  RecursionConfig cfg;
  cfg.pairs = 2;
  RecursionInputs none;
  const RecursionResult res = find_recursion_operator(s, w, none, cfg);
  std::vector<SymmetryPair> pairs;
  for (std::size_t i = 0; i + 1 < res.symmetries.size(); ++i)
    pairs.emplace_back(res.symmetries[i].g, res.symmetries[i + 1].g);
  const Execution exec = mode(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(action_conditions(res.candidate, pairs, exec));
}

}  // namespace

BENCHMARK(Densities)->ArgNames({"parallel", "rank"})->ArgsProduct({{0, 1}, {3, 4}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(Symmetries)->ArgNames({"parallel", "level"})->ArgsProduct({{0, 1}, {2, 3}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(ActionConditions)->ArgNames({"parallel"})->Arg(0)->Arg(1)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
