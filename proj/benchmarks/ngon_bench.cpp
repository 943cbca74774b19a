#include <benchmark/benchmark.h>

#include "ngon/catalog.hpp"
#include "ngon/chain.hpp"
#include "ngon/degree.hpp"
#include "ngon/polygon.hpp"

using namespace ngon;

namespace {

const ClosedCurve& trefoil() {
  static const ClosedCurve c = catalog_curve("trefoil");
  return c;
}

void BM_Normalize(benchmark::State& state) {
  const auto raw = catalog_raw_curve("trefoil");
  for (auto _ : state) benchmark::DoNotOptimize(normalize_to_unit_length(raw));
}
BENCHMARK(BM_Normalize)->Unit(benchmark::kMillisecond);

void BM_Eval(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trefoil().eval(t));
    t += 0.618;
    if (t > 1.0) t -= 1.0;
  }
}
BENCHMARK(BM_Eval);

void BM_ChainStep(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(next_chain_point(trefoil(), 0.3, 0.01));
}
BENCHMARK(BM_ChainStep);

void BM_ChainBisection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_by_chain_bisection(trefoil(), n));
}
BENCHMARK(BM_ChainBisection)->Arg(3)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Newton(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChordMetric m(trefoil());
  const ParameterVector seed = solve_by_chain_bisection(trefoil(), n).params;
  Eigen::VectorXd start = seed.interior();
  start.array() += 1e-3;
  const ParameterVector perturbed(start);
  for (auto _ : state) benchmark::DoNotOptimize(newton_solve(m, n, perturbed));
}
BENCHMARK(BM_Newton)->Arg(3)->Arg(6)->Arg(12);

void BM_BruteForce(benchmark::State& state) {
  const ChordMetric m(trefoil());
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_oracle(m, 3, grid));
}
BENCHMARK(BM_BruteForce)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SimplicialDegree(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SimplexDomain dom = build_domain(trefoil(), n);
  const ChordMetric m(trefoil());
  for (auto _ : state) benchmark::DoNotOptimize(simplicial_degree(m, dom, 2));
}
BENCHMARK(BM_SimplicialDegree)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_WindingN3(benchmark::State& state) {
  const SimplexDomain dom = build_domain(trefoil(), 3);
  const ChordMetric m(trefoil());
  for (auto _ : state) benchmark::DoNotOptimize(winding_number_n3(m, dom));
}
BENCHMARK(BM_WindingN3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
