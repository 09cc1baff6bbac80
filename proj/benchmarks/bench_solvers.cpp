#include <benchmark/benchmark.h>

#include "seqcontract/agent.hpp"
#include "seqcontract/correlated.hpp"
#include "seqcontract/general_solver.hpp"
#include "seqcontract/generators.hpp"
#include "seqcontract/linear_solver.hpp"
#include "seqcontract/oracle.hpp"

using namespace seqcontract;

static void BM_PrincipalUtility(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Instance inst = gen_random_instance(n, 4, 11);
  const Contract t = induced_payments(LinearContract{ratio(1, 3)}, inst);
  for (auto _ : state) benchmark::DoNotOptimize(principal_utility(inst, t));
}
BENCHMARK(BM_PrincipalUtility)->Arg(2)->Arg(8)->Arg(32);

static void BM_SolveLinearCritpoints(benchmark::State& state) {
  const Instance inst = gen_critpoints_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear(inst));
}
BENCHMARK(BM_SolveLinearCritpoints)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_SolveGeneral(benchmark::State& state) {
  const Instance inst = gen_random_instance(static_cast<std::size_t>(state.range(0)), 3, 5);
  for (auto _ : state) benchmark::DoNotOptimize(solve_general(inst));
}
BENCHMARK(BM_SolveGeneral)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_OracleCatalog(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Instance inst = gen_random_instance(n, 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(StrategyCatalog(inst));
}
BENCHMARK(BM_OracleCatalog)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_GridSearch(benchmark::State& state) {
  const Instance inst = gen_random_instance(2, 3, 7);
  const Rational step = payment_bound(inst) / state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(grid_search_general(inst, step));
}
BENCHMARK(BM_GridSearch)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_CorrelatedBruteForce(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  CoverageFunction f;
  for (std::size_t i = 0; i < n; ++i) {
    f.elements.push_back("u" + std::to_string(i));
    f.weights.push_back(ratio(1, static_cast<long>(n + 1)));
    f.actions.push_back("a" + std::to_string(i));
    f.covers.push_back({i, (i + 1) % n});
  }
  const CorrelatedInstance ci{f, std::vector<Rational>(n, ratio(1, 20))};
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_best_linear(ci));
}
BENCHMARK(BM_CorrelatedBruteForce)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
