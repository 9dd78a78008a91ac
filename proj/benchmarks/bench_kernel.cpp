#include <benchmark/benchmark.h>

#include "kernel_eig/eigensolve.hpp"
#include "kernel_eig/kernel.hpp"
#include "kernel_eig/model.hpp"

using namespace kernel_eig;

static void BM_BuildQuartic(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_anharmonic(1.0, 2, dim));
}
BENCHMARK(BM_BuildQuartic)->Arg(100)->Arg(600);

static void BM_EvalResolvent(benchmark::State& state) {
  const auto split = build_anharmonic(1.0, 2, static_cast<std::size_t>(state.range(0)));
  const KernelContext ctx(split, 0);
  for (auto _ : state) benchmark::DoNotOptimize(ctx.eval(-0.3));
}
BENCHMARK(BM_EvalResolvent)->Arg(100)->Arg(600);

static void BM_Jet(benchmark::State& state) {
  const auto split = build_anharmonic(0.1, 2, 200);
  const KernelContext ctx(split, 0);
  const auto order = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ctx.jet(order));
}
BENCHMARK(BM_Jet)->Arg(10)->Arg(40);

static void BM_SolveRoot(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  const auto split = build_anharmonic(lambda, 2, 600);
  for (auto _ : state) benchmark::DoNotOptimize(solve_root(split, 0));
}
BENCHMARK(BM_SolveRoot)->Arg(1)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_Series(benchmark::State& state) {
  const auto split = build_anharmonic(0.1, 2, 200);
  const auto order = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eval_series(split, 0, order));
}
BENCHMARK(BM_Series)->Arg(10)->Arg(30);

static void BM_CutSeries(benchmark::State& state) {
  const auto split = build_anharmonic(1.0, 2, 401);
  const auto levels = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cut_series(split, 0, 0.0, levels, CutConvention::coupled_subspace));
  }
}
BENCHMARK(BM_CutSeries)->Arg(51)->Arg(199)->Unit(benchmark::kMillisecond);

static void BM_Oracle(benchmark::State& state) {
  const auto split = build_anharmonic(1.0, 2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize_oracle(split));
}
BENCHMARK(BM_Oracle)->Arg(100)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
