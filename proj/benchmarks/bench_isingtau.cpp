#include <benchmark/benchmark.h>

#include <vector>

#include "isingtau/fredholm.hpp"
#include "isingtau/specfn.hpp"
#include "isingtau/tau.hpp"

using namespace isingtau;

static void BM_BcIntegral(benchmark::State& state) {
    const double t = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) benchmark::DoNotOptimize(specfn::bc_integral(t, 0.25));
}
BENCHMARK(BM_BcIntegral)->Arg(1)->Arg(10)->Arg(140)->Arg(400);

static void BM_SolveFamily(benchmark::State& state) {
    const BmtwParams params{static_cast<double>(state.range(0)) / 100.0, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(solve_family(params).size());
}
BENCHMARK(BM_SolveFamily)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ActionS(benchmark::State& state) {
    LambdaQuadrature quad;
    quad.threads = static_cast<unsigned>(state.range(0));
    const std::vector<double> ts{0.1, 1.0, 5.0};
    for (auto _ : state) benchmark::DoNotOptimize(action_S(ts, {0.5, 0.0}, quad).front().value);
}
BENCHMARK(BM_ActionS)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_Fredholm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fredholm_determinant(1.0, n).det_minus);
}
BENCHMARK(BM_Fredholm)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
