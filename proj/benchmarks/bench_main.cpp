#include "gpdo/testdata.hpp"

#include <benchmark/benchmark.h>

using namespace gpdo;

namespace {

ModelPtr affine(int level) { return make_model(refine(GridConfig{}, level)); }

void BM_PlancherelForward(benchmark::State& state)
{
    auto m = affine(static_cast<int>(state.range(0)));
    auto f = bump(m, BumpParams{});
    for (auto _ : state) benchmark::DoNotOptimize(plancherel_fwd(f));
    state.counters["nodes"] = static_cast<double>(m->grid().size());
}
BENCHMARK(BM_PlancherelForward)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PlancherelInverse(benchmark::State& state)
{
    auto m = affine(static_cast<int>(state.range(0)));
    auto F = plancherel_fwd(bump(m, BumpParams{}));
    for (auto _ : state) benchmark::DoNotOptimize(plancherel_inv(F));
}
BENCHMARK(BM_PlancherelInverse)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OpLeft(benchmark::State& state)
{
    auto m = affine(0);
    auto A = random_symbol(m, 0);
    for (auto _ : state) benchmark::DoNotOptimize(op_left(A));
}
BENCHMARK(BM_OpLeft)->Unit(benchmark::kMillisecond);

void BM_InverseOp(benchmark::State& state)
{
    auto m = affine(0);
    auto T = op_left(random_symbol(m, 0));
    for (auto _ : state) benchmark::DoNotOptimize(inverse_op(T));
}
BENCHMARK(BM_InverseOp)->Unit(benchmark::kMillisecond);

void BM_CyclicMoyal(benchmark::State& state)
{
    GridConfig c;
    c.backend = Backend::cyclic;
    c.n = state.range(0);
    auto m = make_model(c);
    auto A = random_symbol(m, 0), B = random_symbol(m, 1);
    for (auto _ : state) benchmark::DoNotOptimize(moyal_product(A, B));
}
BENCHMARK(BM_CyclicMoyal)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
