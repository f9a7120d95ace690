#include "minkbranch/minkbranch.hpp"

#include <benchmark/benchmark.h>

using namespace minkbranch;

namespace {

RadialProblem annulus_problem() {
    return RadialProblem({2, 0.5, 1.0}, linear_plus_family(Weight::constant(1.0), 1.0));
}

void BM_integrate_profile(benchmark::State& state) {
    const RadialProblem p = annulus_problem();
    for (auto _ : state) benchmark::DoNotOptimize(integrate_profile(p, 20.0, 0.25));
}
BENCHMARK(BM_integrate_profile);

void BM_solve_lambda_for_s(benchmark::State& state) {
    const RadialProblem p = annulus_problem();
    for (auto _ : state) benchmark::DoNotOptimize(solve_lambda_for_s(p, 0.25));
}
BENCHMARK(BM_solve_lambda_for_s);

void BM_principal_eigenvalue(benchmark::State& state) {
    const RadialDomain d{3, 0.0, 1.0};
    const int cells = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(principal_eigenvalue(d, Weight::constant(1.0), cells));
}
BENCHMARK(BM_principal_eigenvalue)->Arg(512)->Arg(2048);

void BM_green_apply(benchmark::State& state) {
    const RadialDomain d{3, 0.0, 1.0};
    const GreenKernel k(d);
    const auto grid = QuadratureGrid::uniform(d, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(green_apply(k, [](double r) { return r; }, grid));
}
BENCHMARK(BM_green_apply)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
