// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "risemf/harness.hpp"

using namespace risemf;

namespace {

UplinkProblem drop_problem(int n, int m)
{
    ExperimentConfig config;
    config.n = n;
    config.m = m;
    const auto scenario = draw_drop(config, 0, m, n);
    return make_problem(scenario.channels, scenario.users, dbm_to_watts(-95.0));
}

void BM_Gradient(benchmark::State& state)
{
    const auto n = static_cast<int>(state.range(0));
    const auto problem = drop_problem(n, 32);
    const PhaseVector theta = PhaseVector::Constant(n, 0.3);
    const Multipliers lambda = Multipliers::Zero(problem.users());
    for (auto _ : state) {
        benchmark::DoNotOptimize(grad_theta(build_weighted(problem, theta, lambda)));
    }
}
BENCHMARK(BM_Gradient)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_Hessian(benchmark::State& state)
{
    const auto n = static_cast<int>(state.range(0));
    const auto problem = drop_problem(n, 32);
    const PhaseVector theta = PhaseVector::Constant(n, 0.3);
    const auto wp = build_weighted(problem, theta, Multipliers::Zero(problem.users()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hessian_theta(wp));
    }
}
BENCHMARK(BM_Hessian)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_ZeroForcing(benchmark::State& state)
{
    const auto problem = drop_problem(128, static_cast<int>(state.range(0)));
    const PhaseVector theta = PhaseVector::Constant(128, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_link(problem, theta));
    }
}
BENCHMARK(BM_ZeroForcing)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_Solver(benchmark::State& state)
{
    const auto problem = drop_problem(static_cast<int>(state.range(0)), 32);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dual_gradient_descent(problem));
    }
}
BENCHMARK(BM_Solver)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
