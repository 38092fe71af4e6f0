// Serial reference vs OpenMP kernels: kernel projection and the Newton
// Jacobian, which dominate a solve.
#include <benchmark/benchmark.h>

#include <cmath>

#include "hybridie/hybrid_basis.hpp"
#include "hybridie/solver.hpp"

namespace {

using hybridie::Execution;

void project_kernel_bench(benchmark::State& state, Execution exec) {
    const hybridie::BasisConfig config(static_cast<int>(state.range(0)), 4);
    const auto g = [](double t, double s) { return std::sin(t - s) * std::exp(t * s); };
    for (auto _ : state) benchmark::DoNotOptimize(hybridie::project_kernel(config, g, exec).entries.data());
    state.SetLabel(exec == Execution::serial ? "serial" : "parallel");
}

hybridie::AssembledSystem volterra_system(int q) {
    const hybridie::BasisConfig config(q, 4);
    auto kernel = hybridie::project_kernel(config, [](double t, double s) { return std::sin(t - s); });
    auto forcing = hybridie::project_function(config, [](double t) { return 2 * t * t * t + t * t - 12 * t + 12 * std::sin(t); });
    return hybridie::assemble(hybridie::EquationKind::volterra, 1.0, std::move(kernel), std::move(forcing), 0, 1,
                              hybridie::InitialConditions(config, {0.0}));
}

void jacobian_bench(benchmark::State& state, Execution exec) {
    const auto sys = volterra_system(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hybridie::forward_jacobian(sys, sys.forcing, exec).data());
    state.SetLabel(exec == Execution::serial ? "serial" : "parallel");
}

} // namespace

BENCHMARK_CAPTURE(project_kernel_bench, serial, Execution::serial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(project_kernel_bench, parallel, Execution::parallel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(jacobian_bench, serial, Execution::serial)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(jacobian_bench, parallel, Execution::parallel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
