// Serial reference loops against the OpenMP kernels on the default grid.

#include "esl/defects.hpp"
#include "esl/fitting.hpp"
#include "esl/harness.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace esl;

const SampleSet& grid()
{
    static const SampleSet s = make_sample_set({}, 0);
    return s;
}

TernaryFunction candidate()
{
    PerturbationSpec ps;
    ps.amplitude = 1e-3;
    ps.seed = 7;
    return perturb(SolutionFamily::power(1.5, 2.5), ps);
}

void BM_SupSymmetry(benchmark::State& state, Execution exec)
{
    const auto H = candidate();
    for (auto _ : state) benchmark::DoNotOptimize(sup_defect(DefectKind::symmetry, H, grid(), std::nullopt, {false, exec}));
}

void BM_SupEntropy(benchmark::State& state, Execution exec)
{
    const auto H = candidate();
    for (auto _ : state) benchmark::DoNotOptimize(sup_defect(DefectKind::entropy, H, grid(), std::nullopt, {false, exec}));
}

void BM_SupHomogeneity(benchmark::State& state, Execution exec)
{
    const auto H = candidate();
    for (auto _ : state) benchmark::DoNotOptimize(sup_defect(DefectKind::homogeneity, H, grid(), 2.5, {false, exec}));
}

void BM_FitPower(benchmark::State& state, Execution exec)
{
    const auto H = candidate();
    for (auto _ : state) benchmark::DoNotOptimize(fit_power(H, 2.5, grid(), {FitMetric::sup_norm, exec}));
}

BENCHMARK_CAPTURE(BM_SupSymmetry, serial, Execution::serial);
BENCHMARK_CAPTURE(BM_SupSymmetry, parallel, Execution::parallel);
BENCHMARK_CAPTURE(BM_SupEntropy, serial, Execution::serial);
BENCHMARK_CAPTURE(BM_SupEntropy, parallel, Execution::parallel);
BENCHMARK_CAPTURE(BM_SupHomogeneity, serial, Execution::serial);
BENCHMARK_CAPTURE(BM_SupHomogeneity, parallel, Execution::parallel);
BENCHMARK_CAPTURE(BM_FitPower, serial, Execution::serial);
BENCHMARK_CAPTURE(BM_FitPower, parallel, Execution::parallel);

} // namespace

BENCHMARK_MAIN();
