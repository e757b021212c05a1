// Serial reference kernels against their OpenMP counterparts.
// Thread count follows ESSNORM_WORKERS (or OMP_NUM_THREADS).

#include <benchmark/benchmark.h>

#include "essnorm/kernels.hpp"
#include "essnorm/random.hpp"

using namespace essnorm;

namespace {

MatrixOperator make_operator(std::size_t n)
{
    Rng rng(2024);
    return random_matrix(rng, build_space(random_masses(rng, n)));
}

template <class F>
void run_p1(benchmark::State& state, F kernel)
{
    const auto a = make_operator(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernel(a.view()));
    state.SetComplexityN(state.range(0));
}

template <class F>
void run_estimate(benchmark::State& state, F kernel)
{
    const auto a = make_operator(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernel(a.view(), 2.0, kernels::EstimateOptions{}));
}

void serial_p1(benchmark::State& s) { run_p1(s, kernels::serial::opnorm_p1); }
void parallel_p1(benchmark::State& s) { run_p1(s, kernels::parallel::opnorm_p1); }
void serial_estimate(benchmark::State& s) { run_estimate(s, kernels::serial::opnorm_estimate); }
void parallel_estimate(benchmark::State& s) { run_estimate(s, kernels::parallel::opnorm_estimate); }

} // namespace

BENCHMARK(serial_p1)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(parallel_p1)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(serial_estimate)->RangeMultiplier(2)->Range(16, 128);
BENCHMARK(parallel_estimate)->RangeMultiplier(2)->Range(16, 128);

int main(int argc, char** argv)
{
    kernels::configure_workers_from_env();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
