#include <benchmark/benchmark.h>

#include "ghcp/specfun.hpp"

using namespace ghcp;

static void BM_Kummer1F1(benchmark::State& state) {
    double x = -0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kummer_1f1(1.05, 2.05, x));
        x = x > -200.0 ? x * 1.1 : -0.5;
    }
}
BENCHMARK(BM_Kummer1F1);

static void BM_GenExpIntegral(benchmark::State& state) {
    double x = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gen_exp_integral(1.952, x));
        x = x < 50.0 ? x * 1.3 : 0.01;
    }
}
BENCHMARK(BM_GenExpIntegral);

static void BM_ToeplitzExpmColsum(benchmark::State& state) {
    const double c[4] = {-1.3, 0.4, -0.1, 0.02};
    for (auto _ : state)
        benchmark::DoNotOptimize(lt_toeplitz_expm_colsum(std::span<const double>(c, 4)));
}
BENCHMARK(BM_ToeplitzExpmColsum);

static void BM_GammaExpectation(benchmark::State& state) {
    for (auto _ : state) {
        double v = gamma_expectation(
            [](double g) { return gen_exp_integral(1.952, 0.3 * g + 1e-12); }, 3);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_GammaExpectation);
