#include <benchmark/benchmark.h>

#include "ghcp/experiment.hpp"
#include "ghcp/point_process.hpp"

using namespace ghcp;

static void BM_SampleBipolar(benchmark::State& state) {
    LoadedConfig lc = parse_config(R"({"mechanism": "directional", "lambda_p": 1e-3})");
    Rect window = Rect::centered(800.0, 800.0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng rng = make_stream(seed++, 0);
        benchmark::DoNotOptimize(sample_bipolar(lc.network, window, rng));
    }
}
BENCHMARK(BM_SampleBipolar);

static void BM_ThinType1(benchmark::State& state) {
    LoadedConfig lc = parse_config(R"({"mechanism": "directional", "lambda_p": 1e-3})");
    Rect window = Rect::centered(800.0, 800.0);
    Realization real = sample_bipolar(lc.network, window, std::uint64_t(5));
    for (auto _ : state) benchmark::DoNotOptimize(thin_type1(real, lc.network));
}
BENCHMARK(BM_ThinType1);

static void BM_ThinType2(benchmark::State& state) {
    LoadedConfig lc = parse_config(R"({"mechanism": "directional", "lambda_p": 1e-3})");
    Rect window = Rect::centered(800.0, 800.0);
    Realization real = sample_bipolar(lc.network, window, std::uint64_t(5));
    for (auto _ : state) benchmark::DoNotOptimize(thin_type2(real, lc.network));
}
BENCHMARK(BM_ThinType2);
