#include <benchmark/benchmark.h>

#include "ghcp/analysis.hpp"
#include "ghcp/experiment.hpp"

using namespace ghcp;

namespace {

const LoadedConfig& directional() {
    static LoadedConfig lc = parse_config(R"({"mechanism": "directional"})");
    return lc;
}

const LoadedConfig& cross_link() {
    static LoadedConfig lc = parse_config(R"({"mechanism": "cross_link"})");
    return lc;
}

}  // namespace

static void BM_UnionAreaPetals(benchmark::State& state) {
    const LoadedConfig& lc = directional();
    PairGeometry a = typical_pair(lc.network.d);
    PairGeometry b = interferer_pair(45.0, 0.7, 2.5, lc.network.d);
    for (auto _ : state)
        benchmark::DoNotOptimize(union_area(a, b, lc.network.exclusion));
}
BENCHMARK(BM_UnionAreaPetals);

static void BM_UnionAreaDisks(benchmark::State& state) {
    const LoadedConfig& lc = cross_link();
    PairGeometry a = typical_pair(lc.network.d);
    PairGeometry b = interferer_pair(45.0, 0.7, 2.5, lc.network.d);
    for (auto _ : state)
        benchmark::DoNotOptimize(union_area(a, b, lc.network.exclusion));
}
BENCHMARK(BM_UnionAreaDisks);

static void BM_UnionVolumeCachedPetals(benchmark::State& state) {
    ExclusionGeometry geom(directional().network);
    double r = 20.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(geom.union_volume(r, 0.7, 2.5));
        r = r < 120.0 ? r + 0.37 : 20.0;  // mix touching and disjoint cases
    }
}
BENCHMARK(BM_UnionVolumeCachedPetals);

static void BM_SCriteria(benchmark::State& state) {
    const NetworkConfig& cfg = directional().network;
    double r = 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s_criteria(r, 1.1, 0.3, cfg));
        r = r < 250.0 ? r + 1.7 : 10.0;
    }
}
BENCHMARK(BM_SCriteria);
