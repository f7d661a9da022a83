#include "wikitrends/burst.hpp"
#include "wikitrends/ingest.hpp"
#include "wikitrends/rng.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

using namespace wikitrends;

namespace {

// Baseline noise with occasional heavy spikes, like a page that trends.
std::vector<uint32_t> spiky_series(size_t n, uint64_t seed) {
    Rng rng(seed);
    std::vector<uint32_t> series(n);
    for (uint32_t& x : series)
        x = rng.next_bool(0.02) ? 1000 + static_cast<uint32_t>(rng.next_below(50000))
                                : static_cast<uint32_t>(rng.next_below(300));
    return series;
}

void BM_rolling_stats(benchmark::State& state) {
    const auto series = spiky_series(static_cast<size_t>(state.range(0)), 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(rolling_stats(series, 168));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_rolling_stats)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

void BM_detect_bursts(benchmark::State& state) {
    const auto series = spiky_series(static_cast<size_t>(state.range(0)), 12);
    const BurstConfig config;
    for (auto _ : state)
        benchmark::DoNotOptimize(detect_bursts(series, 0, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_detect_bursts)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 17);

void BM_trending_pages(benchmark::State& state) {
    SyntheticSpec spec;
    spec.n_clusters = 3;
    spec.pages_per_cluster = 10;
    spec.n_noise_pages = static_cast<uint32_t>(state.range(0)) - 30;
    spec.t_hours = 1344;
    spec.seed = 13;
    const SyntheticData data = generate_synthetic(spec);
    const BurstConfig config;
    for (auto _ : state)
        benchmark::DoNotOptimize(trending_pages(data.matrix, config));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 1344);
}
BENCHMARK(BM_trending_pages)->Arg(100)->Arg(400);

} // namespace

BENCHMARK_MAIN();
