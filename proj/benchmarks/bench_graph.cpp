#include "wikitrends/graph.hpp"
#include "wikitrends/rng.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

using namespace wikitrends;

namespace {

// Random weighted graph with expected degree `avg_degree`.
TrendGraph random_graph(uint32_t n, double avg_degree, uint64_t seed) {
    Rng rng(seed);
    const double p = avg_degree / static_cast<double>(n - 1);
    TrendGraph graph;
    for (uint32_t i = 0; i < n; ++i) {
        graph.nodes.push_back(i);
        graph.degree[i] = 0;
    }
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = i + 1; j < n; ++j) {
            if (!rng.next_bool(p)) continue;
            const double w = 0.25 + 0.75 * rng.next_double();
            graph.edges[{i, j}] = w;
            graph.adjacency[i].emplace_back(j, w);
            graph.adjacency[j].emplace_back(i, w);
            ++graph.degree[i];
            ++graph.degree[j];
        }
    }
    return graph;
}

std::vector<std::vector<uint32_t>> random_arcs(uint32_t n, double avg_degree,
                                               uint64_t seed) {
    Rng rng(seed);
    const double p = avg_degree / static_cast<double>(n - 1);
    std::vector<std::vector<uint32_t>> arcs(n);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t j = 0; j < n; ++j)
            if (i != j && rng.next_bool(p)) arcs[i].push_back(j);
    return arcs;
}

void BM_louvain(benchmark::State& state) {
    const auto graph = random_graph(static_cast<uint32_t>(state.range(0)), 8.0, 21);
    for (auto _ : state)
        benchmark::DoNotOptimize(louvain(graph));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_louvain)->Arg(64)->Arg(256)->Arg(1024);

void BM_modularity(benchmark::State& state) {
    const auto graph = random_graph(static_cast<uint32_t>(state.range(0)), 8.0, 22);
    const Partition partition = louvain(graph);
    for (auto _ : state)
        benchmark::DoNotOptimize(modularity(graph, partition));
}
BENCHMARK(BM_modularity)->Arg(256)->Arg(1024);

void BM_pagerank(benchmark::State& state) {
    const uint32_t n = static_cast<uint32_t>(state.range(0));
    const auto arcs = random_arcs(n, 8.0, 23);
    TrendGraph graph;
    for (uint32_t i = 0; i < n; ++i) graph.nodes.push_back(i);
    for (uint32_t i = 0; i < n; ++i)
        if (!arcs[i].empty()) graph.out_arcs[i] = arcs[i];
    const GraphConfig config;
    for (auto _ : state)
        benchmark::DoNotOptimize(pagerank(graph, graph.nodes, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_pagerank)->Arg(256)->Arg(1024)->Arg(4096);

} // namespace
