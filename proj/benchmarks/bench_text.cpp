#include "wikitrends/rng.hpp"
#include "wikitrends/text.hpp"

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

using namespace wikitrends;

namespace {

std::string lorem_text(size_t words, uint64_t seed) {
    static const char* pool[] = {"final",   "goal",    "match",  "party",  "album",
                                 "election", "stadium", "song",   "vote",   "league",
                                 "crowd",   "минута",  "équipe", "saison", "the"};
    Rng rng(seed);
    std::string text;
    for (size_t i = 0; i < words; ++i) {
        text += pool[rng.next_below(sizeof(pool) / sizeof(pool[0]))];
        text += ' ';
    }
    return text;
}

std::vector<ClusterDoc> random_corpus(uint32_t n_docs, uint32_t vocab, uint64_t seed) {
    Rng rng(seed);
    std::vector<ClusterDoc> docs;
    for (uint32_t d = 0; d < n_docs; ++d) {
        ClusterDoc doc;
        doc.cluster_id = d;
        for (uint32_t word = 0; word < vocab; ++word)
            if (rng.next_bool(0.4))
                doc.term_counts["token" + std::to_string(word)] =
                    static_cast<uint32_t>(rng.next_in(1, 5));
        docs.push_back(std::move(doc));
    }
    return docs;
}

void BM_tokenize(benchmark::State& state) {
    const std::string text = lorem_text(static_cast<size_t>(state.range(0)), 31);
    LangConfig config;
    config.stopwords = {"the"};
    for (auto _ : state)
        benchmark::DoNotOptimize(tokenize(text, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_tokenize)->Arg(1 << 8)->Arg(1 << 12)->Arg(1 << 16);

void BM_tfidf_keywords(benchmark::State& state) {
    const auto docs =
        random_corpus(static_cast<uint32_t>(state.range(0)), 400, 32);
    const KeywordConfig config;
    for (auto _ : state)
        benchmark::DoNotOptimize(tfidf_keywords(docs, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_tfidf_keywords)->Arg(16)->Arg(128)->Arg(512);

void BM_lda_fit(benchmark::State& state) {
    const auto docs = random_corpus(16, 120, 33);
    LdaConfig config;
    config.k = 10;
    config.iterations = static_cast<uint32_t>(state.range(0));
    config.seed = 34;
    for (auto _ : state)
        benchmark::DoNotOptimize(lda_fit(docs, config));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_lda_fit)->Arg(10)->Arg(50);

} // namespace
