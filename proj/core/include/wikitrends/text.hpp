#pragma once

#include "wikitrends/graph.hpp"
#include "wikitrends/ingest.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace wikitrends {

struct LangConfig {
    std::string language;
    std::set<std::string> stopwords; // lowercase
    uint32_t min_token_length = 2;   // in codepoints
};

/// One word per line; blank lines skipped. Throws IoError.
std::set<std::string> load_stopwords(const std::filesystem::path& path);

/// Lowercases Latin (incl. Latin-1 and Extended-A), Greek and Cyrillic
/// codepoints; everything else passes through.
std::string lower_utf8(std::string_view text);

/// Lowercase, split on non-alphanumeric codepoints, drop short tokens,
/// purely numeric tokens, and stopwords.
std::vector<std::string> tokenize(std::string_view text, const LangConfig& config);

/// Degree-weighted bag of words of one cluster: every page contributes its
/// summary token counts multiplied by max(degree, 1).
struct ClusterDoc {
    uint32_t cluster_id = 0;
    std::map<std::string, uint32_t> term_counts;
    std::vector<std::pair<uint32_t, uint32_t>> source_pages; // (page id, degree)
};

/// One document per non-filtered cluster. Pages without a summary are
/// logged and contribute nothing.
std::vector<ClusterDoc> build_cluster_docs(const Partition& partition,
                                           const SummaryStore& summaries,
                                           const std::map<uint32_t, uint32_t>& degrees,
                                           const LangConfig& config);

struct KeywordConfig {
    uint32_t top_k = 20;
};

using KeywordList = std::vector<std::pair<std::string, double>>;

/// tf = weighted count, idf = ln(n_docs / df) with no smoothing, so a
/// token present in every document scores exactly 0. Only strictly
/// positive scores are ranked (descending, ties by token). Throws
/// EmptyCorpus.
std::map<uint32_t, KeywordList> tfidf_keywords(const std::vector<ClusterDoc>& docs,
                                               const KeywordConfig& config);

struct LdaConfig {
    uint32_t k = 10;
    double alpha = 0; // <= 0 selects the 50/k default
    double beta = 0.01;
    uint32_t iterations = 1000;
    uint64_t seed = 0;
};

/// Per-sweep totals handed to the observer; all three stay equal to the
/// number of token instances throughout sampling.
struct LdaSweepStats {
    uint32_t sweep = 0;
    uint64_t topic_word_total = 0;
    uint64_t doc_topic_total = 0;
    uint64_t token_instances = 0;
};
using LdaSweepObserver = std::function<void(const LdaSweepStats&)>;

struct LdaModel {
    uint32_t k = 0;
    double alpha = 0;
    double beta = 0;
    uint32_t iterations = 0;
    uint64_t seed = 0;
    std::vector<std::string> vocab;         // sorted tokens; column order of phi
    std::vector<uint32_t> doc_ids;          // cluster ids; row order of theta
    std::vector<std::vector<double>> phi;   // k x |vocab|
    std::vector<std::vector<double>> theta; // docs x k
};

/// Collapsed Gibbs sampling over token instances (weighted counts expanded
/// as repeats). Deterministic per seed. Throws EmptyCorpus, InvalidK.
LdaModel lda_fit(const std::vector<ClusterDoc>& docs, const LdaConfig& config,
                 const LdaSweepObserver& observer = {});

/// Top-k tokens of one topic by phi, ties by token. Throws BadTopicIndex.
std::vector<std::string> lda_top_words(const LdaModel& model, uint32_t topic, uint32_t k);

/// Word-cloud weights: {cluster_id, keywords:[{token, score}]} per cluster.
void export_keywords_json(const std::filesystem::path& path,
                          const std::map<uint32_t, KeywordList>& keywords,
                          const std::string& language);
std::map<uint32_t, KeywordList> load_keywords_json(const std::filesystem::path& path);

} // namespace wikitrends
