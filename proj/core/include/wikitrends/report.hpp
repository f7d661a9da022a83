#pragma once

#include "wikitrends/graph.hpp"
#include "wikitrends/ingest.hpp"
#include "wikitrends/text.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace wikitrends {

/// One detected trend: a cluster of pages with its summed view series.
struct Trend {
    std::string id; // "<language>-<cluster>-<run tag>"
    std::string language;
    uint32_t cluster_id = 0;
    std::vector<uint32_t> members; // page ids, ascending
    uint32_t central_page = 0;     // the member with the highest PageRank
    std::string label;
    KeywordList keywords;
    std::vector<uint32_t> series; // hourly views summed over members
    uint32_t peak_hour = 0;       // argmax of series (ties -> earliest), offset from series start
};

/// Builds one Trend per non-filtered cluster. series[t] is the exact integer
/// sum of the member rows; ordering is by descending max series value, ties
/// by ascending cluster id. Clusters absent from the label/keyword maps get
/// empty fields. Throws InconsistentInputs when a partition page id falls
/// outside the matrix or a member is missing a PageRank score.
std::vector<Trend> assemble_trends(const ViewMatrix& matrix, const Partition& partition,
                                   const std::map<uint32_t, double>& pagerank_scores,
                                   const std::map<uint32_t, KeywordList>& keywords,
                                   const std::map<uint32_t, std::string>& cluster_labels,
                                   const std::string& run_tag);

struct TopicDistribution {
    std::map<std::string, uint64_t> cluster_counts; // trends per label
    std::map<std::string, double> cluster_shares;   // sums to 1
    std::map<std::string, uint64_t> page_counts;    // member pages per label
    std::map<std::string, double> page_shares;
};

/// Label histogram over trends, by trend and by member page. Throws NoTrends.
TopicDistribution topic_distribution(const std::vector<Trend>& trends);

struct AlignRef {
    std::string language;
    std::string trend_id;
};

struct TrendAlignment {
    uint32_t delta_hours = 48;
    std::vector<std::vector<AlignRef>> groups; // singleton group = language-unique trend
};

/// The fields alignment actually needs, loadable without a page index.
struct AlignInput {
    std::string language;
    std::string trend_id;
    std::string label;
    uint32_t peak_hour = 0;
};

/// Greedy grouping: trends sorted by peak hour (ties -> language, id) join
/// the earliest open group that shares their label and whose peaks all lie
/// within delta_hours; otherwise they open a new group. Every trend lands in
/// exactly one group.
TrendAlignment align_trends(const std::vector<AlignInput>& trends, uint32_t delta_hours = 48);
TrendAlignment align_trends(const std::vector<std::vector<Trend>>& per_language,
                            uint32_t delta_hours = 48);

struct TrendsFile {
    std::string language;
    std::string generated_at;
    std::vector<Trend> trends;
};

/// {schema_version:1, language, generated_at, trends:[...]}; members and the
/// central page are serialized as titles. Round-trips losslessly through
/// load_trends_json with the same index.
void export_trends_json(const std::filesystem::path& path, const std::vector<Trend>& trends,
                        const PageIndex& index, const std::string& generated_at);
TrendsFile load_trends_json(const std::filesystem::path& path, const PageIndex& index);

/// Just the alignment-relevant fields of a trends file (no index needed).
std::vector<AlignInput> load_align_inputs(const std::filesystem::path& path);

/// "hour,<trend ids...>" header, then one row per hour of the shared series
/// length, stamped with absolute hours from start_hour. Throws
/// InconsistentInputs when series lengths differ.
void export_trends_csv(const std::filesystem::path& path, const std::vector<Trend>& trends,
                       int64_t start_hour);

/// Dispatch by format name ("json" or "csv"); throws UnsupportedFormat.
void export_trends(const std::filesystem::path& path, const std::string& format,
                   const std::vector<Trend>& trends, const PageIndex& index,
                   const std::string& generated_at, int64_t start_hour);

void export_alignment_json(const std::filesystem::path& path, const TrendAlignment& alignment);
TrendAlignment load_alignment_json(const std::filesystem::path& path);

void export_topics_json(const std::filesystem::path& path, const TopicDistribution& dist,
                        const std::string& language);

} // namespace wikitrends
