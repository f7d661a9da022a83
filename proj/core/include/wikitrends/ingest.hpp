#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wikitrends {

/// Bijective title <-> dense id map for one language edition.
/// Titles keep their underscores; ids are contiguous 0..N-1.
struct PageIndex {
    std::string language;
    std::vector<std::string> titles;
    std::unordered_map<std::string, uint32_t> ids;

    /// Returns the id of title, inserting it if new.
    uint32_t add(const std::string& title);
    std::optional<uint32_t> find(const std::string& title) const;
    const std::string& title_of(uint32_t id) const { return titles[id]; }
    uint32_t size() const { return static_cast<uint32_t>(titles.size()); }
};

struct ViewRecord {
    std::string project;
    std::string title;
    uint32_t views = 0;
};

/// Dense pages x hours count matrix. Row p is the hourly series of page p
/// starting at start_hour (hours since the Unix epoch).
struct ViewMatrix {
    PageIndex index;
    int64_t start_hour = 0;
    uint32_t n_hours = 0;
    std::vector<uint32_t> counts; // row-major, index.size() * n_hours

    uint32_t at(uint32_t page, uint32_t t) const {
        return counts[static_cast<size_t>(page) * n_hours + t];
    }
    uint32_t& at(uint32_t page, uint32_t t) {
        return counts[static_cast<size_t>(page) * n_hours + t];
    }
    const uint32_t* row(uint32_t page) const {
        return counts.data() + static_cast<size_t>(page) * n_hours;
    }
    uint64_t total() const;
    uint64_t row_total(uint32_t page) const;
};

/// Directed hyperlink edges over PageIndex ids; deduplicated, no self-loops.
struct EdgeList {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    uint64_t skipped = 0; // lines whose titles were not in the index
};

/// page id -> plain-text article summary (may be empty)
using SummaryStore = std::map<uint32_t, std::string>;

/// Parameters for the synthetic benchmark generator.
struct SyntheticSpec {
    uint32_t n_clusters = 3;
    uint32_t pages_per_cluster = 20;
    uint32_t n_noise_pages = 500;
    uint32_t t_hours = 1344;
    double baseline_rate = 200.0;
    double burst_magnitude = 50.0;
    double intra_cluster_edge_prob = 0.3;
    double inter_cluster_edge_prob = 0.01;
    uint64_t seed = 42;
};

struct SyntheticData {
    ViewMatrix matrix;
    EdgeList edges;
    std::map<uint32_t, uint32_t> planted;                    // cluster pages only
    std::vector<std::pair<uint32_t, uint32_t>> burst_windows; // per cluster, [start, end)
};

/// Parses one pageview dump line: "project title views bytes", split on
/// single spaces. The bytes field must parse but is discarded; the hour
/// comes from the file name, not the line. Throws MalformedLine.
ViewRecord parse_pageview_line(const std::string& line);

/// Inverse of parse_pageview_line (bytes written as 0).
std::string serialize_pageview_line(const ViewRecord& rec);

/// Loads "source_title<TAB>target_title" lines. Unknown titles are counted
/// and skipped; duplicates and self-loops dropped. Throws IoError,
/// ParseError (line without a tab).
EdgeList load_edges(const std::filesystem::path& path, const PageIndex& index);

/// Builds a PageIndex from every title mentioned in an edge file,
/// in first-appearance order.
PageIndex build_page_index_from_edges(const std::filesystem::path& path,
                                      std::string language);

/// Empty matrix covering [start_hour, end_hour). Throws EmptyRange.
ViewMatrix make_view_matrix(PageIndex index, int64_t start_hour, int64_t end_hour);

/// Aggregates (record, hour) pairs into a matrix over [start_hour, end_hour).
/// Records outside the range or with unknown titles are skipped.
ViewMatrix build_view_matrix(const std::vector<std::pair<ViewRecord, int64_t>>& records,
                             PageIndex index, int64_t start_hour, int64_t end_hour);

struct PageviewLoadStats {
    uint64_t lines = 0;          // records parsed from in-range files
    uint64_t unknown_titles = 0; // records whose title is not in the index
    uint64_t out_of_range = 0;   // files skipped: stamp outside the matrix range
};

/// Streams pageview files (plain or gzip; hour taken from each file name)
/// into an existing matrix. Throws IoError, ParseError, MalformedLine.
PageviewLoadStats load_pageview_files(ViewMatrix& matrix,
                                      const std::vector<std::filesystem::path>& files);

/// Minimum-activity filters applied after ingestion. Degree is the
/// undirected hyperlink degree (unique neighbors).
struct IngestFilters {
    uint64_t min_total_views = 0;
    uint32_t min_degree = 0;
};

/// Drops pages failing the filters and compacts ids (ascending survivor
/// order); edges and summaries are remapped in place.
void apply_filters(ViewMatrix& matrix, EdgeList& edges, SummaryStore& summaries,
                   const IngestFilters& filters);

/// Synthetic benchmark: noise pages draw baseline-rate counts; each
/// cluster's pages share one contiguous burst window (6-24 h) whose rate
/// starts at burst_magnitude x baseline and halves across the window, so
/// co-bursting pages are strongly correlated. Edges are sampled with the
/// intra/inter probabilities. Deterministic per seed. Throws InvalidSpec.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

/// Binary matrix cache. data file: magic "WKTS1", little-endian u32 N,
/// u32 T, i64 start_hour, then row-major u32 counts. index file: one
/// "id<TAB>title" line per page.
void save_matrix_cache(const ViewMatrix& matrix, const std::filesystem::path& data_path,
                       const std::filesystem::path& index_path);
ViewMatrix load_matrix_cache(const std::filesystem::path& data_path,
                             const std::filesystem::path& index_path,
                             std::string language = "");

/// Summaries as JSONL, one {"id"|"title", "summary"} object per line.
/// Unknown titles/ids are logged and skipped.
SummaryStore load_summaries(const std::filesystem::path& path, const PageIndex& index);
void save_summaries(const std::filesystem::path& path, const SummaryStore& store,
                    const PageIndex& index);

} // namespace wikitrends
