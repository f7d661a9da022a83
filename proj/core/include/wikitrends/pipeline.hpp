#pragma once

#include "wikitrends/burst.hpp"
#include "wikitrends/graph.hpp"
#include "wikitrends/ingest.hpp"
#include "wikitrends/label.hpp"
#include "wikitrends/report.hpp"
#include "wikitrends/text.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace wikitrends {

/// Input locations for one language edition (absolute after config load).
struct LanguageInputs {
    std::string code;
    std::string pageview_glob;
    std::filesystem::path edges;
    std::filesystem::path summaries;
    std::filesystem::path stopwords;
    std::filesystem::path rules;
};

struct LdaSettings {
    bool enabled = false;
    LdaConfig config;
};

struct ClassifierSettings {
    double smoothing = 1.0;
    double train_fraction = 0.8;
};

struct PipelineConfig {
    int config_version = 1;
    uint64_t seed = 0;
    std::filesystem::path output_dir;
    int64_t start_hour = 0;
    int64_t end_hour = 0;
    IngestFilters filters;
    BurstConfig burst;
    GraphConfig graph;
    KeywordConfig keywords;
    LdaSettings lda;
    ClassifierSettings classifier;
    uint32_t delta_hours = 48;
    std::vector<LanguageInputs> languages;
    std::string config_digest; // sha256 of the config file bytes

    /// Stable run identifier: 16 hex digits of sha256(digest ":" seed).
    /// Depends on the config content and seed only, never on output paths
    /// or wall time, so re-runs produce identical artifacts.
    std::string run_id() const;
};

/// Parses and validates a JSON config; relative paths resolve against the
/// config file's directory. Throws ConfigError on anything missing,
/// malformed, or pointing at a nonexistent input.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Per-language output locations under <output_dir>/<code>/.
struct StagePaths {
    std::filesystem::path dir;
    std::filesystem::path views_data;   // views.bin
    std::filesystem::path views_index;  // views.idx
    std::filesystem::path summaries;    // summaries.jsonl (filtered)
    std::filesystem::path bursts;       // bursts.jsonl
    std::filesystem::path graph_json;   // graph.json
    std::filesystem::path graph_gexf;   // graph.gexf
    std::filesystem::path keywords;     // keywords.json
    std::filesystem::path lda;          // lda.json (optional)
    std::filesystem::path labels;       // labels.json
    std::filesystem::path metrics;      // metrics.csv
    std::filesystem::path confusion;    // confusion.csv
    std::filesystem::path trends;       // trends.json
    std::filesystem::path trends_csv;   // trends_series.csv
    std::filesystem::path topics;       // topics.json
};
StagePaths stage_paths(const std::filesystem::path& output_dir, const std::string& code);

/// Each stage reads the previous stage's files and writes its own, so
/// subcommands composed manually produce the same bytes as a full run.
void run_ingest_stage(const PipelineConfig& config, const LanguageInputs& lang);
void run_detect_stage(const PipelineConfig& config, const LanguageInputs& lang);
void run_cluster_stage(const PipelineConfig& config, const LanguageInputs& lang);
void run_keywords_stage(const PipelineConfig& config, const LanguageInputs& lang);
void run_label_stage(const PipelineConfig& config, const LanguageInputs& lang);
void run_trends_stage(const PipelineConfig& config, const LanguageInputs& lang);

/// Cross-language alignment over every language's trends file; writes
/// <output_dir>/alignment.json.
void run_compare_stage(const PipelineConfig& config);

/// Hashes everything under output_dir into <output_dir>/manifest.json
/// ({path, sha256, bytes} sorted by path, the manifest itself excluded).
void write_manifest(const PipelineConfig& config);

/// All stages for every language, then alignment, then the manifest.
/// Stage failures are rethrown as StageError with the stage and language
/// in the message.
void run_pipeline(const PipelineConfig& config);

} // namespace wikitrends
