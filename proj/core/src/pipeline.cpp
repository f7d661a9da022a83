#include "wikitrends/pipeline.hpp"

#include "wikitrends/errors.hpp"
#include "wikitrends/io_util.hpp"
#include "wikitrends/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace wikitrends {

namespace fs = std::filesystem;
using nlohmann::json;

std::string PipelineConfig::run_id() const {
    return sha256_hex(config_digest + ":" + std::to_string(seed)).substr(0, 16);
}

namespace {

const json& require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw ConfigError(where + " is missing \"" + key + "\"");
    return obj.at(key);
}

template <typename T>
T as(const json& value, const std::string& where) {
    try {
        return value.get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

template <typename T>
T field(const json& obj, const std::string& key, const std::string& where) {
    return as<T>(require(obj, key, where), where + "." + key);
}

template <typename T>
T field_or(const json& obj, const std::string& key, T fallback, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    return as<T>(obj.at(key), where + "." + key);
}

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

void require_exists(const fs::path& path, const std::string& what) {
    if (!fs::exists(path)) throw ConfigError(what + " does not exist: " + path.string());
}

// Converts any in-stage library error into a stage-tagged one so the CLI
// can report which step of which language failed.
template <typename Fn>
void stage(const std::string& name, const std::string& lang, Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(name + "[" + lang + "]", e.what());
    }
}

} // namespace

PipelineConfig load_pipeline_config(const fs::path& path) {
    std::string raw;
    try {
        raw = read_file(path);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    json doc;
    try {
        doc = json::parse(raw);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");

    PipelineConfig config;
    config.config_digest = sha256_hex(raw);
    config.config_version = field<int>(doc, "config_version", "config");
    if (config.config_version != 1)
        throw ConfigError("unsupported config_version " +
                          std::to_string(config.config_version));
    config.seed = field<uint64_t>(doc, "seed", "config");
    config.output_dir = resolve(base, field_or<std::string>(doc, "output_dir", "out", "config"));

    const json& time = require(doc, "time", "config");
    config.start_hour = field<int64_t>(time, "start_hour", "time");
    config.end_hour = field<int64_t>(time, "end_hour", "time");
    if (config.end_hour <= config.start_hour)
        throw ConfigError("time.end_hour must exceed time.start_hour");

    if (doc.contains("ingest")) {
        const json& j = doc.at("ingest");
        config.filters.min_total_views =
            field_or<uint64_t>(j, "min_total_views", 0, "ingest");
        config.filters.min_degree = field_or<uint32_t>(j, "min_degree", 0, "ingest");
    }
    if (doc.contains("burst")) {
        const json& j = doc.at("burst");
        config.burst.window_hours =
            field_or<uint32_t>(j, "window_hours", config.burst.window_hours, "burst");
        config.burst.z_threshold =
            field_or<double>(j, "z_threshold", config.burst.z_threshold, "burst");
        config.burst.min_views =
            field_or<uint32_t>(j, "min_views", config.burst.min_views, "burst");
        config.burst.epsilon = field_or<double>(j, "epsilon", config.burst.epsilon, "burst");
    }
    if (config.burst.window_hours < 2) throw ConfigError("burst.window_hours must be >= 2");
    if (static_cast<int64_t>(config.burst.window_hours) >=
        config.end_hour - config.start_hour)
        throw ConfigError("burst.window_hours must be smaller than the time range");
    if (doc.contains("graph")) {
        const json& j = doc.at("graph");
        GraphConfig& g = config.graph;
        g.w_min = field_or<double>(j, "w_min", g.w_min, "graph");
        g.min_overlap_hours =
            field_or<uint32_t>(j, "min_overlap_hours", g.min_overlap_hours, "graph");
        g.damping = field_or<double>(j, "damping", g.damping, "graph");
        g.tol = field_or<double>(j, "tol", g.tol, "graph");
        g.max_iter = field_or<uint32_t>(j, "max_iter", g.max_iter, "graph");
        g.min_cluster_size =
            field_or<uint32_t>(j, "min_cluster_size", g.min_cluster_size, "graph");
        g.resolution = field_or<double>(j, "resolution", g.resolution, "graph");
    }
    if (config.graph.damping <= 0 || config.graph.damping >= 1)
        throw ConfigError("graph.damping must lie in (0, 1)");
    if (doc.contains("keywords"))
        config.keywords.top_k =
            field_or<uint32_t>(doc.at("keywords"), "top_k", config.keywords.top_k, "keywords");
    if (doc.contains("lda")) {
        const json& j = doc.at("lda");
        config.lda.enabled = field_or<bool>(j, "enabled", false, "lda");
        config.lda.config.k = field_or<uint32_t>(j, "k", config.lda.config.k, "lda");
        config.lda.config.alpha = field_or<double>(j, "alpha", config.lda.config.alpha, "lda");
        config.lda.config.beta = field_or<double>(j, "beta", config.lda.config.beta, "lda");
        config.lda.config.iterations =
            field_or<uint32_t>(j, "iterations", config.lda.config.iterations, "lda");
        if (config.lda.enabled && config.lda.config.k == 0)
            throw ConfigError("lda.k must be positive");
    }
    if (doc.contains("classifier")) {
        const json& j = doc.at("classifier");
        config.classifier.smoothing =
            field_or<double>(j, "smoothing", config.classifier.smoothing, "classifier");
        config.classifier.train_fraction = field_or<double>(
            j, "train_fraction", config.classifier.train_fraction, "classifier");
    }
    if (config.classifier.smoothing <= 0)
        throw ConfigError("classifier.smoothing must be positive");
    if (config.classifier.train_fraction <= 0 || config.classifier.train_fraction > 1)
        throw ConfigError("classifier.train_fraction must lie in (0, 1]");
    if (doc.contains("alignment"))
        config.delta_hours =
            field_or<uint32_t>(doc.at("alignment"), "delta_hours", 48, "alignment");

    const json& languages = require(doc, "languages", "config");
    if (!languages.is_array() || languages.empty())
        throw ConfigError("config.languages must be a non-empty array");
    std::set<std::string> codes;
    for (const json& entry : languages) {
        LanguageInputs lang;
        lang.code = field<std::string>(entry, "code", "language");
        if (lang.code.empty()) throw ConfigError("language code must be non-empty");
        if (!codes.insert(lang.code).second)
            throw ConfigError("duplicate language code " + lang.code);
        const std::string where = "languages[" + lang.code + "]";
        lang.pageview_glob =
            resolve(base, field<std::string>(entry, "pageviews", where)).string();
        lang.edges = resolve(base, field<std::string>(entry, "edges", where));
        lang.summaries = resolve(base, field<std::string>(entry, "summaries", where));
        lang.stopwords = resolve(base, field<std::string>(entry, "stopwords", where));
        lang.rules = resolve(base, field<std::string>(entry, "rules", where));
        require_exists(lang.edges, where + ".edges");
        require_exists(lang.summaries, where + ".summaries");
        require_exists(lang.stopwords, where + ".stopwords");
        require_exists(lang.rules, where + ".rules");
        try {
            if (expand_glob(lang.pageview_glob).empty())
                throw ConfigError(where + ".pageviews matches no files: " +
                                  lang.pageview_glob);
        } catch (const IoError& e) {
            throw ConfigError(where + ".pageviews: " + e.what());
        }
        config.languages.push_back(std::move(lang));
    }
    return config;
}

StagePaths stage_paths(const fs::path& output_dir, const std::string& code) {
    StagePaths p;
    p.dir = output_dir / code;
    p.views_data = p.dir / "views.bin";
    p.views_index = p.dir / "views.idx";
    p.summaries = p.dir / "summaries.jsonl";
    p.bursts = p.dir / "bursts.jsonl";
    p.graph_json = p.dir / "graph.json";
    p.graph_gexf = p.dir / "graph.gexf";
    p.keywords = p.dir / "keywords.json";
    p.lda = p.dir / "lda.json";
    p.labels = p.dir / "labels.json";
    p.metrics = p.dir / "metrics.csv";
    p.confusion = p.dir / "confusion.csv";
    p.trends = p.dir / "trends.json";
    p.trends_csv = p.dir / "trends_series.csv";
    p.topics = p.dir / "topics.json";
    return p;
}

void run_ingest_stage(const PipelineConfig& config, const LanguageInputs& lang) {
    stage("ingest", lang.code, [&] {
        const StagePaths paths = stage_paths(config.output_dir, lang.code);
        PageIndex index = build_page_index_from_edges(lang.edges, lang.code);
        ViewMatrix matrix =
            make_view_matrix(std::move(index), config.start_hour, config.end_hour);
        const std::vector<fs::path> files = expand_glob(lang.pageview_glob);
        if (files.empty())
            throw IoError("no pageview files match " + lang.pageview_glob);
        const PageviewLoadStats stats = load_pageview_files(matrix, files);
        log_info(lang.code + ": " + std::to_string(stats.lines) + " records, " +
                 std::to_string(stats.unknown_titles) + " unknown titles, " +
                 std::to_string(stats.out_of_range) + " files out of range");
        EdgeList edges = load_edges(lang.edges, matrix.index);
        SummaryStore summaries = load_summaries(lang.summaries, matrix.index);
        apply_filters(matrix, edges, summaries, config.filters);
        save_matrix_cache(matrix, paths.views_data, paths.views_index);
        save_summaries(paths.summaries, summaries, matrix.index);
    });
}

void run_detect_stage(const PipelineConfig& config, const LanguageInputs& lang) {
    stage("detect", lang.code, [&] {
        const StagePaths paths = stage_paths(config.output_dir, lang.code);
        const ViewMatrix matrix =
            load_matrix_cache(paths.views_data, paths.views_index, lang.code);
        const auto bursts = trending_pages(matrix, config.burst);
        log_info(lang.code + ": " + std::to_string(bursts.size()) + " trending pages");
        export_bursts(paths.bursts, bursts);
    });
}

void run_cluster_stage(const PipelineConfig& config, const LanguageInputs& lang) {
    stage("cluster", lang.code, [&] {
        const StagePaths paths = stage_paths(config.output_dir, lang.code);
        const ViewMatrix matrix =
            load_matrix_cache(paths.views_data, paths.views_index, lang.code);
        const auto bursts = load_bursts(paths.bursts);
        // Reloading the hyperlinks against the filtered index reproduces the
        // filtered edge list without a separate edge cache.
        const EdgeList edges = load_edges(lang.edges, matrix.index);
        const TrendGraph graph = build_trend_graph(matrix, edges, bursts, config.graph);

        Partition partition;
        std::map<uint32_t, double> scores;
        if (!graph.nodes.empty()) {
            partition = louvain(graph, config.graph.resolution, config.seed,
                                config.graph.min_cluster_size);
            for (const auto& [cluster, pages] : partition.members()) {
                const auto pr = pagerank(graph, pages, config.graph);
                scores.insert(pr.begin(), pr.end());
            }
        }
        log_info(lang.code + ": " + std::to_string(graph.nodes.size()) + " nodes, " +
                 std::to_string(graph.edges.size()) + " edges, " +
                 std::to_string(partition.n_clusters) + " clusters (" +
                 std::to_string(partition.filtered.size()) + " below size threshold)");
        export_graph_json(paths.graph_json, graph, partition, scores, matrix.index);
        export_gexf(paths.graph_gexf, graph, partition, scores, matrix.index);
    });
}

namespace {

std::vector<ClusterDoc> stage_cluster_docs(const PipelineConfig& config,
                                           const LanguageInputs& lang,
                                           const ViewMatrix& matrix,
                                           const GraphArtifacts& artifacts) {
    LangConfig lc;
    lc.language = lang.code;
    lc.stopwords = load_stopwords(lang.stopwords);
    const StagePaths paths = stage_paths(config.output_dir, lang.code);
    const SummaryStore summaries = load_summaries(paths.summaries, matrix.index);
    return build_cluster_docs(artifacts.partition, summaries, artifacts.graph.degree, lc);
}

} // namespace

void run_keywords_stage(const PipelineConfig& config, const LanguageInputs& lang) {
    stage("keywords", lang.code, [&] {
        const StagePaths paths = stage_paths(config.output_dir, lang.code);
        const ViewMatrix matrix =
            load_matrix_cache(paths.views_data, paths.views_index, lang.code);
        const GraphArtifacts artifacts = load_graph_json(paths.graph_json);
        const auto docs = stage_cluster_docs(config, lang, matrix, artifacts);

        std::map<uint32_t, KeywordList> keywords;
        if (!docs.empty()) keywords = tfidf_keywords(docs, config.keywords);
        export_keywords_json(paths.keywords, keywords, lang.code);

        if (config.lda.enabled && !docs.empty()) {
            LdaConfig lda_config = config.lda.config;
            lda_config.seed = derive_seed(config.seed, "lda/" + lang.code);
            const LdaModel model = lda_fit(docs, lda_config);
            json doc;
            doc["schema_version"] = 1;
            doc["language"] = lang.code;
            doc["k"] = model.k;
            doc["topics"] = json::array();
            for (uint32_t topic = 0; topic < model.k; ++topic)
                doc["topics"].push_back(
                    json{{"topic", topic}, {"top_words", lda_top_words(model, topic, 10)}});
            doc["doc_topics"] = json::array();
            for (size_t d = 0; d < model.doc_ids.size(); ++d)
                doc["doc_topics"].push_back(
                    json{{"cluster_id", model.doc_ids[d]}, {"theta", model.theta[d]}});
            write_file_atomic(paths.lda, doc.dump(2) + "\n");
        }
    });
}

void run_label_stage(const PipelineConfig& config, const LanguageInputs& lang) {
    stage("label", lang.code, [&] {
        const StagePaths paths = stage_paths(config.output_dir, lang.code);
        const ViewMatrix matrix =
            load_matrix_cache(paths.views_data, paths.views_index, lang.code);
        const GraphArtifacts artifacts = load_graph_json(paths.graph_json);
        const SummaryStore summaries = load_summaries(paths.summaries, matrix.index);
        const LabelRules rules = load_label_rules(lang.rules);
        LangConfig lc;
        lc.language = lang.code;
        lc.stopwords = load_stopwords(lang.stopwords);

        static const std::string kNoSummary;
        auto summary_of = [&](uint32_t page) -> const std::string& {
            auto it = summaries.find(page);
            return it != summaries.end() ? it->second : kNoSummary;
        };

        std::map<uint32_t, std::string> page_labels;
        for (uint32_t p = 0; p < matrix.index.size(); ++p) {
            const auto label = rule_label(matrix.index.title_of(p), summary_of(p), rules);
            if (label) page_labels[p] = *label;
        }

        json out;
        out["schema_version"] = 1;
        out["language"] = lang.code;
        json page_obj = json::object();
        for (const auto& [page, label] : page_labels)
            page_obj[matrix.index.title_of(page)] = label;
        out["page_labels"] = std::move(page_obj);

        if (page_labels.empty()) {
            log_warn(lang.code + ": no page matched any labeling rule; skipping the "
                                 "classifier and cluster labels");
            out["cluster_labels"] = json::object();
            write_file_atomic(paths.labels, out.dump(2) + "\n");
            return;
        }

        // Stratified train/test split over the rule-labeled pages.
        std::map<std::string, std::vector<uint32_t>> by_label;
        for (const auto& [page, label] : page_labels) by_label[label].push_back(page);
        Rng rng(derive_seed(config.seed, "split/" + lang.code));
        std::vector<LabeledExample> train, test;
        for (auto& [label, pages] : by_label) {
            for (size_t i = pages.size(); i > 1; --i)
                std::swap(pages[i - 1], pages[rng.next_below(i)]);
            const size_t n_train = std::max<size_t>(
                1, static_cast<size_t>(std::floor(config.classifier.train_fraction *
                                                  static_cast<double>(pages.size()))));
            for (size_t i = 0; i < pages.size(); ++i)
                (i < n_train ? train : test)
                    .emplace_back(tokenize(summary_of(pages[i]), lc), label);
        }

        const ClassifierModel model = train_classifier(train, config.classifier.smoothing);
        if (test.empty()) {
            log_warn(lang.code + ": test split is empty; skipping metrics");
        } else {
            const Metrics metrics = evaluate(model, test);
            export_metrics_csv(paths.metrics, metrics);
            export_confusion_csv(paths.confusion, metrics);
        }

        const auto docs = stage_cluster_docs(config, lang, matrix, artifacts);
        const auto cluster_labels =
            label_clusters(artifacts.partition, page_labels, docs, model);
        json cluster_obj = json::object();
        for (const auto& [cluster, label] : cluster_labels)
            cluster_obj[std::to_string(cluster)] = label;
        out["cluster_labels"] = std::move(cluster_obj);
        write_file_atomic(paths.labels, out.dump(2) + "\n");
    });
}

void run_trends_stage(const PipelineConfig& config, const LanguageInputs& lang) {
    stage("trends", lang.code, [&] {
        const StagePaths paths = stage_paths(config.output_dir, lang.code);
        const ViewMatrix matrix =
            load_matrix_cache(paths.views_data, paths.views_index, lang.code);
        const GraphArtifacts artifacts = load_graph_json(paths.graph_json);
        const auto keywords = load_keywords_json(paths.keywords);

        json labels_doc;
        try {
            labels_doc = json::parse(read_file(paths.labels));
        } catch (const json::exception& e) {
            throw ParseError(paths.labels.string() + ": " + e.what());
        }
        std::map<uint32_t, std::string> cluster_labels;
        for (const auto& [key, value] : labels_doc.at("cluster_labels").items())
            cluster_labels[static_cast<uint32_t>(std::stoul(key))] =
                value.get<std::string>();

        const auto trends = assemble_trends(matrix, artifacts.partition,
                                            artifacts.pagerank_scores, keywords,
                                            cluster_labels, config.run_id());
        const std::string generated_at = "run-" + config.run_id();
        export_trends_json(paths.trends, trends, matrix.index, generated_at);
        export_trends_csv(paths.trends_csv, trends, matrix.start_hour);
        TopicDistribution dist;
        if (!trends.empty()) dist = topic_distribution(trends);
        export_topics_json(paths.topics, dist, lang.code);
        log_info(lang.code + ": " + std::to_string(trends.size()) + " trends");
    });
}

void run_compare_stage(const PipelineConfig& config) {
    stage("compare", "all", [&] {
        std::vector<AlignInput> inputs;
        for (const LanguageInputs& lang : config.languages) {
            const StagePaths paths = stage_paths(config.output_dir, lang.code);
            const auto loaded = load_align_inputs(paths.trends);
            inputs.insert(inputs.end(), loaded.begin(), loaded.end());
        }
        const TrendAlignment alignment = align_trends(inputs, config.delta_hours);
        export_alignment_json(config.output_dir / "alignment.json", alignment);
        log_info("alignment: " + std::to_string(alignment.groups.size()) + " groups over " +
                 std::to_string(inputs.size()) + " trends");
    });
}

void write_manifest(const PipelineConfig& config) {
    stage("manifest", "all", [&] {
        std::vector<fs::path> files;
        for (const auto& entry : fs::recursive_directory_iterator(config.output_dir)) {
            if (!entry.is_regular_file()) continue;
            if (entry.path().filename() == "manifest.json") continue;
            files.push_back(fs::relative(entry.path(), config.output_dir));
        }
        std::sort(files.begin(), files.end(),
                  [](const fs::path& a, const fs::path& b) {
                      return a.generic_string() < b.generic_string();
                  });
        json outputs = json::array();
        for (const fs::path& rel : files) {
            const std::string content = read_file(config.output_dir / rel);
            outputs.push_back(json{{"path", rel.generic_string()},
                                   {"sha256", sha256_hex(content)},
                                   {"bytes", content.size()}});
        }
        json doc;
        doc["schema_version"] = 1;
        doc["run_id"] = config.run_id();
        doc["generated_at"] = "run-" + config.run_id();
        doc["outputs"] = std::move(outputs);
        write_file_atomic(config.output_dir / "manifest.json", doc.dump(2) + "\n");
    });
}

void run_pipeline(const PipelineConfig& config) {
    fs::create_directories(config.output_dir);
    for (const LanguageInputs& lang : config.languages) {
        run_ingest_stage(config, lang);
        run_detect_stage(config, lang);
        run_cluster_stage(config, lang);
        run_keywords_stage(config, lang);
        run_label_stage(config, lang);
        run_trends_stage(config, lang);
    }
    run_compare_stage(config);
    write_manifest(config);
}

} // namespace wikitrends
