// Release gates. Each criterion prints one PASS/FAIL line with its runtime;
// the process exits nonzero if any gate fails. Gates 9 and 10 drive the
// installed binary (WIKITRENDS_CLI_PATH) over the bundled demo dataset.
#include "wikitrends/ari.hpp"
#include "wikitrends/burst.hpp"
#include "wikitrends/errors.hpp"
#include "wikitrends/graph.hpp"
#include "wikitrends/ingest.hpp"
#include "wikitrends/io_util.hpp"
#include "wikitrends/label.hpp"
#include "wikitrends/report.hpp"
#include "wikitrends/rng.hpp"
#include "wikitrends/synth_fixture.hpp"
#include "wikitrends/text.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

using namespace wikitrends;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::string tmpl = (fs::temp_directory_path() / "wikitrends-gate-XXXXXX").string();
        if (mkdtemp(tmpl.data()) == nullptr) throw IoError("mkdtemp failed");
        path = tmpl;
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

int run_cli(const std::string& args) {
    const std::string command =
        std::string(WIKITRENDS_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

size_t count_substr(const std::string& text, const std::string& needle) {
    size_t count = 0;
    for (size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

// --- random-structure helpers ------------------------------------------

TrendGraph random_graph(Rng& rng, uint32_t n, double edge_prob) {
    TrendGraph graph;
    for (uint32_t i = 0; i < n; ++i) {
        graph.nodes.push_back(i);
        graph.degree[i] = 0;
    }
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = i + 1; j < n; ++j) {
            if (!rng.next_bool(edge_prob)) continue;
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

Partition partition_from(const std::vector<uint32_t>& assignment) {
    Partition partition;
    for (uint32_t node = 0; node < assignment.size(); ++node) {
        partition.cluster_of[node] = assignment[node];
        partition.n_clusters = std::max(partition.n_clusters, assignment[node] + 1);
    }
    return partition;
}

// Best modularity over every partition, enumerated as restricted growth
// strings (node i joins one of the groups seen so far or opens a new one).
double best_partition_q(const TrendGraph& graph, uint32_t n) {
    std::vector<uint32_t> assignment(n, 0);
    double best = -2.0;
    std::function<void(uint32_t, uint32_t)> enumerate = [&](uint32_t i, uint32_t groups) {
        if (i == n) {
            best = std::max(best, modularity(graph, partition_from(assignment)));
            return;
        }
        for (uint32_t c = 0; c <= groups; ++c) {
            assignment[i] = c;
            enumerate(i + 1, std::max(groups, c + 1));
        }
    };
    enumerate(0, 0);
    return best;
}

// Dense power iteration: uniform teleport, dangling mass spread evenly,
// iterated far past the library's stopping threshold.
std::vector<double> dense_pagerank(const std::vector<std::vector<uint32_t>>& arcs,
                                   double damping) {
    const size_t n = arcs.size();
    std::vector<double> v(n, 1.0 / double(n)), next(n);
    for (int round = 0; round < 100000; ++round) {
        double dangling = 0;
        for (size_t i = 0; i < n; ++i)
            if (arcs[i].empty()) dangling += v[i];
        std::fill(next.begin(), next.end(),
                  (1.0 - damping) / double(n) + damping * dangling / double(n));
        for (size_t i = 0; i < n; ++i)
            for (uint32_t j : arcs[i]) next[j] += damping * v[i] / double(arcs[i].size());
        double diff = 0;
        for (size_t i = 0; i < n; ++i) diff += std::abs(next[i] - v[i]);
        v.swap(next);
        if (diff < 1e-14) break;
    }
    return v;
}

// Recomputes every window from scratch with the same integer-sum
// arithmetic the detector uses, so agreement must be bitwise.
BurstProfile brute_force_bursts(const std::vector<uint32_t>& series,
                                const BurstConfig& config) {
    BurstProfile profile;
    const uint32_t w = config.window_hours;
    double peak_z = 0;
    for (size_t t = w; t < series.size(); ++t) {
        uint64_t sum = 0;
        unsigned __int128 sumsq = 0;
        for (size_t i = t - w; i < t; ++i) {
            sum += series[i];
            sumsq += static_cast<uint64_t>(series[i]) * series[i];
        }
        const double mean = static_cast<double>(sum) / static_cast<double>(w);
        double var = static_cast<double>(sumsq) / static_cast<double>(w) - mean * mean;
        if (var < 0) var = 0;
        const uint32_t x = series[t];
        if (x < config.min_views) continue;
        const double z =
            (static_cast<double>(x) - mean) / (std::sqrt(var) + config.epsilon);
        if (z < config.z_threshold) continue;
        if (profile.burst_hours.empty() || z > peak_z) {
            peak_z = z;
            profile.peak_hour = static_cast<uint32_t>(t);
        }
        profile.burst_hours.push_back(static_cast<uint32_t>(t));
        profile.z_scores.push_back(z);
    }
    return profile;
}

// --- the gates ----------------------------------------------------------

std::string gate_metric_arithmetic() {
    // A published nine-label evaluation column with its per-label supports;
    // the aggregates must land on the reported two-decimal values.
    const std::vector<double> precision = {0.93, 0.75, 0.86, 0.84, 0.82,
                                           0.75, 0.79, 0.84, 0.79};
    const std::vector<double> recall = {0.95, 0.69, 0.89, 0.85, 0.81,
                                        0.56, 0.60, 0.85, 0.70};
    const std::vector<uint64_t> support = {1359, 112, 646, 288, 520, 90, 70, 751, 47};

    const AggregateMetrics p = aggregate_metric(precision, support);
    const AggregateMetrics r = aggregate_metric(recall, support);
    if (p.total_support != 3883)
        return "total support " + std::to_string(p.total_support) + ", expected 3883";
    if (std::abs(p.macro - 0.82) > 0.005)
        return "macro precision " + num(p.macro) + ", expected 0.82 +- 0.005";
    if (std::abs(r.macro - 0.77) > 0.005)
        return "macro recall " + num(r.macro) + ", expected 0.77 +- 0.005";
    if (std::abs(p.weighted - 0.87) > 0.005)
        return "weighted precision " + num(p.weighted) + ", expected 0.87 +- 0.005";
    return "";
}

std::string gate_planted_recovery() {
    SyntheticSpec spec;
    spec.n_clusters = 3;
    spec.pages_per_cluster = 20;
    spec.n_noise_pages = 500;
    spec.t_hours = 1344;
    spec.seed = 42;
    const SyntheticData data = generate_synthetic(spec);

    const auto bursts = trending_pages(data.matrix, BurstConfig{});
    const GraphConfig graph_config;
    const TrendGraph graph = build_trend_graph(data.matrix, data.edges, bursts, graph_config);
    const Partition partition = louvain(graph);

    const double ari = adjusted_rand_index(data.planted, partition.cluster_of);
    if (ari < 0.9) return "ARI " + num(ari) + " below 0.9";

    std::map<uint32_t, double> scores;
    for (const auto& [cluster, pages] : partition.members()) {
        if (partition.is_filtered(cluster)) continue;
        const auto pr = pagerank(graph, pages, graph_config);
        scores.insert(pr.begin(), pr.end());
    }
    const auto trends =
        assemble_trends(data.matrix, partition, scores, {}, {}, "gate");

    // The trend holding the bulk of each planted group must peak inside
    // that group's burst window.
    for (uint32_t c = 0; c < spec.n_clusters; ++c) {
        const Trend* majority = nullptr;
        size_t majority_count = 0;
        for (const Trend& trend : trends) {
            size_t count = 0;
            for (uint32_t page : trend.members) {
                const auto it = data.planted.find(page);
                if (it != data.planted.end() && it->second == c) ++count;
            }
            if (count > majority_count) {
                majority = &trend;
                majority_count = count;
            }
        }
        if (majority == nullptr)
            return "planted group " + std::to_string(c) + " surfaced in no trend";
        const auto [wstart, wend] = data.burst_windows[c];
        if (majority->peak_hour < wstart || majority->peak_hour >= wend)
            return "group " + std::to_string(c) + " peaks at hour " +
                   std::to_string(majority->peak_hour) + ", window [" +
                   std::to_string(wstart) + ", " + std::to_string(wend) + ")";
    }
    return "";
}

std::string gate_community_battery() {
    int near_optimal = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Rng rng(derive_seed(9101, "community/" + std::to_string(trial)));
        const uint32_t n = static_cast<uint32_t>(rng.next_in(2, 8));
        const TrendGraph graph = random_graph(rng, n, 0.5);

        const double one_q = modularity(graph, partition_from(std::vector<uint32_t>(n, 0)));
        if (one_q != 0.0)
            return "trial " + std::to_string(trial) +
                   ": single-community modularity " + num(one_q) + ", expected exactly 0";

        const double best = best_partition_q(graph, n);
        const Partition found = louvain(graph, 1.0, 0, 1);
        const double q = modularity(graph, found);
        if (q > best + 1e-9)
            return "trial " + std::to_string(trial) + ": modularity " + num(q) +
                   " above the exhaustive optimum " + num(best);
        if (q >= best - 0.02) ++near_optimal;
    }
    if (near_optimal < 190)
        return "within 0.02 of the optimum on only " + std::to_string(near_optimal) +
               "/200 graphs, need 190";
    return "";
}

std::string gate_centrality_battery() {
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(derive_seed(4242, "centrality/" + std::to_string(trial)));
        const uint32_t n = static_cast<uint32_t>(rng.next_in(2, 50));

        TrendGraph graph;
        std::vector<std::vector<uint32_t>> arcs(n);
        for (uint32_t i = 0; i < n; ++i) graph.nodes.push_back(i);
        for (uint32_t i = 1; i < n; ++i) // node 0 is kept dangling
            for (uint32_t j = 0; j < n; ++j)
                if (i != j && rng.next_bool(0.15)) arcs[i].push_back(j);
        for (uint32_t i = 0; i < n; ++i)
            if (!arcs[i].empty()) graph.out_arcs[i] = arcs[i];

        const GraphConfig config;
        uint32_t iterations = 0;
        const auto scores = pagerank(graph, graph.nodes, config, &iterations);
        if (iterations > config.max_iter)
            return "trial " + std::to_string(trial) + ": " +
                   std::to_string(iterations) + " iterations";

        const auto oracle = dense_pagerank(arcs, config.damping);
        double sum = 0, linf = 0;
        for (uint32_t i = 0; i < n; ++i) {
            const double s = scores.at(i);
            if (s < 0) return "trial " + std::to_string(trial) + ": negative score";
            sum += s;
            linf = std::max(linf, std::abs(s - oracle[i]));
        }
        if (linf > 1e-8)
            return "trial " + std::to_string(trial) + ": L-inf gap " + num(linf);
        if (std::abs(sum - 1.0) > 1e-9)
            return "trial " + std::to_string(trial) + ": scores sum to " + num(sum);
    }
    return "";
}

std::string gate_burst_battery() {
    size_t non_vacuous = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Rng rng(derive_seed(31337, "burst/" + std::to_string(trial)));
        BurstConfig config;
        config.window_hours = static_cast<uint32_t>(rng.next_in(2, 170));
        config.min_views = static_cast<uint32_t>(rng.next_below(200));
        const size_t t_hours =
            config.window_hours + rng.next_below(1000 - config.window_hours + 1);

        std::vector<uint32_t> series(t_hours);
        for (uint32_t& x : series)
            x = rng.next_bool(0.02)
                    ? 1000 + static_cast<uint32_t>(rng.next_below(100000))
                    : static_cast<uint32_t>(rng.next_below(150));

        const BurstProfile got = detect_bursts(series, 7, config);
        const BurstProfile want = brute_force_bursts(series, config);
        if (got.burst_hours != want.burst_hours)
            return "trial " + std::to_string(trial) + ": burst hours diverge";
        if (got.z_scores != want.z_scores) // bitwise
            return "trial " + std::to_string(trial) + ": z-scores diverge";
        if (!got.burst_hours.empty()) {
            if (got.peak_hour != want.peak_hour)
                return "trial " + std::to_string(trial) + ": peak hours diverge";
            ++non_vacuous;
        }
    }
    if (non_vacuous <= 100)
        return "only " + std::to_string(non_vacuous) + "/1000 series burst at all";
    return "";
}

std::string gate_topic_model() {
    // Two groups with disjoint 12-token vocabularies, three documents each.
    Rng rng(derive_seed(606, "lda-gate"));
    std::vector<ClusterDoc> docs;
    for (uint32_t d = 0; d < 6; ++d) {
        ClusterDoc doc;
        doc.cluster_id = d;
        const std::string prefix = d < 3 ? "aaa" : "bbb";
        for (int word = 0; word < 12; ++word)
            doc.term_counts[prefix + std::to_string(word)] =
                static_cast<uint32_t>(rng.next_in(5, 20));
        docs.push_back(std::move(doc));
    }
    uint64_t instances = 0;
    for (const ClusterDoc& doc : docs)
        for (const auto& [token, count] : doc.term_counts) instances += count;

    LdaConfig config;
    config.k = 2;
    config.alpha = 0.1;
    config.iterations = 500;
    config.seed = 7;

    uint32_t sweeps = 0;
    std::string conservation;
    const LdaModel model = lda_fit(docs, config, [&](const LdaSweepStats& stats) {
        if (stats.sweep != sweeps || stats.topic_word_total != instances ||
            stats.doc_topic_total != instances || stats.token_instances != instances)
            if (conservation.empty())
                conservation = "count conservation broke on sweep " +
                               std::to_string(stats.sweep);
        ++sweeps;
    });
    if (!conservation.empty()) return conservation;
    if (sweeps != 500) return std::to_string(sweeps) + " sweeps observed, expected 500";

    for (const auto& row : model.theta) {
        double sum = 0;
        for (double v : row) sum += v;
        if (std::abs(sum - 1.0) > 1e-9) return "theta row sums to " + num(sum);
    }
    for (const auto& row : model.phi) {
        double sum = 0;
        for (double v : row) sum += v;
        if (std::abs(sum - 1.0) > 1e-9) return "phi row sums to " + num(sum);
    }

    std::vector<std::string> prefixes;
    for (uint32_t topic = 0; topic < 2; ++topic) {
        const auto top = lda_top_words(model, topic, 10);
        if (top.size() != 10)
            return "topic " + std::to_string(topic) + " has " +
                   std::to_string(top.size()) + " top words";
        const std::string prefix = top.front().substr(0, 3);
        for (const std::string& word : top)
            if (word.substr(0, 3) != prefix)
                return "topic " + std::to_string(topic) + " mixes vocabularies";
        prefixes.push_back(prefix);
    }
    if (prefixes[0] == prefixes[1]) return "both topics landed on the same vocabulary";
    return "";
}

std::string gate_keyword_properties() {
    // A token present in every document earns idf 0 and must never rank.
    {
        std::vector<ClusterDoc> docs;
        for (uint32_t d = 0; d < 4; ++d) {
            ClusterDoc doc;
            doc.cluster_id = d;
            doc.term_counts["everywhere"] = 50 + d;
            doc.term_counts["only" + std::to_string(d)] = 3;
            docs.push_back(std::move(doc));
        }
        const auto keywords = tfidf_keywords(docs, KeywordConfig{});
        for (const auto& [cluster, list] : keywords)
            for (const auto& [token, score] : list)
                if (token == "everywhere")
                    return "corpus-wide token ranked with score " + num(score);
    }

    // Scaling every count in a document by one factor must not reorder its
    // keyword list.
    const uint32_t doc_counts[] = {3, 5, 7, 11, 13};
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(derive_seed(777, "keywords/" + std::to_string(trial)));
        const uint32_t n_docs = doc_counts[trial % 5];
        const uint32_t scale = static_cast<uint32_t>(rng.next_in(2, 5));

        std::vector<ClusterDoc> base, scaled;
        for (uint32_t d = 0; d < n_docs; ++d) {
            ClusterDoc doc;
            doc.cluster_id = d;
            for (int word = 0; word < 30; ++word)
                if (rng.next_bool(0.4))
                    doc.term_counts["w" + std::to_string(word)] =
                        static_cast<uint32_t>(rng.next_in(1, 9));
            ClusterDoc big = doc;
            for (auto& [token, count] : big.term_counts) count *= scale;
            base.push_back(std::move(doc));
            scaled.push_back(std::move(big));
        }
        const auto lists = tfidf_keywords(base, KeywordConfig{});
        const auto scaled_lists = tfidf_keywords(scaled, KeywordConfig{});
        if (lists.size() != n_docs || scaled_lists.size() != n_docs)
            return "trial " + std::to_string(trial) + ": a document lost its entry";
        for (uint32_t d = 0; d < n_docs; ++d) {
            std::vector<std::string> order, scaled_order;
            for (const auto& [token, score] : lists.at(d)) order.push_back(token);
            for (const auto& [token, score] : scaled_lists.at(d))
                scaled_order.push_back(token);
            if (order != scaled_order)
                return "trial " + std::to_string(trial) + ": scaling reordered doc " +
                       std::to_string(d);
        }
    }
    return "";
}

std::string gate_rule_labeling() {
    TempDir dir;
    const fs::path rules_path = dir.path / "rules.json";
    json rules;
    rules["title_patterns"] = {{"album", "music"}};
    rules["keyword_sets"] = json::array(
        {json{{"label", "politics"},
              {"keywords", json::array({"political", "party", "republican"})}}});
    write_file_atomic(rules_path, rules.dump(2) + "\n");
    const LabelRules loaded = load_label_rules(rules_path);

    const auto titled = rule_label("Nevermind_(album)", "", loaded);
    if (!titled || *titled != "music") return "\"(album)\" title did not map to music";

    const auto matched = rule_label(
        "Some_Page", "A political party led by republican reformers.", loaded);
    if (!matched || *matched != "politics")
        return "full keyword conjunction did not map to politics";

    if (rule_label("Some_Page", "The political party met on Tuesday.", loaded))
        return "partial keyword match produced a label";
    if (rule_label("Plain_Title", "Nothing relevant here.", loaded))
        return "unrelated input produced a label";

    // Title evidence outranks summary keywords.
    const auto both = rule_label("Thriller_(album)",
                                 "A political party of republican critics panned it.",
                                 loaded);
    if (!both || *both != "music") return "title pattern lost to summary keywords";
    return "";
}

std::string gate_determinism(const fs::path& work, fs::path& run_out) {
    const fs::path config = write_demo_fixture(work / "fixture", 42);
    const fs::path out1 = work / "run1";
    const fs::path out2 = work / "run2";
    const std::string base = "run --config \"" + config.string() + "\" --output ";
    if (run_cli(base + "\"" + out1.string() + "\"") != 0)
        return "first run failed";
    if (run_cli(base + "\"" + out2.string() + "\"") != 0)
        return "second run failed";

    const std::string m1 = read_file(out1 / "manifest.json");
    const std::string m2 = read_file(out2 / "manifest.json");
    if (m1 != m2) return "manifests differ between identical runs";
    run_out = out1; // gate 10 inspects this tree
    return "";
}

std::string gate_export_integrity(const fs::path& run_out) {
    if (run_out.empty()) return "no pipeline output (gate 9 failed)";
    TempDir scratch;

    std::set<std::pair<std::string, std::string>> trend_refs;
    for (const char* code : {"en", "fr", "ru"}) {
        const fs::path dir = run_out / code;
        const ViewMatrix matrix =
            load_matrix_cache(dir / "views.bin", dir / "views.idx", code);

        // Lossless round trip: reload and re-export byte-identically.
        const TrendsFile loaded = load_trends_json(dir / "trends.json", matrix.index);
        const fs::path again = scratch.path / (std::string(code) + "-trends.json");
        export_trends_json(again, loaded.trends, matrix.index, loaded.generated_at);
        if (read_file(dir / "trends.json") != read_file(again))
            return std::string(code) + ": trends re-export is not byte-identical";

        // Structural checks of the graph export against its JSON twin.
        const json graph_doc = json::parse(read_file(dir / "graph.json"));
        const std::string gexf = read_file(dir / "graph.gexf");
        if (count_substr(gexf, "<node ") != graph_doc.at("nodes").size())
            return std::string(code) + ": node count differs between gexf and json";
        if (count_substr(gexf, "<edge ") != graph_doc.at("edges").size())
            return std::string(code) + ": edge count differs between gexf and json";
        if (gexf.find("xmlns=\"http://www.gexf.net/1.2draft\"") == std::string::npos ||
            gexf.find("version=\"1.2\"") == std::string::npos)
            return std::string(code) + ": gexf header is not 1.2";
        if (count_substr(gexf, "<attribute id=") != 4)
            return std::string(code) + ": gexf must declare 4 node attributes";
        if (gexf.rfind("</gexf>\n") != gexf.size() - 8)
            return std::string(code) + ": gexf does not end with its closing tag";

        for (const AlignInput& input : load_align_inputs(dir / "trends.json"))
            trend_refs.emplace(input.language, input.trend_id);
    }

    // The alignment groups must partition the trend set exactly.
    const TrendAlignment alignment = load_alignment_json(run_out / "alignment.json");
    std::set<std::pair<std::string, std::string>> grouped;
    for (const auto& group : alignment.groups) {
        if (group.empty()) return "alignment holds an empty group";
        for (const AlignRef& ref : group)
            if (!grouped.emplace(ref.language, ref.trend_id).second)
                return "trend " + ref.trend_id + " appears in two groups";
    }
    if (grouped != trend_refs) return "alignment groups do not cover the trend set";
    return "";
}

struct Criterion {
    int id;
    const char* name;
    double cap_seconds; // 0 = no individual cap
    std::function<std::string()> body;
};

} // namespace

int main() {
    TempDir work;
    fs::path run_out;

    const std::vector<Criterion> criteria = {
        {1, "aggregate metric arithmetic", 1.0, gate_metric_arithmetic},
        {2, "planted partition recovery", 60.0, gate_planted_recovery},
        {3, "community detection battery", 30.0, gate_community_battery},
        {4, "centrality oracle battery", 0, gate_centrality_battery},
        {5, "burst detector oracle battery", 0, gate_burst_battery},
        {6, "topic model invariants", 0, gate_topic_model},
        {7, "keyword scoring properties", 0, gate_keyword_properties},
        {8, "rule labeling behaviors", 0, gate_rule_labeling},
        {9, "end-to-end determinism", 0,
         [&] { return gate_determinism(work.path, run_out); }},
        {10, "export integrity", 0, [&] { return gate_export_integrity(run_out); }},
    };

    bool all_pass = true;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            failure = criterion.body();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (failure.empty() && criterion.cap_seconds > 0 &&
            seconds > criterion.cap_seconds)
            failure = "took " + num(seconds) + "s, cap " + num(criterion.cap_seconds) + "s";
        std::printf("criterion %d: %s %s [%.2fs]\n", criterion.id,
                    failure.empty() ? "PASS" : "FAIL", criterion.name, seconds);
        if (!failure.empty()) {
            std::printf("    %s\n", failure.c_str());
            all_pass = false;
        }
    }
    return all_pass ? 0 : 1;
}
