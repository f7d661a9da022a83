#include "wikitrends/label.hpp"

#include "wikitrends/errors.hpp"
#include "wikitrends/io_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace wikitrends {

using nlohmann::json;

const std::vector<std::string>& label_set() {
    static const std::vector<std::string> labels = {
        "football", "sports",  "politics", "movies",    "music",
        "conflicts", "religion", "science",  "videogames"};
    return labels;
}

std::optional<uint32_t> label_index(const std::string& label) {
    const auto& labels = label_set();
    for (uint32_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    return std::nullopt;
}

LabelRules load_label_rules(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    LabelRules rules;
    try {
        if (doc.contains("title_patterns")) {
            for (const auto& [pattern, label] : doc.at("title_patterns").items()) {
                const std::string target = label.get<std::string>();
                if (!label_index(target))
                    throw ConfigError(path.string() + ": unknown label " + target);
                rules.title_patterns[lower_utf8(pattern)] = target;
            }
        }
        if (doc.contains("keyword_sets")) {
            for (const json& entry : doc.at("keyword_sets")) {
                LabelRules::KeywordSet set;
                set.label = entry.at("label").get<std::string>();
                if (!label_index(set.label))
                    throw ConfigError(path.string() + ": unknown label " + set.label);
                for (const json& kw : entry.at("keywords"))
                    set.keywords.push_back(lower_utf8(kw.get<std::string>()));
                if (set.keywords.empty())
                    throw ConfigError(path.string() + ": empty keyword set for " + set.label);
                rules.keyword_sets.push_back(std::move(set));
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return rules;
}

std::optional<std::string> rule_label(const std::string& title, const std::string& summary,
                                      const LabelRules& rules) {
    if (!title.empty() && title.back() == ')') {
        const size_t open = title.rfind('(');
        if (open != std::string::npos && open + 1 < title.size() - 1) {
            const std::string inside =
                lower_utf8(std::string_view(title).substr(open + 1, title.size() - open - 2));
            auto it = rules.title_patterns.find(inside);
            if (it != rules.title_patterns.end()) return it->second;
        }
    }
    if (!rules.keyword_sets.empty()) {
        const std::string low = lower_utf8(summary);
        for (const auto& set : rules.keyword_sets) {
            bool all = true;
            for (const std::string& kw : set.keywords) {
                if (low.find(kw) == std::string::npos) {
                    all = false;
                    break;
                }
            }
            if (all) return set.label;
        }
    }
    return std::nullopt;
}

ClassifierModel train_classifier(const std::vector<LabeledExample>& examples,
                                 double smoothing) {
    if (examples.empty()) throw EmptyTrainingSet("no training examples");

    std::set<std::string> present;
    std::set<std::string> vocab_set;
    for (const auto& [tokens, label] : examples) {
        if (!label_index(label)) throw ConfigError("unknown label " + label);
        present.insert(label);
        vocab_set.insert(tokens.begin(), tokens.end());
    }
    if (present.size() == 1)
        log_warn("training set has a single label (" + *present.begin() +
                 "); the classifier degenerates to a constant predictor");

    ClassifierModel model;
    model.smoothing = smoothing;
    model.vocab.assign(vocab_set.begin(), vocab_set.end());
    for (const std::string& label : label_set())
        if (present.count(label)) model.labels.push_back(label);

    std::map<std::string, uint32_t> vocab_ids;
    for (uint32_t v = 0; v < model.vocab.size(); ++v) vocab_ids.emplace(model.vocab[v], v);
    std::map<std::string, uint32_t> label_pos;
    for (uint32_t l = 0; l < model.labels.size(); ++l) label_pos.emplace(model.labels[l], l);

    const size_t n_labels = model.labels.size();
    const size_t n_vocab = model.vocab.size();
    std::vector<uint64_t> doc_count(n_labels, 0), token_total(n_labels, 0);
    std::vector<std::vector<uint64_t>> token_count(n_labels, std::vector<uint64_t>(n_vocab, 0));
    for (const auto& [tokens, label] : examples) {
        const uint32_t l = label_pos.at(label);
        ++doc_count[l];
        for (const std::string& token : tokens) {
            ++token_count[l][vocab_ids.at(token)];
            ++token_total[l];
        }
    }

    model.log_prior.resize(n_labels);
    model.log_likelihood.assign(n_labels, std::vector<double>(n_vocab));
    for (size_t l = 0; l < n_labels; ++l) {
        model.log_prior[l] = std::log(static_cast<double>(doc_count[l]) /
                                      static_cast<double>(examples.size()));
        const double denom =
            static_cast<double>(token_total[l]) + smoothing * static_cast<double>(n_vocab);
        for (size_t v = 0; v < n_vocab; ++v)
            model.log_likelihood[l][v] =
                std::log((static_cast<double>(token_count[l][v]) + smoothing) / denom);
    }
    return model;
}

namespace {

Prediction predict_scores(const ClassifierModel& model, std::vector<double> scores) {
    Prediction out;
    size_t best = 0;
    for (size_t l = 0; l < model.labels.size(); ++l) {
        out.log_scores[model.labels[l]] = scores[l];
        if (scores[l] > scores[best]) best = l; // strict: earliest label wins ties
    }
    out.label = model.labels[best];
    return out;
}

} // namespace

Prediction predict(const ClassifierModel& model, const std::vector<std::string>& tokens) {
    std::vector<double> scores(model.log_prior);
    for (const std::string& token : tokens) {
        auto it = std::lower_bound(model.vocab.begin(), model.vocab.end(), token);
        if (it == model.vocab.end() || *it != token) continue;
        const size_t v = static_cast<size_t>(it - model.vocab.begin());
        for (size_t l = 0; l < scores.size(); ++l) scores[l] += model.log_likelihood[l][v];
    }
    return predict_scores(model, std::move(scores));
}

Prediction predict_weighted(const ClassifierModel& model,
                            const std::map<std::string, uint32_t>& term_counts) {
    std::vector<double> scores(model.log_prior);
    for (const auto& [token, count] : term_counts) {
        auto it = std::lower_bound(model.vocab.begin(), model.vocab.end(), token);
        if (it == model.vocab.end() || *it != token) continue;
        const size_t v = static_cast<size_t>(it - model.vocab.begin());
        for (size_t l = 0; l < scores.size(); ++l)
            scores[l] += static_cast<double>(count) * model.log_likelihood[l][v];
    }
    return predict_scores(model, std::move(scores));
}

Metrics metrics_from_confusion(const std::vector<std::vector<uint64_t>>& confusion) {
    const size_t n = label_set().size();
    if (confusion.size() != n) throw InconsistentInputs("confusion matrix must be 9x9");
    for (const auto& row : confusion)
        if (row.size() != n) throw InconsistentInputs("confusion matrix must be 9x9");

    Metrics m;
    m.confusion = confusion;
    m.precision.resize(n);
    m.recall.resize(n);
    m.f1.resize(n);
    m.support.resize(n);

    uint64_t total = 0, diagonal = 0;
    for (size_t t = 0; t < n; ++t)
        for (size_t p = 0; p < n; ++p) total += confusion[t][p];
    if (total == 0) throw EmptyTestSet("confusion matrix is all zero");

    for (size_t l = 0; l < n; ++l) {
        uint64_t row = 0, col = 0;
        for (size_t j = 0; j < n; ++j) {
            row += confusion[l][j];
            col += confusion[j][l];
        }
        const uint64_t hit = confusion[l][l];
        diagonal += hit;
        m.support[l] = row;
        m.precision[l] = col ? static_cast<double>(hit) / static_cast<double>(col) : 0.0;
        m.recall[l] = row ? static_cast<double>(hit) / static_cast<double>(row) : 0.0;
        const double pr = m.precision[l] + m.recall[l];
        m.f1[l] = pr > 0 ? 2 * m.precision[l] * m.recall[l] / pr : 0.0;
    }
    m.accuracy = static_cast<double>(diagonal) / static_cast<double>(total);
    m.total_support = total;

    const auto agg_p = aggregate_metric(m.precision, m.support);
    const auto agg_r = aggregate_metric(m.recall, m.support);
    const auto agg_f = aggregate_metric(m.f1, m.support);
    m.macro_precision = agg_p.macro;
    m.macro_recall = agg_r.macro;
    m.macro_f1 = agg_f.macro;
    m.weighted_precision = agg_p.weighted;
    m.weighted_recall = agg_r.weighted;
    m.weighted_f1 = agg_f.weighted;
    return m;
}

AggregateMetrics aggregate_metric(const std::vector<double>& values,
                                  const std::vector<uint64_t>& supports) {
    if (values.size() != supports.size())
        throw InconsistentInputs("metric and support columns differ in length");
    AggregateMetrics out;
    double macro_sum = 0, weighted_sum = 0;
    uint64_t supported = 0;
    for (size_t i = 0; i < values.size(); ++i) {
        out.total_support += supports[i];
        if (supports[i] == 0) continue;
        ++supported;
        macro_sum += values[i];
        weighted_sum += values[i] * static_cast<double>(supports[i]);
    }
    if (supported > 0) out.macro = macro_sum / static_cast<double>(supported);
    if (out.total_support > 0)
        out.weighted = weighted_sum / static_cast<double>(out.total_support);
    return out;
}

Metrics evaluate(const ClassifierModel& model, const std::vector<LabeledExample>& test) {
    if (test.empty()) throw EmptyTestSet("no test examples");
    const size_t n = label_set().size();
    std::vector<std::vector<uint64_t>> confusion(n, std::vector<uint64_t>(n, 0));
    for (const auto& [tokens, truth] : test) {
        const auto t = label_index(truth);
        if (!t) throw ConfigError("unknown label " + truth);
        const auto p = label_index(predict(model, tokens).label);
        ++confusion[*t][*p];
    }
    return metrics_from_confusion(confusion);
}

std::map<uint32_t, std::string> label_clusters(
    const Partition& partition, const std::map<uint32_t, std::string>& page_labels,
    const std::vector<ClusterDoc>& docs, const ClassifierModel& model) {
    std::map<uint32_t, const ClusterDoc*> doc_of;
    for (const ClusterDoc& doc : docs) doc_of[doc.cluster_id] = &doc;
    static const std::map<std::string, uint32_t> kEmptyCounts;

    std::map<uint32_t, std::string> out;
    for (const auto& [cluster, pages] : partition.members()) {
        if (partition.is_filtered(cluster)) continue;

        std::map<std::string, uint32_t> votes;
        for (uint32_t page : pages) {
            auto it = page_labels.find(page);
            if (it != page_labels.end()) ++votes[it->second];
        }

        auto doc_it = doc_of.find(cluster);
        const auto& counts = doc_it == doc_of.end() ? kEmptyCounts : doc_it->second->term_counts;

        if (votes.empty()) {
            if (counts.empty())
                throw UnlabelableCluster("cluster " + std::to_string(cluster) +
                                         " has no labeled pages and no text");
            out[cluster] = predict_weighted(model, counts).label;
            continue;
        }

        uint32_t top = 0;
        for (const auto& [label, n] : votes) top = std::max(top, n);
        std::vector<std::string> tied;
        for (const std::string& label : label_set()) {
            auto it = votes.find(label);
            if (it != votes.end() && it->second == top) tied.push_back(label);
        }
        if (tied.size() == 1) {
            out[cluster] = tied[0];
            continue;
        }
        const Prediction pred = predict_weighted(model, counts);
        std::string best = tied[0];
        double best_score = 0;
        bool have = false;
        for (const std::string& label : tied) {
            auto it = pred.log_scores.find(label);
            if (it == pred.log_scores.end()) continue;
            if (!have || it->second > best_score) {
                have = true;
                best_score = it->second;
                best = label;
            }
        }
        out[cluster] = best;
    }
    return out;
}

void export_metrics_csv(const std::filesystem::path& path, const Metrics& metrics) {
    std::string out = "label,precision,recall,f1,support\n";
    const auto& labels = label_set();
    for (size_t l = 0; l < labels.size(); ++l) {
        out += labels[l] + "," + format6(metrics.precision[l]) + "," +
               format6(metrics.recall[l]) + "," + format6(metrics.f1[l]) + "," +
               std::to_string(metrics.support[l]) + "\n";
    }
    out += "accuracy,,," + format6(metrics.accuracy) + "," +
           std::to_string(metrics.total_support) + "\n";
    out += "macro_avg," + format6(metrics.macro_precision) + "," +
           format6(metrics.macro_recall) + "," + format6(metrics.macro_f1) + "," +
           std::to_string(metrics.total_support) + "\n";
    out += "weighted_avg," + format6(metrics.weighted_precision) + "," +
           format6(metrics.weighted_recall) + "," + format6(metrics.weighted_f1) + "," +
           std::to_string(metrics.total_support) + "\n";
    write_file_atomic(path, out);
}

void export_confusion_csv(const std::filesystem::path& path, const Metrics& metrics) {
    const auto& labels = label_set();
    std::string out = "label";
    for (const std::string& label : labels) out += "," + label;
    out += "\n";
    for (size_t t = 0; t < labels.size(); ++t) {
        out += labels[t];
        for (size_t p = 0; p < labels.size(); ++p)
            out += "," + std::to_string(metrics.confusion[t][p]);
        out += "\n";
    }
    write_file_atomic(path, out);
}

} // namespace wikitrends
