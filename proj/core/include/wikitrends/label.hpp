#pragma once

#include "wikitrends/graph.hpp"
#include "wikitrends/text.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wikitrends {

/// The fixed label inventory, in confusion-matrix axis order.
const std::vector<std::string>& label_set();
std::optional<uint32_t> label_index(const std::string& label);

struct LabelRules {
    std::map<std::string, std::string> title_patterns; // parenthetical -> label
    struct KeywordSet {
        std::string label;
        std::vector<std::string> keywords; // conjunction: all must occur
    };
    std::vector<KeywordSet> keyword_sets; // file order; first match wins
};

/// JSON {"title_patterns": {...}, "keyword_sets": [{"label", "keywords"}]}.
/// Patterns and keywords are lowercased on load. Throws ConfigError on
/// unknown labels or empty keyword sets, ParseError on bad JSON.
LabelRules load_label_rules(const std::filesystem::path& path);

/// A title ending in "(p)" with a known pattern p wins; otherwise the
/// first keyword set whose every keyword occurs in the lowercased summary.
std::optional<std::string> rule_label(const std::string& title, const std::string& summary,
                                      const LabelRules& rules);

using LabeledExample = std::pair<std::vector<std::string>, std::string>;

/// Multinomial bag-of-words model with additive smoothing.
struct ClassifierModel {
    double smoothing = 1.0;
    std::vector<std::string> vocab;                  // sorted tokens
    std::vector<std::string> labels;                 // present labels, label_set() order
    std::vector<double> log_prior;                   // per present label
    std::vector<std::vector<double>> log_likelihood; // label x vocab
};

/// Throws EmptyTrainingSet; logs a warning when only one label is present
/// (the model degenerates to a constant predictor).
ClassifierModel train_classifier(const std::vector<LabeledExample>& examples,
                                 double smoothing = 1.0);

struct Prediction {
    std::string label;
    std::map<std::string, double> log_scores; // per present label
};

/// Argmax of log prior + summed token log likelihoods; unknown tokens are
/// skipped; ties go to the label earliest in label_set() order.
Prediction predict(const ClassifierModel& model, const std::vector<std::string>& tokens);

/// Same scoring over a counted bag of words (count x log likelihood).
Prediction predict_weighted(const ClassifierModel& model,
                            const std::map<std::string, uint32_t>& term_counts);

struct Metrics {
    std::vector<std::vector<uint64_t>> confusion; // [true][predicted]
    std::vector<double> precision, recall, f1;    // per label
    std::vector<uint64_t> support;
    double accuracy = 0;
    double macro_precision = 0, macro_recall = 0, macro_f1 = 0;
    double weighted_precision = 0, weighted_recall = 0, weighted_f1 = 0;
    uint64_t total_support = 0;
};

/// Fills every derived field from a label_set()-sized confusion matrix.
/// Per-label precision/recall are 0 when their column/row is empty; macro
/// averages cover labels with support > 0. Throws EmptyTestSet on an
/// all-zero matrix.
Metrics metrics_from_confusion(const std::vector<std::vector<uint64_t>>& confusion);

struct AggregateMetrics {
    double macro = 0;
    double weighted = 0;
    uint64_t total_support = 0;
};

/// Support-aware averaging of an externally supplied per-label column:
/// macro over labels with support > 0, plus the support-weighted mean.
AggregateMetrics aggregate_metric(const std::vector<double>& values,
                                  const std::vector<uint64_t>& supports);

/// Throws EmptyTestSet.
Metrics evaluate(const ClassifierModel& model, const std::vector<LabeledExample>& test);

/// Cluster label = plurality of member page labels; ties are broken by the
/// classifier's scores on the cluster document (restricted to the tied
/// labels), and clusters with no labeled page fall back to the classifier
/// entirely. Throws UnlabelableCluster when neither input exists.
std::map<uint32_t, std::string> label_clusters(
    const Partition& partition, const std::map<uint32_t, std::string>& page_labels,
    const std::vector<ClusterDoc>& docs, const ClassifierModel& model);

/// CSV with per-label precision/recall/F1/support rows followed by
/// accuracy, macro and weighted average rows.
void export_metrics_csv(const std::filesystem::path& path, const Metrics& metrics);

/// Square counts matrix, labels on both axes.
void export_confusion_csv(const std::filesystem::path& path, const Metrics& metrics);

} // namespace wikitrends
