#include "wikitrends/errors.hpp"
#include "wikitrends/label.hpp"
#include "wikitrends/rng.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

using namespace wikitrends;

namespace {

ClassifierModel toy_model() {
    const std::vector<LabeledExample> examples{
        {{"goal", "match"}, "football"},   {{"goal", "match"}, "football"},
        {{"goal", "match"}, "football"},   {{"election", "vote"}, "politics"},
        {{"election", "vote"}, "politics"}, {{"election", "vote"}, "politics"},
    };
    return train_classifier(examples);
}

ClassifierModel themed_model() {
    const std::vector<LabeledExample> examples{
        {{"goal", "match", "stadium"}, "football"},
        {{"goal", "match", "stadium"}, "football"},
        {{"film", "actor", "premiere"}, "movies"},
        {{"film", "actor", "premiere"}, "movies"},
        {{"album", "song", "singer"}, "music"},
        {{"album", "song", "singer"}, "music"},
    };
    return train_classifier(examples);
}

Partition partition_of(const std::vector<std::pair<uint32_t, uint32_t>>& assignment,
                       uint32_t n_clusters, std::set<uint32_t> filtered = {}) {
    Partition p;
    for (auto [page, cluster] : assignment) p.cluster_of[page] = cluster;
    p.n_clusters = n_clusters;
    p.filtered = std::move(filtered);
    return p;
}

ClusterDoc doc_of(uint32_t id, std::map<std::string, uint32_t> counts) {
    ClusterDoc doc;
    doc.cluster_id = id;
    doc.term_counts = std::move(counts);
    return doc;
}

} // namespace

TEST_CASE("the label inventory is fixed and ordered") {
    const auto& labels = label_set();
    CHECK(labels == std::vector<std::string>{"football", "sports", "politics", "movies",
                                             "music", "conflicts", "religion", "science",
                                             "videogames"});
    for (uint32_t i = 0; i < labels.size(); ++i) {
        REQUIRE(label_index(labels[i]).has_value());
        CHECK(*label_index(labels[i]) == i);
    }
    CHECK_FALSE(label_index("cooking").has_value());
    CHECK_FALSE(label_index("Football").has_value()); // lookups are exact
}

TEST_CASE("labeling rules load from JSON, lowercased and validated") {
    testutil::TempDir dir;
    testutil::write_text(dir / "rules.json", R"({
      "title_patterns": {"Album": "music", "FILM": "movies"},
      "keyword_sets": [
        {"label": "politics", "keywords": ["Political", "Party"]}
      ]
    })");
    const LabelRules rules = load_label_rules(dir / "rules.json");
    CHECK(rules.title_patterns ==
          std::map<std::string, std::string>{{"album", "music"}, {"film", "movies"}});
    REQUIRE(rules.keyword_sets.size() == 1);
    CHECK(rules.keyword_sets[0].label == "politics");
    CHECK(rules.keyword_sets[0].keywords ==
          std::vector<std::string>{"political", "party"});

    SUBCASE("unknown labels are rejected") {
        testutil::write_text(dir / "bad1.json",
                             R"({"title_patterns": {"album": "cooking"}, "keyword_sets": []})");
        CHECK_THROWS_AS(load_label_rules(dir / "bad1.json"), ConfigError);
        testutil::write_text(
            dir / "bad2.json",
            R"({"title_patterns": {}, "keyword_sets": [{"label": "jazz", "keywords": ["x"]}]})");
        CHECK_THROWS_AS(load_label_rules(dir / "bad2.json"), ConfigError);
    }
    SUBCASE("empty keyword conjunctions are rejected") {
        testutil::write_text(
            dir / "bad3.json",
            R"({"title_patterns": {}, "keyword_sets": [{"label": "music", "keywords": []}]})");
        CHECK_THROWS_AS(load_label_rules(dir / "bad3.json"), ConfigError);
    }
    SUBCASE("broken JSON and missing files fail loudly") {
        testutil::write_text(dir / "broken.json", "{");
        CHECK_THROWS_AS(load_label_rules(dir / "broken.json"), ParseError);
        CHECK_THROWS_AS(load_label_rules(dir / "absent.json"), IoError);
    }
}

TEST_CASE("rule labeling: final parenthetical first, then keyword conjunctions") {
    LabelRules rules;
    rules.title_patterns = {{"album", "music"}, {"film", "movies"}};
    rules.keyword_sets.push_back({"politics", {"political", "party"}});
    rules.keyword_sets.push_back({"football", {"goal"}});

    SUBCASE("title patterns") {
        CHECK(rule_label("Nevermind (album)", "", rules) == "music");
        CHECK(rule_label("Nevermind (Album)", "", rules) == "music"); // case-blind
        CHECK(rule_label("Parasite (film)", "", rules) == "movies");
        CHECK_FALSE(rule_label("Nevermind", "", rules).has_value());
        CHECK_FALSE(rule_label("Nevermind (single)", "", rules).has_value());
        // only a trailing parenthetical counts
        CHECK_FALSE(rule_label("Dune (film) reception", "", rules).has_value());
    }
    SUBCASE("keyword conjunctions on the summary") {
        CHECK(rule_label("X", "A political party founded in 1990.", rules) == "politics");
        CHECK(rule_label("X", "The POLITICAL wing of the Party.", rules) == "politics");
        // substring matching is intentional
        CHECK(rule_label("X", "Multiparty political systems.", rules) == "politics");
        CHECK_FALSE(rule_label("X", "A political essay.", rules).has_value());
        CHECK_FALSE(rule_label("X", "Nothing relevant here.", rules).has_value());
    }
    SUBCASE("the title pattern outranks any keyword match") {
        CHECK(rule_label("Revolution (album)", "A political party anthem.", rules) ==
              "music");
    }
    SUBCASE("among keyword sets, file order wins") {
        LabelRules ordered;
        ordered.keyword_sets.push_back({"conflicts", {"war"}});
        ordered.keyword_sets.push_back({"science", {"war", "study"}});
        CHECK(rule_label("X", "A study of war.", ordered) == "conflicts");
        LabelRules reversed;
        reversed.keyword_sets.push_back({"science", {"war", "study"}});
        reversed.keyword_sets.push_back({"conflicts", {"war"}});
        CHECK(rule_label("X", "A study of war.", reversed) == "science");
    }
}

TEST_CASE("the bag-of-words classifier matches hand-computed estimates") {
    const ClassifierModel model = toy_model();
    REQUIRE(model.labels == std::vector<std::string>{"football", "politics"});
    REQUIRE(model.vocab == std::vector<std::string>{"election", "goal", "match", "vote"});

    SUBCASE("smoothed likelihoods and priors") {
        CHECK(model.log_prior[0] == doctest::Approx(std::log(0.5)).epsilon(1e-12));
        CHECK(model.log_prior[1] == doctest::Approx(std::log(0.5)).epsilon(1e-12));
        // P(goal | football) = (3+1)/(6+4), P(goal | politics) = (0+1)/(6+4)
        CHECK(model.log_likelihood[0][1] == doctest::Approx(std::log(0.4)).epsilon(1e-12));
        CHECK(model.log_likelihood[1][1] == doctest::Approx(std::log(0.1)).epsilon(1e-12));
        for (size_t l = 0; l < model.labels.size(); ++l) {
            double mass = 0;
            for (double ll : model.log_likelihood[l]) mass += std::exp(ll);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("argmax prediction with exact scores") {
        const Prediction pred = predict(model, {"goal", "match"});
        CHECK(pred.label == "football");
        CHECK(pred.log_scores.at("football") ==
              doctest::Approx(std::log(0.5) + 2 * std::log(0.4)).epsilon(1e-12));
        CHECK(pred.log_scores.at("politics") ==
              doctest::Approx(std::log(0.5) + 2 * std::log(0.1)).epsilon(1e-12));
        CHECK(predict(model, {"vote", "vote"}).label == "politics");
    }
    SUBCASE("unknown or missing evidence falls back to the earliest prior") {
        // equal priors tie; football precedes politics in the inventory
        CHECK(predict(model, {}).label == "football");
        CHECK(predict(model, {"zzz", "qqq"}).label == "football");
    }
    SUBCASE("counted and repeated tokens score the same") {
        const Prediction flat = predict(model, {"goal", "goal", "vote"});
        const Prediction counted =
            predict_weighted(model, {{"goal", 2}, {"vote", 1}});
        CHECK(flat.label == counted.label);
        for (const auto& [label, score] : flat.log_scores)
            CHECK(score == doctest::Approx(counted.log_scores.at(label)).epsilon(1e-9));
    }
    SUBCASE("a separable corpus is fit perfectly") {
        const std::vector<LabeledExample> train{
            {{"goal", "match"}, "football"}, {{"election", "vote"}, "politics"},
            {{"film", "actor"}, "movies"},   {{"goal", "stadium"}, "football"},
        };
        const Metrics m = evaluate(train_classifier(train), train);
        CHECK(m.accuracy == 1.0);
    }
    SUBCASE("a single-label corpus degenerates to a constant predictor") {
        const ClassifierModel lone =
            train_classifier({{{"goal"}, "football"}, {{"match"}, "football"}});
        CHECK(predict(lone, {"election"}).label == "football");
        CHECK(lone.labels == std::vector<std::string>{"football"});
    }
    SUBCASE("bad training inputs are rejected") {
        CHECK_THROWS_AS(train_classifier({}), EmptyTrainingSet);
        CHECK_THROWS_AS(train_classifier({{{"x"}, "cooking"}}), ConfigError);
    }
}

TEST_CASE("evaluation fills the confusion matrix in inventory order") {
    const ClassifierModel model = toy_model();
    const std::vector<LabeledExample> test{
        {{"goal", "match"}, "football"},
        {{"election", "vote"}, "politics"},
        {{"goal", "goal"}, "politics"}, // fooled: scored as football
    };
    const Metrics m = evaluate(model, test);
    CHECK(m.confusion[0][0] == 1);
    CHECK(m.confusion[2][2] == 1);
    CHECK(m.confusion[2][0] == 1);
    CHECK(m.accuracy == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(m.total_support == 3);
    CHECK_THROWS_AS(evaluate(model, {}), EmptyTestSet);
}

TEST_CASE("metric derivation from a confusion matrix") {
    const size_t n = label_set().size();

    SUBCASE("a perfect diagonal scores one everywhere it counts") {
        std::vector<std::vector<uint64_t>> c(n, std::vector<uint64_t>(n, 0));
        c[0][0] = 10;
        c[4][4] = 5;
        const Metrics m = metrics_from_confusion(c);
        CHECK(m.accuracy == 1.0);
        CHECK(m.precision[0] == 1.0);
        CHECK(m.recall[4] == 1.0);
        CHECK(m.f1[4] == 1.0);
        CHECK(m.precision[1] == 0.0); // empty labels stay zero
        CHECK(m.macro_precision == 1.0);
        CHECK(m.weighted_f1 == 1.0);
        CHECK(m.support == std::vector<uint64_t>{10, 0, 0, 0, 5, 0, 0, 0, 0});
        CHECK(m.total_support == 15);
    }
    SUBCASE("hand-checked two-label mixture") {
        std::vector<std::vector<uint64_t>> c(n, std::vector<uint64_t>(n, 0));
        c[0][0] = 8;
        c[0][2] = 2;
        c[2][0] = 1;
        c[2][2] = 9;
        const Metrics m = metrics_from_confusion(c);
        CHECK(m.precision[0] == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
        CHECK(m.precision[2] == doctest::Approx(9.0 / 11.0).epsilon(1e-12));
        CHECK(m.recall[0] == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(m.recall[2] == doctest::Approx(0.9).epsilon(1e-12));
        CHECK(m.accuracy == doctest::Approx(17.0 / 20.0).epsilon(1e-12));
        CHECK(m.macro_precision ==
              doctest::Approx((8.0 / 9.0 + 9.0 / 11.0) / 2).epsilon(1e-12));
        CHECK(m.weighted_recall == doctest::Approx(0.85).epsilon(1e-12));
        CHECK(m.confusion == c);
    }
    SUBCASE("random matrices satisfy the defining identities") {
        Rng rng(31337);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::vector<uint64_t>> c(n, std::vector<uint64_t>(n, 0));
            uint64_t total = 0;
            for (size_t i = 0; i < n; ++i) {
                if (rng.next_bool(0.3)) continue; // some labels stay empty
                for (size_t j = 0; j < n; ++j) {
                    c[i][j] = rng.next_below(20);
                    total += c[i][j];
                }
            }
            if (total == 0) c[0][0] = total = 1;
            const Metrics m = metrics_from_confusion(c);

            uint64_t trace = 0;
            double macro_p = 0, weighted_f1 = 0;
            uint32_t with_support = 0;
            for (size_t l = 0; l < n; ++l) {
                uint64_t row = 0, col = 0;
                for (size_t j = 0; j < n; ++j) {
                    row += c[l][j];
                    col += c[j][l];
                }
                trace += c[l][l];
                CHECK(m.support[l] == row);
                const double p = col ? static_cast<double>(c[l][l]) / col : 0.0;
                const double r = row ? static_cast<double>(c[l][l]) / row : 0.0;
                const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
                CHECK(m.precision[l] == doctest::Approx(p).epsilon(1e-12));
                CHECK(m.recall[l] == doctest::Approx(r).epsilon(1e-12));
                CHECK(m.f1[l] == doctest::Approx(f).epsilon(1e-12));
                if (row) {
                    macro_p += p;
                    weighted_f1 += f * row;
                    ++with_support;
                }
            }
            CHECK(m.accuracy ==
                  doctest::Approx(static_cast<double>(trace) / total).epsilon(1e-12));
            CHECK(m.macro_precision ==
                  doctest::Approx(macro_p / with_support).epsilon(1e-12));
            CHECK(m.weighted_f1 ==
                  doctest::Approx(weighted_f1 / total).epsilon(1e-12));
            CHECK(m.total_support == total);
        }
    }
    SUBCASE("wrong shapes and empty matrices are rejected") {
        std::vector<std::vector<uint64_t>> wide(n, std::vector<uint64_t>(n + 1, 1));
        CHECK_THROWS_AS(metrics_from_confusion(wide), InconsistentInputs);
        std::vector<std::vector<uint64_t>> few(n - 1, std::vector<uint64_t>(n, 1));
        CHECK_THROWS_AS(metrics_from_confusion(few), InconsistentInputs);
        std::vector<std::vector<uint64_t>> zero(n, std::vector<uint64_t>(n, 0));
        CHECK_THROWS_AS(metrics_from_confusion(zero), EmptyTestSet);
    }
}

TEST_CASE("support-aware averaging of an external metric column") {
    SUBCASE("zero-support labels are excluded from the macro mean") {
        const AggregateMetrics agg = aggregate_metric({0.9, 0.5, 0.7}, {10, 0, 30});
        CHECK(agg.macro == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(agg.weighted == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(agg.total_support == 40);
    }
    SUBCASE("uniform support reduces both means to the plain average") {
        const AggregateMetrics agg = aggregate_metric({0.2, 0.4, 0.6}, {7, 7, 7});
        CHECK(agg.macro == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(agg.weighted == doctest::Approx(0.4).epsilon(1e-12));
    }
    SUBCASE("mismatched lengths are rejected") {
        CHECK_THROWS_AS(aggregate_metric({0.5, 0.5}, {1}), InconsistentInputs);
    }
}

TEST_CASE("cluster labels come from page votes, then the classifier") {
    const ClassifierModel model = themed_model();
    const std::map<uint32_t, std::string> page_labels{
        {1, "music"}, {2, "music"}, {3, "movies"}, {4, "music"}, {5, "movies"}};

    SUBCASE("plurality of member labels") {
        const auto labels = label_clusters(partition_of({{1, 0}, {2, 0}, {3, 0}}, 1),
                                           page_labels, {}, model);
        CHECK(labels == std::map<uint32_t, std::string>{{0, "music"}});
    }
    SUBCASE("no labeled members: the cluster document decides") {
        const auto labels =
            label_clusters(partition_of({{10, 0}, {11, 0}}, 1), page_labels,
                           {doc_of(0, {{"goal", 3}, {"match", 2}})}, model);
        CHECK(labels == std::map<uint32_t, std::string>{{0, "football"}});
    }
    SUBCASE("vote ties defer to classifier scores over the tied labels") {
        const auto labels =
            label_clusters(partition_of({{4, 0}, {5, 0}}, 1), page_labels,
                           {doc_of(0, {{"album", 2}, {"song", 1}})}, model);
        CHECK(labels == std::map<uint32_t, std::string>{{0, "music"}});
    }
    SUBCASE("ties among labels the model never saw fall back to inventory order") {
        const ClassifierModel football_only =
            train_classifier({{{"goal"}, "football"}, {{"match"}, "football"}});
        const auto labels =
            label_clusters(partition_of({{4, 0}, {5, 0}}, 1), page_labels,
                           {doc_of(0, {{"goal", 1}})}, football_only);
        // movies precedes music in the inventory
        CHECK(labels == std::map<uint32_t, std::string>{{0, "movies"}});
    }
    SUBCASE("filtered clusters are skipped entirely") {
        const auto labels = label_clusters(
            partition_of({{1, 0}, {2, 0}, {99, 1}}, 2, {1}), page_labels, {}, model);
        CHECK(labels.count(1) == 0);
        CHECK(labels.at(0) == "music");
    }
    SUBCASE("a cluster with neither labels nor text cannot be labeled") {
        try {
            label_clusters(partition_of({{50, 0}}, 1), page_labels, {}, model);
            FAIL("expected UnlabelableCluster");
        } catch (const UnlabelableCluster& e) {
            CHECK(std::string(e.what()).find("no labeled pages and no text") !=
                  std::string::npos);
        }
    }
}

TEST_CASE("metric and confusion CSV exports are fixed-shape") {
    const size_t n = label_set().size();
    std::vector<std::vector<uint64_t>> c(n, std::vector<uint64_t>(n, 0));
    c[0][0] = 8;
    c[0][2] = 2;
    c[2][2] = 10;
    const Metrics m = metrics_from_confusion(c);
    testutil::TempDir dir;

    SUBCASE("metrics table") {
        export_metrics_csv(dir / "metrics.csv", m);
        const std::string csv = testutil::read_text(dir / "metrics.csv");
        std::vector<std::string> lines;
        for (size_t pos = 0; pos < csv.size();) {
            const size_t nl = csv.find('\n', pos);
            lines.push_back(csv.substr(pos, nl - pos));
            pos = nl + 1;
        }
        REQUIRE(lines.size() == 13);
        CHECK(lines[0] == "label,precision,recall,f1,support");
        CHECK(lines[1] == "football,1.000000,0.800000,0.888889,10");
        CHECK(lines[2].substr(0, 7) == "sports,");
        CHECK(lines[10] == "accuracy,,,0.900000,20");
        CHECK(lines[11].substr(0, 10) == "macro_avg,");
        CHECK(lines[12].substr(0, 13) == "weighted_avg,");

        export_metrics_csv(dir / "again.csv", m);
        CHECK(testutil::read_text(dir / "again.csv") == csv);
    }
    SUBCASE("confusion table") {
        export_confusion_csv(dir / "confusion.csv", m);
        const std::string csv = testutil::read_text(dir / "confusion.csv");
        std::vector<std::string> lines;
        for (size_t pos = 0; pos < csv.size();) {
            const size_t nl = csv.find('\n', pos);
            lines.push_back(csv.substr(pos, nl - pos));
            pos = nl + 1;
        }
        REQUIRE(lines.size() == 10);
        CHECK(lines[0] ==
              "label,football,sports,politics,movies,music,conflicts,religion,science,"
              "videogames");
        CHECK(lines[1] == "football,8,0,2,0,0,0,0,0,0");
        CHECK(lines[3] == "politics,0,0,10,0,0,0,0,0,0");
    }
}
