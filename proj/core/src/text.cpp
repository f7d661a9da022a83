#include "wikitrends/text.hpp"

#include "wikitrends/errors.hpp"
#include "wikitrends/io_util.hpp"
#include "wikitrends/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace wikitrends {

using nlohmann::json;

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::string data = read_file(path);
    std::set<std::string> words;
    size_t pos = 0;
    while (pos < data.size()) {
        size_t nl = data.find('\n', pos);
        if (nl == std::string::npos) nl = data.size();
        std::string_view line(data.data() + pos, nl - pos);
        pos = nl + 1;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
        if (!line.empty()) words.insert(lower_utf8(line));
    }
    return words;
}

namespace {

// Returns (codepoint, bytes consumed); malformed sequences yield U+FFFD
// and consume one byte, which tokenization treats as a separator.
std::pair<uint32_t, size_t> decode_utf8(std::string_view s, size_t i) {
    const unsigned char b0 = s[i];
    if (b0 < 0x80) return {b0, 1};
    auto cont = [&](size_t k) {
        return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0 && cont(1)) {
        uint32_t cp = (b0 & 0x1Fu) << 6 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
        return cp >= 0x80 ? std::pair<uint32_t, size_t>{cp, 2}
                          : std::pair<uint32_t, size_t>{0xFFFD, 1};
    }
    if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
        uint32_t cp = (b0 & 0x0Fu) << 12 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6 |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
        return cp >= 0x800 ? std::pair<uint32_t, size_t>{cp, 3}
                           : std::pair<uint32_t, size_t>{0xFFFD, 1};
    }
    if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
        uint32_t cp = (b0 & 0x07u) << 18 | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12 |
                      (static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6 |
                      (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
        return cp >= 0x10000 && cp <= 0x10FFFF ? std::pair<uint32_t, size_t>{cp, 4}
                                               : std::pair<uint32_t, size_t>{0xFFFD, 1};
    }
    return {0xFFFD, 1};
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_digit_cp(uint32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter_cp(uint32_t cp) {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
    if (cp >= 0x00C0 && cp <= 0x00FF && cp != 0x00D7 && cp != 0x00F7) return true;
    if (cp >= 0x0100 && cp <= 0x024F) return true; // Latin Extended-A/B
    if (cp == 0x0386 || (cp >= 0x0388 && cp <= 0x03FF && cp != 0x038B && cp != 0x038D))
        return true;                               // Greek
    if (cp >= 0x0400 && cp <= 0x04FF) return true; // Cyrillic
    return false;
}

uint32_t lower_cp(uint32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
    if (cp == 0x0130) return 'i';    // dotted capital I
    if (cp == 0x0131) return cp;     // dotless small i stays
    if (cp == 0x0178) return 0x00FF; // capital Y with diaeresis
    if ((cp >= 0x0100 && cp <= 0x0137) || (cp >= 0x014A && cp <= 0x0177))
        return cp % 2 == 0 ? cp + 1 : cp;
    if ((cp >= 0x0139 && cp <= 0x0148) || (cp >= 0x0179 && cp <= 0x017E))
        return cp % 2 == 1 ? cp + 1 : cp;
    if (cp == 0x0386) return 0x03AC;
    if (cp >= 0x0388 && cp <= 0x038A) return cp + 0x25;
    if (cp == 0x038C) return 0x03CC;
    if (cp == 0x038E) return 0x03CD;
    if (cp == 0x038F) return 0x03CE;
    if (cp >= 0x0391 && cp <= 0x03A1) return cp + 0x20;
    if (cp >= 0x03A3 && cp <= 0x03AB) return cp + 0x20;
    if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
    if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
    return cp;
}

} // namespace

std::string lower_utf8(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    while (i < text.size()) {
        auto [cp, len] = decode_utf8(text, i);
        append_utf8(out, lower_cp(cp));
        i += len;
    }
    return out;
}

std::vector<std::string> tokenize(std::string_view text, const LangConfig& config) {
    std::vector<std::string> tokens;
    std::string current;
    size_t cp_count = 0;
    bool all_digits = true;

    auto flush = [&] {
        if (cp_count >= config.min_token_length && !all_digits &&
            config.stopwords.count(current) == 0)
            tokens.push_back(current);
        current.clear();
        cp_count = 0;
        all_digits = true;
    };

    size_t i = 0;
    while (i < text.size()) {
        auto [cp, len] = decode_utf8(text, i);
        i += len;
        if (is_letter_cp(cp)) {
            append_utf8(current, lower_cp(cp));
            ++cp_count;
            all_digits = false;
        } else if (is_digit_cp(cp)) {
            append_utf8(current, cp);
            ++cp_count;
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::vector<ClusterDoc> build_cluster_docs(const Partition& partition,
                                           const SummaryStore& summaries,
                                           const std::map<uint32_t, uint32_t>& degrees,
                                           const LangConfig& config) {
    std::vector<ClusterDoc> docs;
    for (const auto& [cluster, pages] : partition.members()) {
        if (partition.is_filtered(cluster)) continue;
        ClusterDoc doc;
        doc.cluster_id = cluster;
        for (uint32_t page : pages) {
            auto deg = degrees.find(page);
            const uint32_t n = deg == degrees.end() ? 0 : deg->second;
            doc.source_pages.emplace_back(page, n);
            auto summary = summaries.find(page);
            if (summary == summaries.end() || summary->second.empty()) {
                log_debug("no summary for page " + std::to_string(page));
                continue;
            }
            const uint32_t multiplier = std::max(n, 1u);
            for (const std::string& token : tokenize(summary->second, config))
                doc.term_counts[token] += multiplier;
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::map<uint32_t, KeywordList> tfidf_keywords(const std::vector<ClusterDoc>& docs,
                                               const KeywordConfig& config) {
    if (docs.empty()) throw EmptyCorpus("tfidf over zero documents");
    std::map<std::string, uint32_t> df;
    for (const ClusterDoc& doc : docs)
        for (const auto& [term, count] : doc.term_counts) ++df[term];

    const double n_docs = static_cast<double>(docs.size());
    std::map<uint32_t, KeywordList> out;
    for (const ClusterDoc& doc : docs) {
        KeywordList scored;
        for (const auto& [term, count] : doc.term_counts) {
            const double idf = std::log(n_docs / static_cast<double>(df.at(term)));
            const double score = static_cast<double>(count) * idf;
            if (score > 0) scored.emplace_back(term, score);
        }
        std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        if (scored.size() > config.top_k) scored.resize(config.top_k);
        out.emplace(doc.cluster_id, std::move(scored));
    }
    return out;
}

LdaModel lda_fit(const std::vector<ClusterDoc>& docs, const LdaConfig& config,
                 const LdaSweepObserver& observer) {
    if (config.k < 1) throw InvalidK("topic count must be at least 1");
    if (docs.empty()) throw EmptyCorpus("lda over zero documents");

    LdaModel model;
    model.k = config.k;
    model.alpha = config.alpha > 0 ? config.alpha : 50.0 / config.k;
    model.beta = config.beta;
    model.iterations = config.iterations;
    model.seed = config.seed;

    std::map<std::string, uint32_t> vocab_ids;
    for (const ClusterDoc& doc : docs)
        for (const auto& [term, count] : doc.term_counts) vocab_ids.emplace(term, 0);
    for (auto& [term, id] : vocab_ids) {
        id = static_cast<uint32_t>(model.vocab.size());
        model.vocab.push_back(term);
    }

    struct Instance {
        uint32_t doc, word;
    };
    std::vector<Instance> instances;
    for (uint32_t d = 0; d < docs.size(); ++d) {
        model.doc_ids.push_back(docs[d].cluster_id);
        for (const auto& [term, count] : docs[d].term_counts) {
            const uint32_t v = vocab_ids.at(term);
            for (uint32_t r = 0; r < count; ++r) instances.push_back({d, v});
        }
    }
    if (instances.empty()) throw EmptyCorpus("lda needs at least one token");

    const uint32_t k = config.k;
    const uint32_t n_words = static_cast<uint32_t>(model.vocab.size());
    const uint32_t n_docs = static_cast<uint32_t>(docs.size());
    const double alpha = model.alpha, beta = model.beta;

    std::vector<std::vector<uint32_t>> n_kv(k, std::vector<uint32_t>(n_words, 0));
    std::vector<uint64_t> n_k(k, 0);
    std::vector<std::vector<uint32_t>> n_dk(n_docs, std::vector<uint32_t>(k, 0));
    std::vector<uint64_t> n_d(n_docs, 0);
    std::vector<uint32_t> z(instances.size());

    Rng rng(config.seed);
    for (size_t i = 0; i < instances.size(); ++i) {
        const uint32_t topic = static_cast<uint32_t>(rng.next_below(k));
        z[i] = topic;
        ++n_kv[topic][instances[i].word];
        ++n_k[topic];
        ++n_dk[instances[i].doc][topic];
        ++n_d[instances[i].doc];
    }

    std::vector<double> cumulative(k);
    for (uint32_t sweep = 0; sweep < config.iterations; ++sweep) {
        for (size_t i = 0; i < instances.size(); ++i) {
            const auto [d, v] = instances[i];
            const uint32_t old = z[i];
            --n_kv[old][v];
            --n_k[old];
            --n_dk[d][old];

            double total = 0;
            for (uint32_t t = 0; t < k; ++t) {
                const double p = (n_kv[t][v] + beta) / (n_k[t] + n_words * beta) *
                                 (n_dk[d][t] + alpha);
                total += p;
                cumulative[t] = total;
            }
            const double u = rng.next_double() * total;
            uint32_t picked = k - 1;
            for (uint32_t t = 0; t < k; ++t) {
                if (u < cumulative[t]) {
                    picked = t;
                    break;
                }
            }
            z[i] = picked;
            ++n_kv[picked][v];
            ++n_k[picked];
            ++n_dk[d][picked];
        }
        if (observer) {
            LdaSweepStats stats;
            stats.sweep = sweep;
            stats.token_instances = instances.size();
            for (uint32_t t = 0; t < k; ++t) stats.topic_word_total += n_k[t];
            for (uint32_t d = 0; d < n_docs; ++d)
                for (uint32_t t = 0; t < k; ++t) stats.doc_topic_total += n_dk[d][t];
            observer(stats);
        }
    }

    model.phi.assign(k, std::vector<double>(n_words));
    for (uint32_t t = 0; t < k; ++t)
        for (uint32_t v = 0; v < n_words; ++v)
            model.phi[t][v] = (n_kv[t][v] + beta) / (n_k[t] + n_words * beta);
    model.theta.assign(n_docs, std::vector<double>(k));
    for (uint32_t d = 0; d < n_docs; ++d)
        for (uint32_t t = 0; t < k; ++t)
            model.theta[d][t] = (n_dk[d][t] + alpha) / (n_d[d] + k * alpha);
    return model;
}

std::vector<std::string> lda_top_words(const LdaModel& model, uint32_t topic, uint32_t k) {
    if (topic >= model.k) throw BadTopicIndex("topic " + std::to_string(topic) + " of " +
                                              std::to_string(model.k));
    std::vector<std::pair<std::string, double>> scored;
    scored.reserve(model.vocab.size());
    for (size_t v = 0; v < model.vocab.size(); ++v)
        scored.emplace_back(model.vocab[v], model.phi[topic][v]);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (scored.size() > k) scored.resize(k);
    std::vector<std::string> out;
    out.reserve(scored.size());
    for (auto& [token, score] : scored) out.push_back(std::move(token));
    return out;
}

void export_keywords_json(const std::filesystem::path& path,
                          const std::map<uint32_t, KeywordList>& keywords,
                          const std::string& language) {
    json doc;
    doc["schema_version"] = 1;
    doc["language"] = language;
    json clusters = json::array();
    for (const auto& [cluster, list] : keywords) {
        json entry;
        entry["cluster_id"] = cluster;
        json kw = json::array();
        for (const auto& [token, score] : list) {
            json one;
            one["token"] = token;
            one["score"] = score;
            kw.push_back(std::move(one));
        }
        entry["keywords"] = std::move(kw);
        clusters.push_back(std::move(entry));
    }
    doc["clusters"] = std::move(clusters);
    write_file_atomic(path, doc.dump(2) + "\n");
}

std::map<uint32_t, KeywordList> load_keywords_json(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    std::map<uint32_t, KeywordList> out;
    try {
        for (const json& entry : doc.at("clusters")) {
            KeywordList list;
            for (const json& one : entry.at("keywords"))
                list.emplace_back(one.at("token").get<std::string>(),
                                  one.at("score").get<double>());
            out.emplace(entry.at("cluster_id").get<uint32_t>(), std::move(list));
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return out;
}

} // namespace wikitrends
