#include "wikitrends/report.hpp"

#include "wikitrends/errors.hpp"
#include "wikitrends/io_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <limits>

namespace wikitrends {

using nlohmann::json;

std::vector<Trend> assemble_trends(const ViewMatrix& matrix, const Partition& partition,
                                   const std::map<uint32_t, double>& pagerank_scores,
                                   const std::map<uint32_t, KeywordList>& keywords,
                                   const std::map<uint32_t, std::string>& cluster_labels,
                                   const std::string& run_tag) {
    std::vector<Trend> trends;
    std::vector<uint32_t> max_value;
    for (const auto& [cluster, pages] : partition.members()) {
        if (partition.is_filtered(cluster)) continue;

        Trend trend;
        trend.language = matrix.index.language;
        trend.cluster_id = cluster;
        trend.id = matrix.index.language + "-" + std::to_string(cluster) + "-" + run_tag;
        trend.members = pages;
        trend.series.assign(matrix.n_hours, 0);
        for (uint32_t page : pages) {
            if (page >= matrix.index.size())
                throw InconsistentInputs("partition page " + std::to_string(page) +
                                         " is outside the view matrix");
            const uint32_t* row = matrix.row(page);
            for (uint32_t t = 0; t < matrix.n_hours; ++t) {
                const uint64_t sum = static_cast<uint64_t>(trend.series[t]) + row[t];
                if (sum > std::numeric_limits<uint32_t>::max())
                    throw Error("trend series overflows 32 bits at hour " + std::to_string(t));
                trend.series[t] = static_cast<uint32_t>(sum);
            }
        }
        trend.central_page = central_page(pages, pagerank_scores);
        uint32_t peak = 0;
        for (uint32_t t = 1; t < trend.series.size(); ++t)
            if (trend.series[t] > trend.series[peak]) peak = t;
        trend.peak_hour = peak;

        auto kw = keywords.find(cluster);
        if (kw != keywords.end()) trend.keywords = kw->second;
        auto lbl = cluster_labels.find(cluster);
        if (lbl != cluster_labels.end()) trend.label = lbl->second;

        max_value.push_back(trend.series.empty() ? 0 : trend.series[peak]);
        trends.push_back(std::move(trend));
    }

    std::vector<size_t> order(trends.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (max_value[a] != max_value[b]) return max_value[a] > max_value[b];
        return trends[a].cluster_id < trends[b].cluster_id;
    });
    std::vector<Trend> sorted;
    sorted.reserve(trends.size());
    for (size_t i : order) sorted.push_back(std::move(trends[i]));
    return sorted;
}

TopicDistribution topic_distribution(const std::vector<Trend>& trends) {
    if (trends.empty()) throw NoTrends("no trends to summarize");
    TopicDistribution dist;
    uint64_t pages = 0;
    for (const Trend& trend : trends) {
        ++dist.cluster_counts[trend.label];
        dist.page_counts[trend.label] += trend.members.size();
        pages += trend.members.size();
    }
    for (const auto& [label, count] : dist.cluster_counts)
        dist.cluster_shares[label] =
            static_cast<double>(count) / static_cast<double>(trends.size());
    if (pages)
        for (const auto& [label, count] : dist.page_counts)
            dist.page_shares[label] = static_cast<double>(count) / static_cast<double>(pages);
    return dist;
}

TrendAlignment align_trends(const std::vector<AlignInput>& trends, uint32_t delta_hours) {
    std::vector<AlignInput> sorted(trends);
    std::sort(sorted.begin(), sorted.end(), [](const AlignInput& a, const AlignInput& b) {
        if (a.peak_hour != b.peak_hour) return a.peak_hour < b.peak_hour;
        if (a.language != b.language) return a.language < b.language;
        return a.trend_id < b.trend_id;
    });

    TrendAlignment out;
    out.delta_hours = delta_hours;
    std::vector<std::string> group_label;
    std::vector<uint32_t> group_min_peak; // peaks arrive ascending, so the pairwise
                                          // constraint reduces to peak - min <= delta
    for (const AlignInput& trend : sorted) {
        size_t g = out.groups.size();
        for (size_t i = 0; i < out.groups.size(); ++i) {
            if (group_label[i] != trend.label) continue;
            if (trend.peak_hour - group_min_peak[i] > delta_hours) continue;
            g = i;
            break;
        }
        if (g == out.groups.size()) {
            out.groups.emplace_back();
            group_label.push_back(trend.label);
            group_min_peak.push_back(trend.peak_hour);
        }
        out.groups[g].push_back({trend.language, trend.trend_id});
    }
    return out;
}

TrendAlignment align_trends(const std::vector<std::vector<Trend>>& per_language,
                            uint32_t delta_hours) {
    std::vector<AlignInput> inputs;
    for (const auto& trends : per_language)
        for (const Trend& trend : trends)
            inputs.push_back({trend.language, trend.id, trend.label, trend.peak_hour});
    return align_trends(inputs, delta_hours);
}

void export_trends_json(const std::filesystem::path& path, const std::vector<Trend>& trends,
                        const PageIndex& index, const std::string& generated_at) {
    json doc;
    doc["schema_version"] = 1;
    doc["language"] = index.language;
    doc["generated_at"] = generated_at;
    doc["trends"] = json::array();
    for (const Trend& trend : trends) {
        json entry;
        entry["id"] = trend.id;
        entry["label"] = trend.label;
        entry["central_page_title"] = index.title_of(trend.central_page);
        json members = json::array();
        for (uint32_t page : trend.members) members.push_back(index.title_of(page));
        entry["members"] = std::move(members);
        json kws = json::array();
        for (const auto& [token, score] : trend.keywords)
            kws.push_back(json{{"token", token}, {"score", score}});
        entry["keywords"] = std::move(kws);
        entry["peak_hour"] = trend.peak_hour;
        entry["series"] = trend.series;
        doc["trends"].push_back(std::move(entry));
    }
    write_file_atomic(path, doc.dump(2) + "\n");
}

namespace {

uint32_t resolve_title(const PageIndex& index, const std::string& title,
                       const std::filesystem::path& path) {
    auto id = index.find(title);
    if (!id) throw ParseError(path.string() + ": title not in index: " + title);
    return *id;
}

// Trend ids are "<language>-<cluster>-<run tag>"; the cluster sits between
// the known language prefix and the next dash.
uint32_t cluster_from_id(const std::string& id, const std::string& language,
                         const std::filesystem::path& path) {
    const std::string prefix = language + "-";
    if (id.rfind(prefix, 0) != 0)
        throw ParseError(path.string() + ": trend id has no language prefix: " + id);
    const char* begin = id.data() + prefix.size();
    const char* end = id.data() + id.size();
    uint32_t cluster = 0;
    auto [ptr, ec] = std::from_chars(begin, end, cluster);
    if (ec != std::errc() || ptr == begin || ptr == end || *ptr != '-')
        throw ParseError(path.string() + ": trend id has no cluster number: " + id);
    return cluster;
}

} // namespace

TrendsFile load_trends_json(const std::filesystem::path& path, const PageIndex& index) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    TrendsFile file;
    try {
        if (doc.at("schema_version").get<int>() != 1)
            throw ParseError(path.string() + ": unsupported schema_version");
        file.language = doc.at("language").get<std::string>();
        file.generated_at = doc.at("generated_at").get<std::string>();
        for (const json& entry : doc.at("trends")) {
            Trend trend;
            trend.id = entry.at("id").get<std::string>();
            trend.language = file.language;
            trend.cluster_id = cluster_from_id(trend.id, file.language, path);
            trend.label = entry.at("label").get<std::string>();
            trend.central_page =
                resolve_title(index, entry.at("central_page_title").get<std::string>(), path);
            for (const json& title : entry.at("members"))
                trend.members.push_back(resolve_title(index, title.get<std::string>(), path));
            for (const json& kw : entry.at("keywords"))
                trend.keywords.emplace_back(kw.at("token").get<std::string>(),
                                            kw.at("score").get<double>());
            trend.peak_hour = entry.at("peak_hour").get<uint32_t>();
            trend.series = entry.at("series").get<std::vector<uint32_t>>();
            file.trends.push_back(std::move(trend));
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return file;
}

std::vector<AlignInput> load_align_inputs(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    std::vector<AlignInput> inputs;
    try {
        const std::string language = doc.at("language").get<std::string>();
        for (const json& entry : doc.at("trends"))
            inputs.push_back({language, entry.at("id").get<std::string>(),
                              entry.at("label").get<std::string>(),
                              entry.at("peak_hour").get<uint32_t>()});
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return inputs;
}

void export_trends_csv(const std::filesystem::path& path, const std::vector<Trend>& trends,
                       int64_t start_hour) {
    std::string out = "hour";
    for (const Trend& trend : trends) out += "," + trend.id;
    out += "\n";
    size_t n_hours = trends.empty() ? 0 : trends[0].series.size();
    for (const Trend& trend : trends)
        if (trend.series.size() != n_hours)
            throw InconsistentInputs("trend series lengths differ");
    for (size_t t = 0; t < n_hours; ++t) {
        out += std::to_string(start_hour + static_cast<int64_t>(t));
        for (const Trend& trend : trends) out += "," + std::to_string(trend.series[t]);
        out += "\n";
    }
    write_file_atomic(path, out);
}

void export_trends(const std::filesystem::path& path, const std::string& format,
                   const std::vector<Trend>& trends, const PageIndex& index,
                   const std::string& generated_at, int64_t start_hour) {
    if (format == "json")
        export_trends_json(path, trends, index, generated_at);
    else if (format == "csv")
        export_trends_csv(path, trends, start_hour);
    else
        throw UnsupportedFormat("unknown trends format: " + format);
}

void export_alignment_json(const std::filesystem::path& path, const TrendAlignment& alignment) {
    json doc;
    doc["delta_hours"] = alignment.delta_hours;
    doc["groups"] = json::array();
    for (const auto& group : alignment.groups) {
        json members = json::array();
        for (const AlignRef& ref : group)
            members.push_back(json{{"language", ref.language}, {"trend_id", ref.trend_id}});
        doc["groups"].push_back(std::move(members));
    }
    write_file_atomic(path, doc.dump(2) + "\n");
}

TrendAlignment load_alignment_json(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    TrendAlignment alignment;
    try {
        alignment.delta_hours = doc.at("delta_hours").get<uint32_t>();
        for (const json& group : doc.at("groups")) {
            std::vector<AlignRef> members;
            for (const json& ref : group)
                members.push_back({ref.at("language").get<std::string>(),
                                   ref.at("trend_id").get<std::string>()});
            alignment.groups.push_back(std::move(members));
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return alignment;
}

void export_topics_json(const std::filesystem::path& path, const TopicDistribution& dist,
                        const std::string& language) {
    json doc;
    doc["schema_version"] = 1;
    doc["language"] = language;
    doc["trend_counts"] = dist.cluster_counts;
    doc["trend_shares"] = dist.cluster_shares;
    doc["page_counts"] = dist.page_counts;
    doc["page_shares"] = dist.page_shares;
    write_file_atomic(path, doc.dump(2) + "\n");
}

} // namespace wikitrends
