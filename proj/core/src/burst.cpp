#include "wikitrends/burst.hpp"

#include "wikitrends/errors.hpp"
#include "wikitrends/io_util.hpp"

#include <json.hpp>

#include <cmath>

namespace wikitrends {

using nlohmann::json;

RollingStats rolling_stats(const uint32_t* series, size_t n, uint32_t window) {
    if (window < 2) throw SeriesTooShort("window must be at least 2");
    if (n < window) throw SeriesTooShort("series shorter than window");

    RollingStats out;
    out.mean.reserve(n - window);
    out.stddev.reserve(n - window);

    // Exact integer window sums; converted to double only at the end.
    uint64_t sum = 0;
    unsigned __int128 sumsq = 0;
    for (uint32_t t = 0; t < window; ++t) {
        sum += series[t];
        sumsq += static_cast<uint64_t>(series[t]) * series[t];
    }
    const double w = static_cast<double>(window);
    for (size_t t = window; t < n; ++t) {
        double mean = static_cast<double>(sum) / w;
        double var = static_cast<double>(sumsq) / w - mean * mean;
        if (var < 0) var = 0; // rounding can push a constant window negative
        out.mean.push_back(mean);
        out.stddev.push_back(std::sqrt(var));
        sum += series[t];
        sum -= series[t - window];
        sumsq += static_cast<uint64_t>(series[t]) * series[t];
        sumsq -= static_cast<uint64_t>(series[t - window]) * series[t - window];
    }
    return out;
}

RollingStats rolling_stats(const std::vector<uint32_t>& series, uint32_t window) {
    return rolling_stats(series.data(), series.size(), window);
}

BurstProfile detect_bursts(const uint32_t* series, size_t n, uint32_t page_id,
                           const BurstConfig& config) {
    RollingStats stats = rolling_stats(series, n, config.window_hours);
    BurstProfile profile;
    profile.page_id = page_id;
    double peak_z = 0;
    for (size_t i = 0; i < stats.mean.size(); ++i) {
        const size_t t = config.window_hours + i;
        const uint32_t x = series[t];
        if (x < config.min_views) continue;
        double z = (static_cast<double>(x) - stats.mean[i]) / (stats.stddev[i] + config.epsilon);
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

BurstProfile detect_bursts(const std::vector<uint32_t>& series, uint32_t page_id,
                           const BurstConfig& config) {
    return detect_bursts(series.data(), series.size(), page_id, config);
}

std::map<uint32_t, BurstProfile> trending_pages(const ViewMatrix& matrix,
                                                const BurstConfig& config) {
    std::map<uint32_t, BurstProfile> out;
    for (uint32_t p = 0; p < matrix.index.size(); ++p) {
        BurstProfile profile = detect_bursts(matrix.row(p), matrix.n_hours, p, config);
        if (!profile.burst_hours.empty()) out.emplace(p, std::move(profile));
    }
    return out;
}

void export_bursts(const std::filesystem::path& path,
                   const std::map<uint32_t, BurstProfile>& bursts) {
    std::string out;
    for (const auto& [id, profile] : bursts) {
        json obj;
        obj["page_id"] = id;
        obj["burst_hours"] = profile.burst_hours;
        obj["z_scores"] = profile.z_scores;
        obj["peak_hour"] = profile.peak_hour;
        out += obj.dump();
        out += '\n';
    }
    write_file_atomic(path, out);
}

std::map<uint32_t, BurstProfile> load_bursts(const std::filesystem::path& path) {
    std::string data = read_file(path);
    std::map<uint32_t, BurstProfile> out;
    size_t pos = 0, lineno = 0;
    while (pos < data.size()) {
        size_t nl = data.find('\n', pos);
        if (nl == std::string::npos) nl = data.size();
        std::string line = data.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (line.empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        BurstProfile profile;
        try {
            profile.page_id = obj.at("page_id").get<uint32_t>();
            profile.burst_hours = obj.at("burst_hours").get<std::vector<uint32_t>>();
            profile.z_scores = obj.at("z_scores").get<std::vector<double>>();
            profile.peak_hour = obj.at("peak_hour").get<uint32_t>();
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (profile.burst_hours.size() != profile.z_scores.size())
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": burst_hours and z_scores lengths differ");
        out.emplace(profile.page_id, std::move(profile));
    }
    return out;
}

} // namespace wikitrends
