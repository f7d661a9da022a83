#pragma once

#include "wikitrends/ingest.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

namespace wikitrends {

struct BurstConfig {
    uint32_t window_hours = 168; // one week of hourly counts
    double z_threshold = 3.0;
    uint32_t min_views = 100;
    double epsilon = 1e-9;
};

/// Burst hours of one page. z_scores is parallel to burst_hours; peak_hour
/// is the hour with the largest z (earliest on ties) and is only
/// meaningful when burst_hours is non-empty.
struct BurstProfile {
    uint32_t page_id = 0;
    std::vector<uint32_t> burst_hours;
    std::vector<double> z_scores;
    uint32_t peak_hour = 0;
};

/// Trailing-window mean and population standard deviation. mean[i] and
/// stddev[i] describe the window [t-W, t) for t = W+i; the first W hours
/// have no statistic. Sums are accumulated in integers, so results carry
/// no dependence on accumulation order: mean = sum/W and
/// var = sumsq/W - mean^2 (clamped at 0) in double arithmetic.
struct RollingStats {
    std::vector<double> mean;
    std::vector<double> stddev;
};

/// Throws SeriesTooShort when the series is shorter than the window.
RollingStats rolling_stats(const uint32_t* series, size_t n, uint32_t window);
RollingStats rolling_stats(const std::vector<uint32_t>& series, uint32_t window);

/// Hour t bursts iff (x[t] - mean_t) / (stddev_t + epsilon) >= z_threshold
/// and x[t] >= min_views. Throws SeriesTooShort.
BurstProfile detect_bursts(const uint32_t* series, size_t n, uint32_t page_id,
                           const BurstConfig& config);
BurstProfile detect_bursts(const std::vector<uint32_t>& series, uint32_t page_id,
                           const BurstConfig& config);

/// Row-wise detection; only pages with at least one burst appear.
std::map<uint32_t, BurstProfile> trending_pages(const ViewMatrix& matrix,
                                                const BurstConfig& config);

/// JSONL, one {"page_id", "burst_hours", "z_scores", "peak_hour"} object
/// per page, ascending page id.
void export_bursts(const std::filesystem::path& path,
                   const std::map<uint32_t, BurstProfile>& bursts);
std::map<uint32_t, BurstProfile> load_bursts(const std::filesystem::path& path);

} // namespace wikitrends
