#pragma once

#include <cstdint>
#include <map>
#include <utility>

namespace wikitrends {

/// Adjusted Rand Index between a reference cluster assignment and a
/// predicted one, computed over the reference's keys. Keys missing from
/// `predicted` count as singleton clusters of their own. Returns 1.0 when
/// the pair-counting denominator vanishes (both sides trivially agree).
inline double adjusted_rand_index(const std::map<uint32_t, uint32_t>& reference,
                                  const std::map<uint32_t, uint32_t>& predicted) {
    // Contingency table over (reference cluster, predicted cluster) pairs;
    // unmatched keys get fresh predicted ids so they pair with nothing.
    std::map<std::pair<uint64_t, uint64_t>, uint64_t> cells;
    std::map<uint64_t, uint64_t> row_sum, col_sum;
    uint64_t fresh = 1ull << 32; // above any real predicted id
    uint64_t n = 0;
    for (const auto& [key, ref_cluster] : reference) {
        auto it = predicted.find(key);
        const uint64_t pred_cluster = it != predicted.end() ? it->second : fresh++;
        ++cells[{ref_cluster, pred_cluster}];
        ++row_sum[ref_cluster];
        ++col_sum[pred_cluster];
        ++n;
    }

    auto comb2 = [](uint64_t x) { return static_cast<double>(x) * (x - 1) / 2.0; };
    double sum_cells = 0, sum_rows = 0, sum_cols = 0;
    for (const auto& [cell, count] : cells) sum_cells += comb2(count);
    for (const auto& [cluster, count] : row_sum) sum_rows += comb2(count);
    for (const auto& [cluster, count] : col_sum) sum_cols += comb2(count);

    const double pairs = comb2(n);
    const double expected = pairs > 0 ? sum_rows * sum_cols / pairs : 0.0;
    const double maximum = (sum_rows + sum_cols) / 2.0;
    if (maximum - expected == 0.0) return 1.0;
    return (sum_cells - expected) / (maximum - expected);
}

} // namespace wikitrends
