#pragma once

#include <cstdint>
#include <filesystem>

namespace wikitrends {

/// Writes a complete three-language (en/fr/ru) demo input tree under root:
/// hourly pageview files, hyperlink edge lists, article summaries,
/// stopwords, labeling rules, and a ready-to-run pipeline config. Three
/// themed page clusters per language (football, politics, music) burst at
/// staggered hours against a sea of noise pages, so a full run produces
/// labeled trends that align across the editions. Deterministic per seed.
/// Returns the config path (root/"config.json").
std::filesystem::path write_demo_fixture(const std::filesystem::path& root, uint64_t seed = 42);

} // namespace wikitrends
