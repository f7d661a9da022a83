#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wikitrends {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3 };

void set_log_level(LogLevel level);
LogLevel log_level();
void log(LogLevel level, const std::string& message);

inline void log_debug(const std::string& m) { log(LogLevel::debug, m); }
inline void log_info(const std::string& m) { log(LogLevel::info, m); }
inline void log_warn(const std::string& m) { log(LogLevel::warn, m); }
inline void log_error(const std::string& m) { log(LogLevel::error, m); }

/// Reads a whole file into memory. Throws IoError.
std::string read_file(const std::filesystem::path& path);

/// Writes content atomically: a sibling temp file is written first and
/// renamed over the target, so readers never observe a half-written file.
/// Parent directories are created as needed. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Hex-encoded SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

/// Expands a glob whose final path component may contain '*' and '?'.
/// Directory components are taken literally. Results are sorted.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

/// True if name matches pattern ('*' any run, '?' any single char).
bool glob_match(std::string_view pattern, std::string_view name);

/// Rounds to 6 decimal places (used to quantize correlation weights).
inline double round6(double v) {
    return std::nearbyint(v * 1e6) / 1e6;
}

/// Fixed "%.6f" rendering for CSV/XML output.
std::string format6(double v);

/// Hours since the Unix epoch for the first "YYYYMMDD-HH" stamp found in
/// name. Throws ParseError when no valid stamp is present.
int64_t hour_from_filename(std::string_view name);

/// Percent-encodes everything outside RFC 3986 unreserved characters.
std::string url_encode(std::string_view s);

} // namespace wikitrends
