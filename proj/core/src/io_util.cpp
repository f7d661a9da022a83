#include "wikitrends/io_util.hpp"

#include "wikitrends/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace wikitrends {

namespace {
std::atomic<LogLevel> g_log_level{LogLevel::warn};
}

void set_log_level(LogLevel level) { g_log_level.store(level); }
LogLevel log_level() { return g_log_level.load(); }

void log(LogLevel level, const std::string& message) {
    if (level < g_log_level.load()) return;
    static const char* names[] = {"debug", "info", "warn", "error"};
    std::clog << "[" << names[static_cast<int>(level)] << "] " << message << "\n";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for " + path.string());
    return data;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path() && !path.parent_path().empty()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

bool glob_match(std::string_view pattern, std::string_view name) {
    size_t p = 0, n = 0;
    size_t star = std::string_view::npos, mark = 0;
    while (n < name.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == name[n])) {
            ++p;
            ++n;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = n;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            n = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

std::vector<std::filesystem::path> expand_glob(const std::string& pattern) {
    namespace fs = std::filesystem;
    fs::path pat(pattern);
    fs::path dir = pat.parent_path();
    std::string leaf = pat.filename().string();
    if (leaf.find('*') == std::string::npos && leaf.find('?') == std::string::npos) {
        if (fs::exists(pat)) return {pat};
        return {};
    }
    if (dir.empty()) dir = ".";
    std::vector<fs::path> out;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        if (glob_match(leaf, entry.path().filename().string())) out.push_back(entry.path());
    }
    if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
    std::sort(out.begin(), out.end());
    return out;
}

std::string format6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

int64_t hour_from_filename(std::string_view name) {
    auto digit = [&](size_t i) { return std::isdigit(static_cast<unsigned char>(name[i])) != 0; };
    // look for <8 digits>-<2 digits> not embedded in a longer digit run
    for (size_t i = 0; i + 10 < name.size(); ++i) {
        if (i > 0 && digit(i - 1)) continue;
        bool ok = true;
        for (size_t k = 0; k < 8 && ok; ++k) ok = digit(i + k);
        if (!ok || name[i + 8] != '-' || !digit(i + 9) || !digit(i + 10)) continue;
        int year = 0;
        for (size_t k = 0; k < 4; ++k) year = year * 10 + (name[i + k] - '0');
        int mon = (name[i + 4] - '0') * 10 + (name[i + 5] - '0');
        int day = (name[i + 6] - '0') * 10 + (name[i + 7] - '0');
        int hh = (name[i + 9] - '0') * 10 + (name[i + 10] - '0');
        using namespace std::chrono;
        year_month_day ymd{std::chrono::year{year}, month{static_cast<unsigned>(mon)},
                           std::chrono::day{static_cast<unsigned>(day)}};
        if (!ymd.ok() || hh > 23) continue;
        return duration_cast<hours>(sys_days{ymd}.time_since_epoch()).count() + hh;
    }
    throw ParseError("no YYYYMMDD-HH stamp in file name: " + std::string(name));
}

std::string url_encode(std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) {
        bool unreserved = std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~';
        if (unreserved) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xf]);
        }
    }
    return out;
}

} // namespace wikitrends
