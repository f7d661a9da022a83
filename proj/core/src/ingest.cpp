#include "wikitrends/ingest.hpp"

#include "wikitrends/errors.hpp"
#include "wikitrends/io_util.hpp"
#include "wikitrends/rng.hpp"

#include <json.hpp>
#include <zlib.h>

#include <charconv>
#include <cmath>
#include <cstring>
#include <sstream>
#include <unordered_set>

namespace wikitrends {

using nlohmann::json;

uint32_t PageIndex::add(const std::string& title) {
    auto [it, inserted] = ids.emplace(title, static_cast<uint32_t>(titles.size()));
    if (inserted) titles.push_back(title);
    return it->second;
}

std::optional<uint32_t> PageIndex::find(const std::string& title) const {
    auto it = ids.find(title);
    if (it == ids.end()) return std::nullopt;
    return it->second;
}

uint64_t ViewMatrix::total() const {
    uint64_t sum = 0;
    for (uint32_t c : counts) sum += c;
    return sum;
}

uint64_t ViewMatrix::row_total(uint32_t page) const {
    uint64_t sum = 0;
    const uint32_t* r = row(page);
    for (uint32_t t = 0; t < n_hours; ++t) sum += r[t];
    return sum;
}

namespace {

bool parse_u64_strict(std::string_view s, uint64_t& out) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

} // namespace

ViewRecord parse_pageview_line(const std::string& line) {
    std::string_view v(line);
    if (!v.empty() && v.back() == '\n') v.remove_suffix(1);
    if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
    std::string_view fields[4];
    size_t n = 0;
    size_t pos = 0;
    while (true) {
        size_t sp = v.find(' ', pos);
        std::string_view field = (sp == std::string_view::npos)
                                     ? v.substr(pos)
                                     : v.substr(pos, sp - pos);
        if (n == 4) throw MalformedLine("expected 4 fields: " + line);
        fields[n++] = field;
        if (sp == std::string_view::npos) break;
        pos = sp + 1;
    }
    if (n != 4) throw MalformedLine("expected 4 fields: " + line);
    if (fields[0].empty() || fields[1].empty())
        throw MalformedLine("empty project or title: " + line);
    uint64_t views = 0, bytes = 0;
    if (!parse_u64_strict(fields[2], views) || views > UINT32_MAX)
        throw MalformedLine("bad view count: " + line);
    if (!parse_u64_strict(fields[3], bytes))
        throw MalformedLine("bad byte count: " + line);
    ViewRecord rec;
    rec.project = std::string(fields[0]);
    rec.title = std::string(fields[1]);
    rec.views = static_cast<uint32_t>(views);
    return rec;
}

std::string serialize_pageview_line(const ViewRecord& rec) {
    return rec.project + " " + rec.title + " " + std::to_string(rec.views) + " 0";
}

EdgeList load_edges(const std::filesystem::path& path, const PageIndex& index) {
    std::string data = read_file(path);
    EdgeList out;
    std::unordered_set<uint64_t> seen;
    size_t pos = 0, lineno = 0;
    while (pos < data.size()) {
        size_t nl = data.find('\n', pos);
        if (nl == std::string::npos) nl = data.size();
        std::string_view line(data.data() + pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": no tab separator");
        auto src = index.find(std::string(line.substr(0, tab)));
        auto dst = index.find(std::string(line.substr(tab + 1)));
        if (!src || !dst) {
            ++out.skipped;
            continue;
        }
        if (*src == *dst) continue;
        uint64_t key = (static_cast<uint64_t>(*src) << 32) | *dst;
        if (seen.insert(key).second) out.edges.emplace_back(*src, *dst);
    }
    return out;
}

PageIndex build_page_index_from_edges(const std::filesystem::path& path, std::string language) {
    std::string data = read_file(path);
    PageIndex index;
    index.language = std::move(language);
    size_t pos = 0, lineno = 0;
    while (pos < data.size()) {
        size_t nl = data.find('\n', pos);
        if (nl == std::string::npos) nl = data.size();
        std::string_view line(data.data() + pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": no tab separator");
        index.add(std::string(line.substr(0, tab)));
        index.add(std::string(line.substr(tab + 1)));
    }
    return index;
}

ViewMatrix make_view_matrix(PageIndex index, int64_t start_hour, int64_t end_hour) {
    if (end_hour <= start_hour) throw EmptyRange("end_hour must exceed start_hour");
    ViewMatrix m;
    m.index = std::move(index);
    m.start_hour = start_hour;
    m.n_hours = static_cast<uint32_t>(end_hour - start_hour);
    m.counts.assign(static_cast<size_t>(m.index.size()) * m.n_hours, 0);
    return m;
}

ViewMatrix build_view_matrix(const std::vector<std::pair<ViewRecord, int64_t>>& records,
                             PageIndex index, int64_t start_hour, int64_t end_hour) {
    ViewMatrix m = make_view_matrix(std::move(index), start_hour, end_hour);
    for (const auto& [rec, hour] : records) {
        if (hour < start_hour || hour >= end_hour) continue;
        auto id = m.index.find(rec.title);
        if (!id) continue;
        m.at(*id, static_cast<uint32_t>(hour - start_hour)) += rec.views;
    }
    return m;
}

PageviewLoadStats load_pageview_files(ViewMatrix& matrix,
                                      const std::vector<std::filesystem::path>& files) {
    PageviewLoadStats stats;
    const int64_t end_hour = matrix.start_hour + matrix.n_hours;
    std::vector<char> buf(1 << 16);
    for (const auto& file : files) {
        int64_t hour = hour_from_filename(file.filename().string());
        if (hour < matrix.start_hour || hour >= end_hour) {
            // whole file lies outside the matrix range
            ++stats.out_of_range;
            log_debug("skipping out-of-range file " + file.string());
            continue;
        }
        const uint32_t t = static_cast<uint32_t>(hour - matrix.start_hour);
        gzFile gz = gzopen(file.string().c_str(), "rb"); // reads plain files too
        if (!gz) throw IoError("cannot open " + file.string());
        uint64_t lineno = 0;
        std::string line;
        while (gzgets(gz, buf.data(), static_cast<int>(buf.size()))) {
            line.append(buf.data());
            if (line.back() != '\n' && !gzeof(gz)) continue; // buffer-split long line
            ++lineno;
            if (line == "\n" || line == "\r\n") {
                line.clear();
                continue;
            }
            ViewRecord rec;
            try {
                rec = parse_pageview_line(line);
            } catch (const MalformedLine& e) {
                gzclose(gz);
                throw MalformedLine(file.string() + ":" + std::to_string(lineno) + ": " +
                                    e.what());
            }
            ++stats.lines;
            auto id = matrix.index.find(rec.title);
            if (id)
                matrix.at(*id, t) += rec.views;
            else
                ++stats.unknown_titles;
            line.clear();
        }
        int err = 0;
        gzerror(gz, &err);
        gzclose(gz);
        if (err != Z_OK && err != Z_STREAM_END)
            throw IoError("read failed for " + file.string());
    }
    return stats;
}

void apply_filters(ViewMatrix& matrix, EdgeList& edges, SummaryStore& summaries,
                   const IngestFilters& filters) {
    if (filters.min_total_views == 0 && filters.min_degree == 0) return;

    const uint32_t n = matrix.index.size();
    std::vector<uint32_t> degree(n, 0);
    std::unordered_set<uint64_t> pairs;
    for (auto [s, t] : edges.edges) {
        uint32_t lo = std::min(s, t), hi = std::max(s, t);
        if (pairs.insert((static_cast<uint64_t>(lo) << 32) | hi).second) {
            ++degree[lo];
            ++degree[hi];
        }
    }

    std::vector<uint32_t> remap(n, UINT32_MAX);
    PageIndex kept;
    kept.language = matrix.index.language;
    for (uint32_t p = 0; p < n; ++p) {
        if (matrix.row_total(p) < filters.min_total_views) continue;
        if (degree[p] < filters.min_degree) continue;
        remap[p] = kept.add(matrix.index.title_of(p));
    }
    log_info("ingest filters kept " + std::to_string(kept.size()) + " of " +
             std::to_string(n) + " pages");

    std::vector<uint32_t> counts(static_cast<size_t>(kept.size()) * matrix.n_hours);
    for (uint32_t p = 0; p < n; ++p) {
        if (remap[p] == UINT32_MAX) continue;
        std::memcpy(counts.data() + static_cast<size_t>(remap[p]) * matrix.n_hours,
                    matrix.row(p), sizeof(uint32_t) * matrix.n_hours);
    }
    matrix.index = std::move(kept);
    matrix.counts = std::move(counts);

    std::vector<std::pair<uint32_t, uint32_t>> kept_edges;
    for (auto [s, t] : edges.edges)
        if (remap[s] != UINT32_MAX && remap[t] != UINT32_MAX)
            kept_edges.emplace_back(remap[s], remap[t]);
    edges.edges = std::move(kept_edges);

    SummaryStore kept_summaries;
    for (auto& [id, text] : summaries)
        if (id < n && remap[id] != UINT32_MAX) kept_summaries.emplace(remap[id], std::move(text));
    summaries = std::move(kept_summaries);
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    if (spec.t_hours < 1) throw InvalidSpec("t_hours must be positive");
    if (spec.baseline_rate <= 0) throw InvalidSpec("baseline_rate must be positive");
    if (spec.burst_magnitude <= 0) throw InvalidSpec("burst_magnitude must be positive");
    if (spec.intra_cluster_edge_prob < 0 || spec.intra_cluster_edge_prob > 1 ||
        spec.inter_cluster_edge_prob < 0 || spec.inter_cluster_edge_prob > 1)
        throw InvalidSpec("edge probabilities must be in [0,1]");
    if (spec.n_clusters > 0 && spec.pages_per_cluster < 1)
        throw InvalidSpec("pages_per_cluster must be positive");
    if (spec.n_clusters > 0 && spec.t_hours / 4 < spec.n_clusters * 24)
        throw InvalidSpec("t_hours too short to place " + std::to_string(spec.n_clusters) +
                          " disjoint burst windows");

    const uint32_t n_cluster_pages = spec.n_clusters * spec.pages_per_cluster;
    const uint32_t n = n_cluster_pages + spec.n_noise_pages;
    if (n == 0) throw InvalidSpec("no pages requested");

    SyntheticData out;
    PageIndex index;
    index.language = "synth";
    for (uint32_t c = 0; c < spec.n_clusters; ++c)
        for (uint32_t j = 0; j < spec.pages_per_cluster; ++j)
            index.add("Topic" + std::to_string(c) + "_Page" + std::to_string(j));
    for (uint32_t i = 0; i < spec.n_noise_pages; ++i) index.add("Noise_" + std::to_string(i));
    out.matrix = make_view_matrix(std::move(index), 0, spec.t_hours);

    Rng rng(spec.seed);

    // Burst windows live in the third quarter of the range, evenly spread so
    // they never overlap across clusters.
    for (uint32_t c = 0; c < spec.n_clusters; ++c) {
        uint32_t len = static_cast<uint32_t>(rng.next_in(6, 24));
        uint32_t start = spec.t_hours / 2 + c * (spec.t_hours / 4) / spec.n_clusters;
        out.burst_windows.emplace_back(start, start + len);
    }

    const double peak = spec.burst_magnitude * spec.baseline_rate;
    for (uint32_t p = 0; p < n; ++p) {
        const bool clustered = p < n_cluster_pages;
        const uint32_t c = clustered ? p / spec.pages_per_cluster : 0;
        if (clustered) out.planted[p] = c;
        const auto [wstart, wend] =
            clustered ? out.burst_windows[c] : std::pair<uint32_t, uint32_t>{0, 0};
        for (uint32_t t = 0; t < spec.t_hours; ++t) {
            double rate = spec.baseline_rate;
            if (clustered && t >= wstart && t < wend) {
                // rate starts at the peak and halves across the window, so
                // co-bursting pages share a strongly varying mean and their
                // burst-hour correlation is close to 1
                double frac = static_cast<double>(t - wstart) / (wend - wstart - 1);
                rate = peak * std::pow(0.5, frac);
            }
            out.matrix.at(p, t) = rng.next_poisson(rate);
        }
    }

    for (uint32_t p = 0; p < n; ++p) {
        for (uint32_t q = p + 1; q < n; ++q) {
            const bool same_cluster = p < n_cluster_pages && q < n_cluster_pages &&
                                      p / spec.pages_per_cluster == q / spec.pages_per_cluster;
            double prob =
                same_cluster ? spec.intra_cluster_edge_prob : spec.inter_cluster_edge_prob;
            if (!rng.next_bool(prob)) continue;
            if (rng.next_bool(0.5))
                out.edges.edges.emplace_back(p, q);
            else
                out.edges.edges.emplace_back(q, p);
        }
    }
    return out;
}

namespace {

void put_u32(std::string& s, uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_i64(std::string& s, int64_t v) {
    uint64_t u = static_cast<uint64_t>(v);
    for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

uint32_t get_u32(const std::string& s, size_t& pos) {
    if (pos + 4 > s.size()) throw ParseError("truncated matrix cache");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(s[pos++])) << (8 * i);
    return v;
}

int64_t get_i64(const std::string& s, size_t& pos) {
    if (pos + 8 > s.size()) throw ParseError("truncated matrix cache");
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(s[pos++])) << (8 * i);
    return static_cast<int64_t>(v);
}

constexpr char kCacheMagic[] = "WKTS1";

} // namespace

void save_matrix_cache(const ViewMatrix& matrix, const std::filesystem::path& data_path,
                       const std::filesystem::path& index_path) {
    std::string data;
    data.reserve(5 + 16 + matrix.counts.size() * 4);
    data.append(kCacheMagic, 5);
    put_u32(data, matrix.index.size());
    put_u32(data, matrix.n_hours);
    put_i64(data, matrix.start_hour);
    for (uint32_t c : matrix.counts) put_u32(data, c);
    write_file_atomic(data_path, data);

    std::string idx;
    for (uint32_t p = 0; p < matrix.index.size(); ++p) {
        idx += std::to_string(p);
        idx += '\t';
        idx += matrix.index.title_of(p);
        idx += '\n';
    }
    write_file_atomic(index_path, idx);
}

ViewMatrix load_matrix_cache(const std::filesystem::path& data_path,
                             const std::filesystem::path& index_path, std::string language) {
    std::string idx = read_file(index_path);
    PageIndex index;
    index.language = std::move(language);
    size_t pos = 0, lineno = 0;
    while (pos < idx.size()) {
        size_t nl = idx.find('\n', pos);
        if (nl == std::string::npos) nl = idx.size();
        std::string_view line(idx.data() + pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw ParseError(index_path.string() + ":" + std::to_string(lineno) + ": no tab");
        uint64_t id = 0;
        if (!parse_u64_strict(line.substr(0, tab), id) || id != index.size())
            throw ParseError(index_path.string() + ":" + std::to_string(lineno) +
                             ": ids must be contiguous from 0");
        index.add(std::string(line.substr(tab + 1)));
    }

    std::string data = read_file(data_path);
    if (data.size() < 5 || data.compare(0, 5, kCacheMagic) != 0)
        throw ParseError(data_path.string() + ": bad magic");
    pos = 5;
    uint32_t n = get_u32(data, pos);
    uint32_t t = get_u32(data, pos);
    int64_t start = get_i64(data, pos);
    if (n != index.size())
        throw ParseError(data_path.string() + ": page count disagrees with index file");
    if (t == 0) throw ParseError(data_path.string() + ": zero hours");
    if (data.size() - pos != static_cast<size_t>(n) * t * 4)
        throw ParseError(data_path.string() + ": size mismatch");
    ViewMatrix m = make_view_matrix(std::move(index), start, start + t);
    for (size_t i = 0; i < m.counts.size(); ++i) m.counts[i] = get_u32(data, pos);
    return m;
}

SummaryStore load_summaries(const std::filesystem::path& path, const PageIndex& index) {
    std::string data = read_file(path);
    SummaryStore store;
    size_t pos = 0, lineno = 0;
    while (pos < data.size()) {
        size_t nl = data.find('\n', pos);
        if (nl == std::string::npos) nl = data.size();
        std::string line = data.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (line.empty() || line == "\r") continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
        if (!obj.is_object() || !obj.contains("summary") || !obj["summary"].is_string())
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": expected {id|title, summary}");
        uint32_t id = 0;
        if (obj.contains("id") && obj["id"].is_number_unsigned()) {
            uint64_t raw = obj["id"].get<uint64_t>();
            if (raw >= index.size()) {
                log_warn(path.string() + ":" + std::to_string(lineno) + ": id out of range");
                continue;
            }
            id = static_cast<uint32_t>(raw);
        } else if (obj.contains("title") && obj["title"].is_string()) {
            auto found = index.find(obj["title"].get<std::string>());
            if (!found) {
                log_debug(path.string() + ":" + std::to_string(lineno) + ": unknown title");
                continue;
            }
            id = *found;
        } else {
            throw ParseError(path.string() + ":" + std::to_string(lineno) +
                             ": expected {id|title, summary}");
        }
        store[id] = obj["summary"].get<std::string>();
    }
    return store;
}

void save_summaries(const std::filesystem::path& path, const SummaryStore& store,
                    const PageIndex& index) {
    std::string out;
    for (const auto& [id, summary] : store) {
        json obj;
        obj["title"] = index.title_of(id);
        obj["summary"] = summary;
        out += obj.dump();
        out += '\n';
    }
    write_file_atomic(path, out);
}

} // namespace wikitrends
