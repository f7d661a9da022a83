#include "wikitrends/graph.hpp"

#include "wikitrends/errors.hpp"
#include "wikitrends/io_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace wikitrends {

using nlohmann::json;

double TrendGraph::total_weight() const {
    double sum = 0;
    for (const auto& [key, w] : edges) sum += w;
    return sum;
}

std::map<uint32_t, std::vector<uint32_t>> Partition::members() const {
    std::map<uint32_t, std::vector<uint32_t>> out;
    for (auto [node, c] : cluster_of) out[c].push_back(node);
    return out;
}

double edge_weight(const uint32_t* p_series, const uint32_t* q_series, size_t n,
                   const BurstProfile& p_burst, const BurstProfile& q_burst,
                   const GraphConfig& config) {
    std::vector<uint32_t> hours;
    hours.reserve(p_burst.burst_hours.size() + q_burst.burst_hours.size());
    std::set_union(p_burst.burst_hours.begin(), p_burst.burst_hours.end(),
                   q_burst.burst_hours.begin(), q_burst.burst_hours.end(),
                   std::back_inserter(hours));
    if (hours.size() < config.min_overlap_hours) return 0.0;

    bool p_const = true, q_const = true;
    for (uint32_t h : hours) {
        if (h >= n) throw InconsistentInputs("burst hour beyond series length");
        p_const = p_const && p_series[h] == p_series[hours[0]];
        q_const = q_const && q_series[h] == q_series[hours[0]];
    }
    if (p_const || q_const) return 0.0;

    const double m = static_cast<double>(hours.size());
    double sum_p = 0, sum_q = 0;
    for (uint32_t h : hours) {
        sum_p += p_series[h];
        sum_q += q_series[h];
    }
    const double mean_p = sum_p / m, mean_q = sum_q / m;
    double cov = 0, var_p = 0, var_q = 0;
    for (uint32_t h : hours) {
        const double dp = p_series[h] - mean_p;
        const double dq = q_series[h] - mean_q;
        cov += dp * dq;
        var_p += dp * dp;
        var_q += dq * dq;
    }
    // single square root keeps r = 1 exact for identical series
    double r = cov / std::sqrt(var_p * var_q);
    if (r <= 0) return 0.0;
    if (r > 1) r = 1;
    return round6(r);
}

TrendGraph build_trend_graph(const ViewMatrix& matrix, const EdgeList& edges,
                             const std::map<uint32_t, BurstProfile>& bursts,
                             const GraphConfig& config) {
    TrendGraph g;
    for (const auto& [id, profile] : bursts) {
        g.nodes.push_back(id);
        g.degree[id] = 0;
    }

    std::map<std::pair<uint32_t, uint32_t>, double> cache;
    for (auto [s, t] : edges.edges) {
        auto ps = bursts.find(s);
        auto pt = bursts.find(t);
        if (ps == bursts.end() || pt == bursts.end()) continue;
        const auto key = std::minmax(s, t);
        auto it = cache.find(key);
        if (it == cache.end()) {
            double w = edge_weight(matrix.row(key.first), matrix.row(key.second),
                                   matrix.n_hours, bursts.at(key.first), bursts.at(key.second),
                                   config);
            it = cache.emplace(key, w).first;
        }
        const double w = it->second;
        if (w <= 0 || w < config.w_min) continue;
        if (g.edges.emplace(key, w).second) {
            ++g.degree[key.first];
            ++g.degree[key.second];
            g.adjacency[key.first].emplace_back(key.second, w);
            g.adjacency[key.second].emplace_back(key.first, w);
        }
        g.out_arcs[s].push_back(t);
    }
    for (auto& [id, neighbors] : g.adjacency) std::sort(neighbors.begin(), neighbors.end());
    for (auto& [id, arcs] : g.out_arcs) std::sort(arcs.begin(), arcs.end());
    return g;
}

double modularity(const TrendGraph& graph, const Partition& partition) {
    if (graph.nodes.empty()) throw EmptyGraph("modularity of an empty graph");
    const uint32_t k = partition.n_clusters;
    std::vector<double> in2(k, 0.0); // twice the intra-community weight
    std::vector<double> ext(k, 0.0); // cross-community weight per endpoint
    for (const auto& [key, w] : graph.edges) {
        auto a = partition.cluster_of.find(key.first);
        auto b = partition.cluster_of.find(key.second);
        if (a == partition.cluster_of.end() || b == partition.cluster_of.end())
            throw InconsistentInputs("partition does not cover every node");
        if (a->second >= k || b->second >= k)
            throw InconsistentInputs("cluster id beyond n_clusters");
        if (a->second == b->second) {
            in2[a->second] += 2 * w;
        } else {
            ext[a->second] += w;
            ext[b->second] += w;
        }
    }
    double two_m = 0;
    for (uint32_t c = 0; c < k; ++c) two_m += in2[c] + ext[c];
    if (two_m == 0) return 0.0;
    double q = 0;
    for (uint32_t c = 0; c < k; ++c) {
        const double tot = (in2[c] + ext[c]) / two_m;
        q += in2[c] / two_m - tot * tot;
    }
    return q;
}

namespace {

// One local-move phase over an aggregated graph. adj holds undirected
// neighbor weights without self-loops; self_w the self-loop weight (the
// weight folded into a supernode). Returns true when any node moved.
bool local_move_phase(const std::vector<std::vector<std::pair<uint32_t, double>>>& adj,
                      const std::vector<double>& self_w, double two_m, double resolution,
                      std::vector<uint32_t>& comm) {
    const size_t n = adj.size();
    std::vector<double> strength(n, 0.0), tot;
    for (size_t i = 0; i < n; ++i) {
        strength[i] = 2 * self_w[i];
        for (auto [j, w] : adj[i]) strength[i] += w;
    }
    tot = strength; // one community per node initially
    comm.resize(n);
    for (size_t i = 0; i < n; ++i) comm[i] = static_cast<uint32_t>(i);

    constexpr double kGainTol = 1e-12;
    bool any_move = false;
    bool moved = true;
    std::map<uint32_t, double> w_to; // community -> weight from the node under review
    while (moved) {
        moved = false;
        for (size_t i = 0; i < n; ++i) {
            const uint32_t ci = comm[i];
            w_to.clear();
            for (auto [j, w] : adj[i]) w_to[comm[j]] += w;
            tot[ci] -= strength[i];
            auto gain = [&](uint32_t c) {
                auto it = w_to.find(c);
                const double k_in = it == w_to.end() ? 0.0 : it->second;
                return k_in - resolution * tot[c] * strength[i] / two_m;
            };
            uint32_t best = ci;
            double best_gain = gain(ci);
            for (const auto& [c, k_in] : w_to) { // ascending community id
                if (c == ci) continue;
                const double g = gain(c);
                if (g > best_gain + kGainTol) {
                    best_gain = g;
                    best = c;
                }
            }
            tot[best] += strength[i];
            if (best != ci) {
                comm[i] = best;
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

// Dense renumbering in order of first appearance.
uint32_t renumber(std::vector<uint32_t>& labels) {
    std::unordered_map<uint32_t, uint32_t> dense;
    for (uint32_t& label : labels) {
        auto [it, inserted] = dense.emplace(label, static_cast<uint32_t>(dense.size()));
        label = it->second;
    }
    return static_cast<uint32_t>(dense.size());
}

Partition partition_from_flat(const std::vector<uint32_t>& nodes,
                              const std::vector<uint32_t>& flat) {
    Partition p;
    std::vector<uint32_t> labels = flat;
    p.n_clusters = renumber(labels); // nodes ascend by page id, so cluster
                                     // ids order by smallest member
    for (size_t i = 0; i < nodes.size(); ++i) p.cluster_of[nodes[i]] = labels[i];
    return p;
}

} // namespace

void mark_filtered(Partition& partition, uint32_t min_cluster_size) {
    partition.filtered.clear();
    std::vector<uint32_t> size(partition.n_clusters, 0);
    for (auto [node, c] : partition.cluster_of) ++size[c];
    for (uint32_t c = 0; c < partition.n_clusters; ++c)
        if (size[c] < min_cluster_size) partition.filtered.insert(c);
}

Partition louvain(const TrendGraph& graph, double resolution, uint64_t /*seed*/,
                  uint32_t min_cluster_size, std::vector<double>* pass_modularity) {
    if (graph.nodes.empty()) throw EmptyGraph("louvain needs at least one node");
    const size_t v = graph.nodes.size();
    std::unordered_map<uint32_t, uint32_t> dense;
    dense.reserve(v);
    for (size_t i = 0; i < v; ++i) dense.emplace(graph.nodes[i], static_cast<uint32_t>(i));

    std::vector<std::vector<std::pair<uint32_t, double>>> adj(v);
    std::vector<double> self_w(v, 0.0);
    double two_m = 0;
    for (const auto& [key, w] : graph.edges) {
        const uint32_t a = dense.at(key.first), b = dense.at(key.second);
        adj[a].emplace_back(b, w);
        adj[b].emplace_back(a, w);
        two_m += 2 * w;
    }

    std::vector<uint32_t> flat(v);
    for (size_t i = 0; i < v; ++i) flat[i] = static_cast<uint32_t>(i);
    if (pass_modularity) pass_modularity->clear();

    if (two_m > 0) {
        while (true) {
            std::vector<uint32_t> comm;
            if (!local_move_phase(adj, self_w, two_m, resolution, comm)) break;
            const uint32_t n_comm = renumber(comm);
            for (uint32_t& label : flat) label = comm[label];
            if (pass_modularity)
                pass_modularity->push_back(
                    modularity(graph, partition_from_flat(graph.nodes, flat)));

            // aggregate: communities become nodes, intra weight becomes
            // self-loop weight
            std::vector<double> next_self(n_comm, 0.0);
            std::map<std::pair<uint32_t, uint32_t>, double> next_edges;
            for (size_t i = 0; i < adj.size(); ++i) {
                next_self[comm[i]] += self_w[i];
                for (auto [j, w] : adj[i]) {
                    if (j < i) continue; // undirected edges visited once
                    if (comm[i] == comm[j])
                        next_self[comm[i]] += w;
                    else
                        next_edges[std::minmax(comm[i], comm[j])] += w;
                }
            }
            std::vector<std::vector<std::pair<uint32_t, double>>> next_adj(n_comm);
            for (const auto& [key, w] : next_edges) {
                next_adj[key.first].emplace_back(key.second, w);
                next_adj[key.second].emplace_back(key.first, w);
            }
            for (auto& neighbors : next_adj) std::sort(neighbors.begin(), neighbors.end());
            adj = std::move(next_adj);
            self_w = std::move(next_self);
            if (adj.size() == 1) break;
        }
    }

    Partition partition = partition_from_flat(graph.nodes, flat);
    mark_filtered(partition, min_cluster_size);
    return partition;
}

std::map<uint32_t, double> pagerank(const TrendGraph& graph,
                                    const std::vector<uint32_t>& cluster,
                                    const GraphConfig& config, uint32_t* iterations) {
    if (cluster.empty()) throw EmptyCluster("pagerank needs a non-empty cluster");
    std::vector<uint32_t> ids(cluster);
    std::sort(ids.begin(), ids.end());
    const size_t n = ids.size();
    std::unordered_map<uint32_t, uint32_t> pos;
    pos.reserve(n);
    for (size_t i = 0; i < n; ++i) pos.emplace(ids[i], static_cast<uint32_t>(i));

    std::vector<std::vector<uint32_t>> arcs(n);
    for (size_t i = 0; i < n; ++i) {
        auto it = graph.out_arcs.find(ids[i]);
        if (it == graph.out_arcs.end()) continue;
        for (uint32_t v : it->second) {
            auto p = pos.find(v);
            if (p != pos.end()) arcs[i].push_back(p->second);
        }
    }

    const double d = config.damping;
    std::vector<double> x(n, 1.0 / static_cast<double>(n)), next(n);
    uint32_t iter = 0;
    while (iter < config.max_iter) {
        ++iter;
        double dangling = 0;
        for (size_t i = 0; i < n; ++i)
            if (arcs[i].empty()) dangling += x[i];
        const double base = (1.0 - d) / static_cast<double>(n) +
                            d * dangling / static_cast<double>(n);
        std::fill(next.begin(), next.end(), base);
        for (size_t i = 0; i < n; ++i) {
            if (arcs[i].empty()) continue;
            const double share = d * x[i] / static_cast<double>(arcs[i].size());
            for (uint32_t j : arcs[i]) next[j] += share;
        }
        double l1 = 0;
        for (size_t i = 0; i < n; ++i) l1 += std::abs(next[i] - x[i]);
        x.swap(next);
        if (l1 < config.tol) break;
    }
    if (iterations) *iterations = iter;

    std::map<uint32_t, double> out;
    for (size_t i = 0; i < n; ++i) out.emplace(ids[i], x[i]);
    return out;
}

uint32_t central_page(const std::vector<uint32_t>& cluster,
                      const std::map<uint32_t, double>& scores) {
    if (cluster.empty()) throw EmptyCluster("central page of an empty cluster");
    std::vector<uint32_t> ids(cluster);
    std::sort(ids.begin(), ids.end());
    uint32_t best = ids[0];
    double best_score = -1;
    for (uint32_t id : ids) {
        auto it = scores.find(id);
        if (it == scores.end()) throw InconsistentInputs("missing score for cluster member");
        if (it->second > best_score) {
            best_score = it->second;
            best = id;
        }
    }
    return best;
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

void export_gexf(const std::filesystem::path& path, const TrendGraph& graph,
                 const Partition& partition,
                 const std::map<uint32_t, double>& pagerank_scores,
                 const PageIndex& index) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
    out += "  <meta>\n    <creator>wikitrends</creator>\n";
    out += "    <description>trend graph: " + xml_escape(index.language) + "</description>\n";
    out += "  </meta>\n";
    out += "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n";
    out += "    <attributes class=\"node\">\n";
    out += "      <attribute id=\"0\" title=\"title\" type=\"string\"/>\n";
    out += "      <attribute id=\"1\" title=\"degree\" type=\"integer\"/>\n";
    out += "      <attribute id=\"2\" title=\"cluster\" type=\"integer\"/>\n";
    out += "      <attribute id=\"3\" title=\"pagerank\" type=\"double\"/>\n";
    out += "    </attributes>\n    <nodes>\n";
    for (uint32_t id : graph.nodes) {
        const std::string title = xml_escape(index.title_of(id));
        out += "      <node id=\"" + std::to_string(id) + "\" label=\"" + title + "\">\n";
        out += "        <attvalues>\n";
        out += "          <attvalue for=\"0\" value=\"" + title + "\"/>\n";
        out += "          <attvalue for=\"1\" value=\"" + std::to_string(graph.degree.at(id)) +
               "\"/>\n";
        out += "          <attvalue for=\"2\" value=\"" +
               std::to_string(partition.cluster_of.at(id)) + "\"/>\n";
        out += "          <attvalue for=\"3\" value=\"" + format6(pagerank_scores.at(id)) +
               "\"/>\n";
        out += "        </attvalues>\n      </node>\n";
    }
    out += "    </nodes>\n    <edges>\n";
    uint64_t edge_id = 0;
    for (const auto& [key, w] : graph.edges) {
        out += "      <edge id=\"" + std::to_string(edge_id++) + "\" source=\"" +
               std::to_string(key.first) + "\" target=\"" + std::to_string(key.second) +
               "\" weight=\"" + format6(w) + "\"/>\n";
    }
    out += "    </edges>\n  </graph>\n</gexf>\n";
    write_file_atomic(path, out);
}

void export_graph_json(const std::filesystem::path& path, const TrendGraph& graph,
                       const Partition& partition,
                       const std::map<uint32_t, double>& pagerank_scores,
                       const PageIndex& index) {
    json doc;
    doc["schema_version"] = 1;
    doc["language"] = index.language;
    doc["n_clusters"] = partition.n_clusters;
    doc["filtered_clusters"] = partition.filtered;
    json nodes = json::array();
    for (uint32_t id : graph.nodes) {
        json n;
        n["id"] = id;
        n["title"] = index.title_of(id);
        n["degree"] = graph.degree.at(id);
        n["cluster"] = partition.cluster_of.at(id);
        n["pagerank"] = pagerank_scores.at(id);
        nodes.push_back(std::move(n));
    }
    doc["nodes"] = std::move(nodes);
    json edges = json::array();
    for (const auto& [key, w] : graph.edges) {
        json e;
        e["source"] = key.first;
        e["target"] = key.second;
        e["weight"] = w;
        edges.push_back(std::move(e));
    }
    doc["edges"] = std::move(edges);
    write_file_atomic(path, doc.dump(2) + "\n");
}

GraphArtifacts load_graph_json(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    GraphArtifacts out;
    try {
        out.partition.n_clusters = doc.at("n_clusters").get<uint32_t>();
        for (uint32_t c : doc.at("filtered_clusters")) out.partition.filtered.insert(c);
        for (const json& n : doc.at("nodes")) {
            const uint32_t id = n.at("id").get<uint32_t>();
            out.graph.nodes.push_back(id);
            out.graph.degree[id] = 0;
            out.partition.cluster_of[id] = n.at("cluster").get<uint32_t>();
            out.pagerank_scores[id] = n.at("pagerank").get<double>();
        }
        for (const json& e : doc.at("edges")) {
            const uint32_t s = e.at("source").get<uint32_t>();
            const uint32_t t = e.at("target").get<uint32_t>();
            const double w = e.at("weight").get<double>();
            if (!out.graph.degree.count(s) || !out.graph.degree.count(t))
                throw ParseError(path.string() + ": edge endpoint is not a node");
            if (w <= 0 || w > 1) throw ParseError(path.string() + ": edge weight outside (0,1]");
            out.graph.edges[{std::min(s, t), std::max(s, t)}] = w;
            out.graph.adjacency[s].emplace_back(t, w);
            out.graph.adjacency[t].emplace_back(s, w);
            ++out.graph.degree[s];
            ++out.graph.degree[t];
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    std::sort(out.graph.nodes.begin(), out.graph.nodes.end());
    for (auto& [id, neighbors] : out.graph.adjacency) std::sort(neighbors.begin(), neighbors.end());
    return out;
}

} // namespace wikitrends
