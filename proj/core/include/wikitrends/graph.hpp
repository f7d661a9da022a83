#pragma once

#include "wikitrends/burst.hpp"
#include "wikitrends/ingest.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wikitrends {

struct GraphConfig {
    double w_min = 0.5;              // minimum correlation to keep an edge
    uint32_t min_overlap_hours = 6;  // minimum |union of burst hours|
    double damping = 0.85;
    double tol = 1e-9;               // L1 stopping threshold
    uint32_t max_iter = 100;
    uint32_t min_cluster_size = 5;
    double resolution = 1.0;
};

/// Correlation-weighted subnetwork of trending pages. Edge weights live on
/// undirected (min id, max id) keys; hyperlink direction is kept separately
/// for the centrality computation. degree counts retained undirected edges.
struct TrendGraph {
    std::vector<uint32_t> nodes; // ascending page ids
    std::map<std::pair<uint32_t, uint32_t>, double> edges;
    std::map<uint32_t, std::vector<std::pair<uint32_t, double>>> adjacency; // undirected
    std::map<uint32_t, std::vector<uint32_t>> out_arcs;                     // directed
    std::map<uint32_t, uint32_t> degree;

    double total_weight() const; // sum over undirected edges
};

/// Total assignment of graph nodes to dense 0-based cluster ids. Clusters
/// below the minimum size stay in the map but are flagged filtered and are
/// skipped by downstream consumers.
struct Partition {
    std::map<uint32_t, uint32_t> cluster_of;
    uint32_t n_clusters = 0;
    std::set<uint32_t> filtered;

    bool is_filtered(uint32_t cluster) const { return filtered.count(cluster) != 0; }
    std::map<uint32_t, std::vector<uint32_t>> members() const;
};

/// Pearson correlation of the two raw series restricted to the union of
/// their burst hours, clipped at 0 and quantized to 6 decimals. Returns 0
/// when the union is smaller than min_overlap_hours or either restricted
/// series is constant.
double edge_weight(const uint32_t* p_series, const uint32_t* q_series, size_t n,
                   const BurstProfile& p_burst, const BurstProfile& q_burst,
                   const GraphConfig& config);

/// Keeps the hyperlinks between trending pages whose weight reaches w_min.
/// Every trending page becomes a node, connected or not.
TrendGraph build_trend_graph(const ViewMatrix& matrix, const EdgeList& edges,
                             const std::map<uint32_t, BurstProfile>& bursts,
                             const GraphConfig& config);

/// Weighted modularity Q = sum_c [in_c/2m - (tot_c/2m)^2]. A partition
/// with every node in one community scores exactly 0; a graph with no
/// edges scores 0 by convention. Throws EmptyGraph.
double modularity(const TrendGraph& graph, const Partition& partition);

/// Two-phase greedy modularity optimization. Local moves sweep nodes in
/// ascending id order until no move gains more than 1e-12; communities are
/// then aggregated and the procedure repeats while a pass improves
/// modularity. The seed parameter is accepted for interface stability but
/// unused: sweeps are deterministic by design. Cluster ids are dense,
/// ordered by smallest member page id; clusters smaller than
/// min_cluster_size are marked filtered. pass_modularity, when given,
/// receives Q over the input graph after each pass. Throws EmptyGraph.
Partition louvain(const TrendGraph& graph, double resolution = 1.0, uint64_t seed = 0,
                  uint32_t min_cluster_size = 5,
                  std::vector<double>* pass_modularity = nullptr);

/// Re-derives the filtered flags for a different size threshold.
void mark_filtered(Partition& partition, uint32_t min_cluster_size);

/// Power iteration over the directed arcs within one cluster: damping d,
/// uniform teleport, dangling mass spread uniformly. Stops when the L1
/// change drops below tol or after max_iter rounds. Scores sum to 1.
/// Throws EmptyCluster.
std::map<uint32_t, double> pagerank(const TrendGraph& graph,
                                    const std::vector<uint32_t>& cluster,
                                    const GraphConfig& config,
                                    uint32_t* iterations = nullptr);

/// Highest-scoring page, smallest id on ties. Throws EmptyCluster.
uint32_t central_page(const std::vector<uint32_t>& cluster,
                      const std::map<uint32_t, double>& scores);

/// Everything the downstream stages need about a clustered graph.
struct GraphArtifacts {
    TrendGraph graph; // out_arcs empty when loaded from disk
    Partition partition;
    std::map<uint32_t, double> pagerank_scores; // every node
};

/// GEXF 1.2 with node attributes title/degree/cluster/pagerank and edge
/// weights; node ids are page ids.
void export_gexf(const std::filesystem::path& path, const TrendGraph& graph,
                 const Partition& partition,
                 const std::map<uint32_t, double>& pagerank_scores,
                 const PageIndex& index);

/// JSON form used for stage hand-off; load_graph_json restores everything
/// except hyperlink direction.
void export_graph_json(const std::filesystem::path& path, const TrendGraph& graph,
                       const Partition& partition,
                       const std::map<uint32_t, double>& pagerank_scores,
                       const PageIndex& index);
GraphArtifacts load_graph_json(const std::filesystem::path& path);

} // namespace wikitrends
