#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "clickgraph/community.hpp"
#include "clickgraph/graph.hpp"

namespace clickgraph {

/// Path lengths for betweenness/closeness: hop counts, or inverse edge weights
/// so that heavier clickstreams read as shorter distances.
enum class DistanceScheme { hops, inverse_weight };

enum class ClosenessVariant { classic, harmonic };

/// Direction of the distances: `out` measures d(v, t), `in` measures d(t, v).
enum class ClosenessMode { out, in };

struct DegreeCount {
    std::size_t in = 0;
    std::size_t out = 0;
    std::size_t total = 0;
};

std::vector<DegreeCount> degree_centrality(const DirectedGraph& graph);

/// Directed betweenness: for every ordered pair (s,t) with s != t, each other
/// node v accumulates the fraction of shortest s-t paths passing through it.
/// Unreachable pairs contribute nothing.
std::vector<double> betweenness_centrality(const DirectedGraph& graph,
                                           DistanceScheme scheme = DistanceScheme::hops);

/// classic: reachable-restricted Freeman closeness, (r/S) * (r/(N-1)) where r
/// counts reachable targets and S sums their distances; nodes reaching nothing
/// score 0. harmonic: sum of 1/d over all targets, divided by N-1.
std::vector<double> closeness_centrality(const DirectedGraph& graph,
                                         ClosenessMode mode = ClosenessMode::out,
                                         ClosenessVariant variant = ClosenessVariant::classic,
                                         DistanceScheme scheme = DistanceScheme::hops);

struct CentralityOptions {
    DistanceScheme distance = DistanceScheme::hops;
    ClosenessVariant closeness_variant = ClosenessVariant::classic;
    ClosenessMode closeness_mode = ClosenessMode::out;
};

struct RankedNode {
    NodeId node = 0; // parent-graph index
    double score = 0.0;
};

/// Per-community centrality rankings, computed on the community's induced
/// sub-digraph. `triple_top` is set when one node ranks first on degree,
/// betweenness, and closeness simultaneously (ties broken by higher traffic,
/// then smaller node index).
struct CommunityTopNodes {
    int community = 0;
    std::vector<RankedNode> by_degree;
    std::vector<RankedNode> by_betweenness;
    std::vector<RankedNode> by_closeness;
    std::optional<NodeId> triple_top;
};

std::vector<CommunityTopNodes> top_nodes_per_community(const DirectedGraph& graph,
                                                       const CommunityAssignment& assignment,
                                                       std::span<const WebsiteRecord> registry,
                                                       std::size_t k,
                                                       const CentralityOptions& options = {});

/// One row per node: domain,community,in_degree,out_degree,betweenness,closeness
/// with the scores taken from each node's community sub-digraph.
void write_centrality_csv(std::ostream& out, const DirectedGraph& graph,
                          const CommunityAssignment& assignment,
                          std::span<const WebsiteRecord> registry,
                          const CentralityOptions& options = {});

} // namespace clickgraph
