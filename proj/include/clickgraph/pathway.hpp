#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "clickgraph/community.hpp"
#include "clickgraph/graph.hpp"

namespace clickgraph {

/// Greedy strongest-outbound-edge walk. `nodes` lists distinct visited nodes
/// in first-visit order; `subnetwork` is the digraph they induce under the
/// traversed edges (local indices follow `nodes`). Revisits are allowed and
/// flagged through cycle_detected.
struct PathwayTrace {
    NodeId start = 0;
    std::vector<Edge> steps; // parent-graph indices, in traversal order
    std::vector<NodeId> nodes;
    DirectedGraph subnetwork;
    bool cycle_detected = false;
};

/// From `start`, repeatedly follow the maximum-weight outbound edge (ties to
/// the smaller target index), stopping after step_count edges or at a node
/// with no outbound edge.
PathwayTrace extract_popular_pathway(const DirectedGraph& graph, NodeId start,
                                     std::size_t step_count);

struct CommunityPathway {
    int community = 0;
    PathwayTrace trace;
};

/// One trace per community, starting at its highest-traffic member (ties to
/// the smaller index) and walking the full graph, so excursions into other
/// communities stay observable.
std::vector<CommunityPathway> pathway_per_community(const DirectedGraph& graph,
                                                    const CommunityAssignment& assignment,
                                                    std::span<const WebsiteRecord> registry,
                                                    std::size_t step_count);

/// Fraction of total edge weight on edges with source or target in node_set
/// (edges internal to the set count once). Requires positive total weight.
double moderated_share(const DirectedGraph& graph, std::span<const NodeId> node_set);

struct ModeratedShareBreakdown {
    double incident = 0.0; // source or target in the set
    double from_set = 0.0; // source in the set
    double into_set = 0.0; // target in the set
};

ModeratedShareBreakdown moderated_share_breakdown(const DirectedGraph& graph,
                                                  std::span<const NodeId> node_set);

nlohmann::json trace_to_json(const PathwayTrace& trace, std::span<const WebsiteRecord> registry);

/// DOT rendering of the trace's subnetwork.
void write_trace_dot(std::ostream& out, const PathwayTrace& trace,
                     std::span<const WebsiteRecord> registry);

} // namespace clickgraph
