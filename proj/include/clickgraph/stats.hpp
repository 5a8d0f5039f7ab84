#pragma once

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "clickgraph/graph.hpp"

namespace clickgraph {

/// Convention for nodes whose undirected degree is below 2 when averaging
/// local transitivity: leave them out of the mean, or count them as zero.
enum class LocalTransitivityMode { exclude_low_degree, count_zero };

struct NetworkSummary {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t weak_components = 0;
    double global_transitivity = 0.0;
    double avg_local_transitivity = 0.0;
    double density = 0.0;
    double average_path_length = 0.0;
};

void to_json(nlohmann::json& j, const NetworkSummary& summary);

/// E / (N * (N - 1)); requires N >= 2.
double density(const DirectedGraph& graph);

struct ComponentLabels {
    std::size_t count = 0;
    std::vector<std::size_t> label; // per node, 0..count-1
};

/// Connected components of the undirected projection; isolated nodes count.
ComponentLabels weak_components(const DirectedGraph& graph);

/// 3 * triangles / connected triples on the undirected simple projection.
/// Returns 0 when no connected triple exists. Requires N >= 3.
double global_transitivity(const DirectedGraph& graph);

/// Mean per-node clustering coefficient on the undirected projection.
double avg_local_transitivity(const DirectedGraph& graph,
                              LocalTransitivityMode mode = LocalTransitivityMode::exclude_low_degree);

/// Mean directed hop-count distance over all reachable ordered pairs (s,t),
/// s != t. Unreachable pairs are excluded; no reachable pair raises DomainError.
double average_path_length(const DirectedGraph& graph);

/// All Table-style structural statistics in one pass. Requires N >= 3.
NetworkSummary summarize(const DirectedGraph& graph,
                         LocalTransitivityMode mode = LocalTransitivityMode::exclude_low_degree);

} // namespace clickgraph
