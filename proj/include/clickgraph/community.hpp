#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "clickgraph/graph.hpp"

namespace clickgraph {

/// Which neighbors vote on a node's label: the undirected projection (mutual
/// pairs sum both directions), only in-neighbors (the sites users arrive
/// from), or only out-neighbors.
enum class NeighborhoodMode { both, in_only, out_only };

struct LabelPropagationOptions {
    std::uint64_t seed = 0;
    /// Vote with edge weights (clickstream graphs) or plain counts (hyperlink
    /// graphs).
    bool weighted_votes = true;
    std::size_t max_iterations = 100;
    NeighborhoodMode neighborhood = NeighborhoodMode::both;
};

struct CommunityAssignment {
    std::vector<int> labels; // per node, canonicalized 0..k-1 by descending size
    std::size_t community_count = 0;
    std::size_t iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
};

/// Label propagation: every node starts with a unique label, then in seeded
/// random order each node adopts the most popular label among its undirected
/// neighbors (ties broken by seeded random choice) until no node can improve,
/// or max_iterations sweeps have run.
CommunityAssignment label_propagation(const DirectedGraph& graph,
                                      const LabelPropagationOptions& options = {});

/// Post-hoc convergence certificate: every node's label attains the maximal
/// vote total in its neighborhood. Checkable without rerunning.
bool is_stable_assignment(const DirectedGraph& graph, std::span<const int> labels,
                          bool weighted_votes,
                          NeighborhoodMode neighborhood = NeighborhoodMode::both);

/// One Table-style row per community. density and average_path_length are
/// absent for communities where they are undefined (fewer than 2 nodes, or no
/// reachable intra-community pair).
struct CommunityRow {
    int community = 0;
    std::size_t node_count = 0;
    std::size_t edge_count = 0; // intra-community only
    std::optional<double> density;
    std::optional<double> average_path_length;
    double total_clickstream = 0.0; // sum of intra-community edge weights
};

void to_json(nlohmann::json& j, const CommunityRow& row);

std::vector<CommunityRow> community_summary(const DirectedGraph& graph,
                                            const CommunityAssignment& assignment);

/// Fraction of language-tagged nodes whose tag equals their community's
/// majority language (ties resolved to the lexicographically first tag).
/// Untagged nodes are excluded; no tagged node at all raises DomainError.
double label_purity(const CommunityAssignment& assignment,
                    std::span<const WebsiteRecord> registry);

/// CSV export: domain,community,language.
void write_assignment_csv(std::ostream& out, const CommunityAssignment& assignment,
                          std::span<const WebsiteRecord> registry);

} // namespace clickgraph
