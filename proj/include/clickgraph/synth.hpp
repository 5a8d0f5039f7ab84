#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "clickgraph/graph.hpp"

namespace clickgraph {

struct WeightLaw {
    enum class Kind { unit, uniform, lognormal };
    Kind kind = Kind::lognormal;
    // uniform: a = lo, b = hi; lognormal: a = mu, b = sigma.
    double a = 0.0;
    double b = 1.0;
};

/// Planted-partition digraph spec. `p_in` holds either a single probability
/// applied to all blocks or one probability per block. When hub_per_block is
/// set, the first node of each block gets edges to and from every block
/// member, weighted to dominate every competing edge at its block (x10).
struct PlantedPartitionSpec {
    std::vector<std::size_t> block_sizes;
    std::vector<double> p_in{0.5};
    double p_out = 0.0;
    WeightLaw weight_law;
    bool hub_per_block = false;
    std::uint64_t seed = 0;
};

struct PlantedGraph {
    DirectedGraph graph;
    std::vector<int> block_of; // ground-truth block per node
    std::vector<NodeId> hubs; // one per block when hub_per_block, else empty
};

/// Seeded generator: within-block ordered pairs become edges with probability
/// p_in[block], cross-block pairs with p_out; identical specs produce
/// identical graphs.
PlantedGraph generate_planted_digraph(const PlantedPartitionSpec& spec);

/// Uniform random unweighted digraph with expected density density_target.
DirectedGraph generate_flat_overlay(std::size_t node_count, double density_target,
                                    std::uint64_t seed);

/// One side of a synthetic dual network.
struct GraphSpec {
    enum class Type { planted_partition, flat_overlay };
    Type type = Type::flat_overlay;
    PlantedPartitionSpec planted; // when type == planted_partition
    double density = 0.01; // when type == flat_overlay
    std::size_t node_count = 0; // overlay only; 0 = take it from the other side
};

/// Full synthetic dual-network spec, read from JSON. The clickstream side is
/// built weighted, the hyperlink side unweighted, whatever the weight law.
struct DualSpec {
    std::uint64_t seed = 0;
    GraphSpec clickstream;
    GraphSpec hyperlink;
    WeightLaw traffic_law{WeightLaw::Kind::lognormal, 8.0, 1.5};
};

DualSpec parse_dual_spec(const nlohmann::json& j);

struct SynthDual {
    DualGraph dual;
    std::vector<int> block_of; // clickstream-side ground truth (empty for overlay)
    std::vector<NodeId> hubs;
};

/// Fabricates the registry (domains site<i>.test, languages lang<block>,
/// traffic from traffic_law with hubs boosted above their block) and both
/// graphs, all derived deterministically from the spec seed.
SynthDual generate_dual(const DualSpec& spec);

} // namespace clickgraph
