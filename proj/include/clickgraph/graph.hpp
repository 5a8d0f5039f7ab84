#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace clickgraph {

/// Dense node index, shared between the two graphs of a DualGraph.
using NodeId = std::uint32_t;

struct Edge {
    NodeId source = 0;
    NodeId target = 0;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// In-adjacency entry for some node v: the edge (source -> v).
struct InEdge {
    NodeId source = 0;
    double weight = 1.0;
};

/// Node metadata. `language` holds an externally supplied tag ("zh", "en", ...).
struct WebsiteRecord {
    std::string domain; // lowercased hostname, unique within a registry
    double traffic = 0.0; // daily unique visitors, >= 0
    std::optional<std::string> language;
    std::optional<std::string> category;
};

/// Immutable simple digraph with both out- and in-adjacency in CSR layout.
///
/// Construction normalizes the edge list: self-loops are dropped (and counted),
/// duplicate (source,target) records merge by weight summation when weighted or
/// collapse to a single edge when not, and unweighted graphs store weight 1 on
/// every edge. Edges are kept sorted by (source, target).
class DirectedGraph {
public:
    DirectedGraph() = default;

    std::size_t node_count() const { return node_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    bool is_weighted() const { return weighted_; }
    std::size_t dropped_self_loops() const { return dropped_self_loops_; }

    /// All edges, sorted by (source, target).
    std::span<const Edge> edges() const { return edges_; }

    /// Out-edges of v, sorted by target.
    std::span<const Edge> out_edges(NodeId v) const;
    /// In-edges of v, sorted by source.
    std::span<const InEdge> in_edges(NodeId v) const;

    std::size_t out_degree(NodeId v) const;
    std::size_t in_degree(NodeId v) const;

    bool has_edge(NodeId source, NodeId target) const;
    std::optional<double> edge_weight(NodeId source, NodeId target) const;

    /// Sum of all edge weights (equals edge_count for unweighted graphs).
    double total_weight() const { return total_weight_; }

    /// Per-node sorted unique neighbor lists of the undirected projection.
    std::vector<std::vector<NodeId>> undirected_neighbors() const;

private:
    friend DirectedGraph build_graph(std::size_t, std::span<const Edge>, bool);

    std::size_t node_count_ = 0;
    bool weighted_ = false;
    std::size_t dropped_self_loops_ = 0;
    double total_weight_ = 0.0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> out_offsets_; // size node_count+1
    std::vector<InEdge> in_edges_; // grouped by target
    std::vector<std::size_t> in_offsets_; // size node_count+1
};

/// Builds a graph from raw edge records.
///
/// Throws StructuralError when a record references an endpoint >= node_count
/// (the message names the record) and ValidationError when a weighted record
/// carries a non-positive or non-finite weight.
DirectedGraph build_graph(std::size_t node_count, std::span<const Edge> records, bool weighted);

/// The two networks of the measurement: a weighted clickstream graph and an
/// unweighted hyperlink graph over one shared node registry.
struct DualGraph {
    std::vector<WebsiteRecord> registry;
    DirectedGraph clickstream;
    DirectedGraph hyperlink;

    /// Validates that both graphs cover exactly the registry's node range and
    /// carry the expected weighted/unweighted flags.
    static DualGraph assemble(std::vector<WebsiteRecord> registry,
                              DirectedGraph clickstream,
                              DirectedGraph hyperlink);
};

/// A sub-digraph over a node subset, with local indices 0..m-1 mapping back to
/// the parent graph through `to_global` (sorted ascending).
struct Subgraph {
    DirectedGraph graph;
    std::vector<NodeId> to_global;
};

Subgraph induced_subgraph(const DirectedGraph& graph, std::span<const NodeId> members);

} // namespace clickgraph
