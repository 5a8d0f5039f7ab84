#include "clickgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "clickgraph/errors.hpp"

namespace clickgraph {

std::span<const Edge> DirectedGraph::out_edges(NodeId v) const {
    const std::size_t begin = out_offsets_[v];
    const std::size_t end = out_offsets_[v + 1];
    return {edges_.data() + begin, end - begin};
}

std::span<const InEdge> DirectedGraph::in_edges(NodeId v) const {
    const std::size_t begin = in_offsets_[v];
    const std::size_t end = in_offsets_[v + 1];
    return {in_edges_.data() + begin, end - begin};
}

std::size_t DirectedGraph::out_degree(NodeId v) const {
    return out_offsets_[v + 1] - out_offsets_[v];
}

std::size_t DirectedGraph::in_degree(NodeId v) const {
    return in_offsets_[v + 1] - in_offsets_[v];
}

bool DirectedGraph::has_edge(NodeId source, NodeId target) const {
    return edge_weight(source, target).has_value();
}

std::optional<double> DirectedGraph::edge_weight(NodeId source, NodeId target) const {
    const auto span = out_edges(source);
    const auto it = std::lower_bound(span.begin(), span.end(), target,
                                     [](const Edge& e, NodeId t) { return e.target < t; });
    if (it == span.end() || it->target != target) {
        return std::nullopt;
    }
    return it->weight;
}

std::vector<std::vector<NodeId>> DirectedGraph::undirected_neighbors() const {
    std::vector<std::vector<NodeId>> adj(node_count_);
    for (const Edge& e : edges_) {
        adj[e.source].push_back(e.target);
        adj[e.target].push_back(e.source);
    }
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return adj;
}

DirectedGraph build_graph(std::size_t node_count, std::span<const Edge> records, bool weighted) {
    std::vector<Edge> kept;
    kept.reserve(records.size());
    std::size_t loops = 0;

    for (std::size_t i = 0; i < records.size(); ++i) {
        const Edge& r = records[i];
        if (r.source >= node_count || r.target >= node_count) {
            throw StructuralError("edge record #" + std::to_string(i) + " (" +
                                  std::to_string(r.source) + " -> " + std::to_string(r.target) +
                                  "): endpoint out of range for " + std::to_string(node_count) +
                                  " nodes");
        }
        if (weighted && !(std::isfinite(r.weight) && r.weight > 0.0)) {
            throw ValidationError("edge record #" + std::to_string(i) + " (" +
                                  std::to_string(r.source) + " -> " + std::to_string(r.target) +
                                  "): weight must be positive and finite");
        }
        if (r.source == r.target) {
            ++loops;
            continue;
        }
        kept.push_back({r.source, r.target, weighted ? r.weight : 1.0});
    }

    std::sort(kept.begin(), kept.end(), [](const Edge& a, const Edge& b) {
        if (a.source != b.source) return a.source < b.source;
        return a.target < b.target;
    });

    // Merge duplicates in place: sum weights when weighted, collapse otherwise.
    std::vector<Edge> merged;
    merged.reserve(kept.size());
    for (const Edge& e : kept) {
        if (!merged.empty() && merged.back().source == e.source &&
            merged.back().target == e.target) {
            if (weighted) {
                merged.back().weight += e.weight;
            }
        } else {
            merged.push_back(e);
        }
    }

    DirectedGraph g;
    g.node_count_ = node_count;
    g.weighted_ = weighted;
    g.dropped_self_loops_ = loops;
    g.edges_ = std::move(merged);

    g.out_offsets_.assign(node_count + 1, 0);
    for (const Edge& e : g.edges_) {
        ++g.out_offsets_[e.source + 1];
    }
    for (std::size_t v = 0; v < node_count; ++v) {
        g.out_offsets_[v + 1] += g.out_offsets_[v];
    }

    g.in_offsets_.assign(node_count + 1, 0);
    for (const Edge& e : g.edges_) {
        ++g.in_offsets_[e.target + 1];
    }
    for (std::size_t v = 0; v < node_count; ++v) {
        g.in_offsets_[v + 1] += g.in_offsets_[v];
    }
    g.in_edges_.resize(g.edges_.size());
    std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    for (const Edge& e : g.edges_) { // edges sorted by source, so each in-list ends up sorted
        g.in_edges_[cursor[e.target]++] = {e.source, e.weight};
    }

    double total = 0.0;
    for (const Edge& e : g.edges_) {
        total += e.weight;
    }
    g.total_weight_ = total;
    return g;
}

DualGraph DualGraph::assemble(std::vector<WebsiteRecord> registry, DirectedGraph clickstream,
                              DirectedGraph hyperlink) {
    const std::size_t n = registry.size();
    if (clickstream.node_count() != n || hyperlink.node_count() != n) {
        throw StructuralError("dual graph: registry has " + std::to_string(n) +
                              " records but clickstream covers " +
                              std::to_string(clickstream.node_count()) + " nodes and hyperlink " +
                              std::to_string(hyperlink.node_count()));
    }
    if (!clickstream.is_weighted()) {
        throw StructuralError("dual graph: clickstream network must be weighted");
    }
    if (hyperlink.is_weighted()) {
        throw StructuralError("dual graph: hyperlink network must be unweighted");
    }
    return {std::move(registry), std::move(clickstream), std::move(hyperlink)};
}

Subgraph induced_subgraph(const DirectedGraph& graph, std::span<const NodeId> members) {
    std::vector<NodeId> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (!sorted.empty() && sorted.back() >= graph.node_count()) {
        throw StructuralError("induced subgraph: member " + std::to_string(sorted.back()) +
                              " out of range");
    }

    std::vector<std::int64_t> local(graph.node_count(), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        local[sorted[i]] = static_cast<std::int64_t>(i);
    }

    std::vector<Edge> edges;
    for (NodeId s : sorted) {
        for (const Edge& e : graph.out_edges(s)) {
            if (local[e.target] >= 0) {
                edges.push_back({static_cast<NodeId>(local[s]),
                                 static_cast<NodeId>(local[e.target]), e.weight});
            }
        }
    }
    return {build_graph(sorted.size(), edges, graph.is_weighted()), std::move(sorted)};
}

} // namespace clickgraph
