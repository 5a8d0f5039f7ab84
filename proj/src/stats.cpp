#include "clickgraph/stats.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>

#include "clickgraph/errors.hpp"

namespace clickgraph {

void to_json(nlohmann::json& j, const NetworkSummary& summary) {
    j = nlohmann::json{{"nodes", summary.nodes},
                       {"edges", summary.edges},
                       {"weak_components", summary.weak_components},
                       {"global_transitivity", summary.global_transitivity},
                       {"avg_local_transitivity", summary.avg_local_transitivity},
                       {"density", summary.density},
                       {"average_path_length", summary.average_path_length}};
}

double density(const DirectedGraph& graph) {
    const double n = static_cast<double>(graph.node_count());
    if (graph.node_count() < 2) {
        throw DomainError("density undefined for fewer than 2 nodes");
    }
    return static_cast<double>(graph.edge_count()) / (n * (n - 1.0));
}

ComponentLabels weak_components(const DirectedGraph& graph) {
    const std::size_t n = graph.node_count();
    const auto adj = graph.undirected_neighbors();
    ComponentLabels result;
    result.label.assign(n, 0);
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack;
    for (std::size_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        const std::size_t comp = result.count++;
        stack.push_back(static_cast<NodeId>(root));
        seen[root] = 1;
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            result.label[v] = comp;
            for (NodeId u : adj[v]) {
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
    }
    return result;
}

namespace {

// Counts, for every node, the closed and total neighbor pairs on the
// undirected projection. Shared by both transitivity flavors.
struct TriadCounts {
    std::vector<std::uint64_t> closed; // per node
    std::vector<std::uint64_t> pairs; // per node, d*(d-1)/2
};

TriadCounts count_triads(const DirectedGraph& graph) {
    const auto adj = graph.undirected_neighbors();
    const std::size_t n = graph.node_count();
    TriadCounts counts;
    counts.closed.assign(n, 0);
    counts.pairs.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& nbrs = adj[v];
        const std::uint64_t d = nbrs.size();
        counts.pairs[v] = d * (d - 1) / 2;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                const auto& list = adj[nbrs[i]];
                if (std::binary_search(list.begin(), list.end(), nbrs[j])) {
                    ++counts.closed[v];
                }
            }
        }
    }
    return counts;
}

} // namespace

double global_transitivity(const DirectedGraph& graph) {
    if (graph.node_count() < 3) {
        throw DomainError("global transitivity undefined for fewer than 3 nodes");
    }
    const auto counts = count_triads(graph);
    std::uint64_t closed = 0;
    std::uint64_t pairs = 0;
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        closed += counts.closed[v];
        pairs += counts.pairs[v];
    }
    if (pairs == 0) {
        return 0.0;
    }
    return static_cast<double>(closed) / static_cast<double>(pairs);
}

double avg_local_transitivity(const DirectedGraph& graph, LocalTransitivityMode mode) {
    const auto counts = count_triads(graph);
    double sum = 0.0;
    std::size_t considered = 0;
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        if (counts.pairs[v] == 0) {
            if (mode == LocalTransitivityMode::count_zero) {
                ++considered;
            }
            continue;
        }
        sum += static_cast<double>(counts.closed[v]) / static_cast<double>(counts.pairs[v]);
        ++considered;
    }
    if (considered == 0) {
        return 0.0;
    }
    return sum / static_cast<double>(considered);
}

double average_path_length(const DirectedGraph& graph) {
    const std::size_t n = graph.node_count();
    std::uint64_t total = 0;
    std::uint64_t pairs = 0;
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> queue(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::size_t head = 0;
        std::size_t tail = 0;
        queue[tail++] = static_cast<NodeId>(s);
        while (head < tail) {
            const NodeId v = queue[head++];
            for (const Edge& e : graph.out_edges(v)) {
                if (dist[e.target] < 0) {
                    dist[e.target] = dist[v] + 1;
                    queue[tail++] = e.target;
                }
            }
        }
        for (std::size_t t = 0; t < n; ++t) {
            if (t != s && dist[t] > 0) {
                total += static_cast<std::uint64_t>(dist[t]);
                ++pairs;
            }
        }
    }
    if (pairs == 0) {
        throw DomainError("average path length undefined: no reachable ordered pair");
    }
    return static_cast<double>(total) / static_cast<double>(pairs);
}

NetworkSummary summarize(const DirectedGraph& graph, LocalTransitivityMode mode) {
    if (graph.node_count() < 3) {
        throw DomainError("network summary requires at least 3 nodes");
    }
    NetworkSummary s;
    s.nodes = graph.node_count();
    s.edges = graph.edge_count();
    s.weak_components = weak_components(graph).count;
    s.global_transitivity = global_transitivity(graph);
    s.avg_local_transitivity = avg_local_transitivity(graph, mode);
    s.density = density(graph);
    s.average_path_length = average_path_length(graph);
    return s;
}

} // namespace clickgraph
