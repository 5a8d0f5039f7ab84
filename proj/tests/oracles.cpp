#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracles {

std::vector<std::vector<double>> floyd_warshall(const DirectedGraph& graph) {
    const std::size_t n = graph.node_count();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, kUnreachable));
    for (std::size_t v = 0; v < n; ++v) {
        dist[v][v] = 0.0;
    }
    for (const Edge& e : graph.edges()) {
        dist[e.source][e.target] = 1.0;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (dist[i][k] == kUnreachable) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (dist[k][j] == kUnreachable) continue;
                const double through = dist[i][k] + dist[k][j];
                if (dist[i][j] == kUnreachable || through < dist[i][j]) {
                    dist[i][j] = through;
                }
            }
        }
    }
    return dist;
}

double average_path_length(const std::vector<std::vector<double>>& dist) {
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        for (std::size_t j = 0; j < dist.size(); ++j) {
            if (i != j && dist[i][j] != kUnreachable) {
                total += dist[i][j];
                ++pairs;
            }
        }
    }
    return total / static_cast<double>(pairs);
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<char>> undirected_matrix(const DirectedGraph& graph) {
    const std::size_t n = graph.node_count();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const Edge& e : graph.edges()) {
        adj[e.source][e.target] = 1;
        adj[e.target][e.source] = 1;
    }
    return adj;
}

} // namespace

std::size_t union_find_components(const DirectedGraph& graph) {
    UnionFind uf(graph.node_count());
    for (const Edge& e : graph.edges()) {
        uf.unite(e.source, e.target);
    }
    std::size_t count = 0;
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        if (uf.find(v) == v) ++count;
    }
    return count;
}

Transitivity transitivity(const DirectedGraph& graph) {
    const auto adj = undirected_matrix(graph);
    const std::size_t n = graph.node_count();

    Transitivity result;
    std::uint64_t closed_total = 0;
    std::uint64_t triples_total = 0;
    double local_sum = 0.0;
    std::size_t qualifying = 0;
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> nbrs;
        for (std::size_t u = 0; u < n; ++u) {
            if (adj[v][u]) nbrs.push_back(u);
        }
        const std::uint64_t d = nbrs.size();
        const std::uint64_t pairs = d * (d - 1) / 2;
        std::uint64_t closed = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                if (adj[nbrs[i]][nbrs[j]]) ++closed;
            }
        }
        closed_total += closed;
        triples_total += pairs;
        if (pairs > 0) {
            local_sum += static_cast<double>(closed) / static_cast<double>(pairs);
            ++qualifying;
        }
    }
    result.global = triples_total == 0
                        ? 0.0
                        : static_cast<double>(closed_total) / static_cast<double>(triples_total);
    result.avg_local_excluding =
        qualifying == 0 ? 0.0 : local_sum / static_cast<double>(qualifying);
    result.avg_local_zero = n == 0 ? 0.0 : local_sum / static_cast<double>(n);
    return result;
}

namespace {

// Walks every shortest path from `current` toward `target` following the
// distance matrix, counting interior visits per node.
void enumerate_paths(const DirectedGraph& graph, const std::vector<std::vector<double>>& dist,
                     NodeId current, NodeId target, std::vector<NodeId>& path,
                     std::vector<std::uint64_t>& interior_visits, std::uint64_t& path_count) {
    if (current == target) {
        ++path_count;
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            ++interior_visits[path[i]];
        }
        return;
    }
    for (const Edge& e : graph.out_edges(current)) {
        if (dist[current][target] != kUnreachable && dist[e.target][target] != kUnreachable &&
            dist[e.target][target] + 1.0 == dist[current][target]) {
            path.push_back(e.target);
            enumerate_paths(graph, dist, e.target, target, path, interior_visits, path_count);
            path.pop_back();
        }
    }
}

} // namespace

std::vector<double> betweenness_by_enumeration(const DirectedGraph& graph) {
    const std::size_t n = graph.node_count();
    const auto dist = floyd_warshall(graph);
    std::vector<double> bc(n, 0.0);
    std::vector<std::uint64_t> interior(n);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            if (s == t || dist[s][t] == kUnreachable) continue;
            std::fill(interior.begin(), interior.end(), 0);
            std::uint64_t paths = 0;
            std::vector<NodeId> path{static_cast<NodeId>(s)};
            enumerate_paths(graph, dist, static_cast<NodeId>(s), static_cast<NodeId>(t), path,
                            interior, paths);
            for (std::size_t v = 0; v < n; ++v) {
                if (interior[v] > 0) {
                    bc[v] += static_cast<double>(interior[v]) / static_cast<double>(paths);
                }
            }
        }
    }
    return bc;
}

namespace {

std::vector<std::vector<double>> oriented_distances(const DirectedGraph& graph, bool out_mode) {
    auto dist = floyd_warshall(graph);
    if (out_mode) return dist;
    std::vector<std::vector<double>> transposed(dist.size(),
                                                std::vector<double>(dist.size()));
    for (std::size_t i = 0; i < dist.size(); ++i) {
        for (std::size_t j = 0; j < dist.size(); ++j) {
            transposed[i][j] = dist[j][i];
        }
    }
    return transposed;
}

} // namespace

std::vector<double> closeness_classic(const DirectedGraph& graph, bool out_mode) {
    const auto dist = oriented_distances(graph, out_mode);
    const std::size_t n = graph.node_count();
    std::vector<double> scores(n, 0.0);
    if (n < 2) return scores;
    for (std::size_t v = 0; v < n; ++v) {
        double sum = 0.0;
        double reachable = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            if (t != v && dist[v][t] != kUnreachable) {
                sum += dist[v][t];
                reachable += 1.0;
            }
        }
        if (reachable > 0.0 && sum > 0.0) {
            scores[v] = (reachable / sum) * (reachable / static_cast<double>(n - 1));
        }
    }
    return scores;
}

std::vector<double> closeness_harmonic(const DirectedGraph& graph, bool out_mode) {
    const auto dist = oriented_distances(graph, out_mode);
    const std::size_t n = graph.node_count();
    std::vector<double> scores(n, 0.0);
    if (n < 2) return scores;
    for (std::size_t v = 0; v < n; ++v) {
        double sum = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            if (t != v && dist[v][t] != kUnreachable && dist[v][t] > 0.0) {
                sum += 1.0 / dist[v][t];
            }
        }
        scores[v] = sum / static_cast<double>(n - 1);
    }
    return scores;
}

std::vector<Edge> censor_topk(const DirectedGraph& graph, std::optional<std::size_t> k_out,
                              std::optional<std::size_t> k_in, bool require_both) {
    const auto all = graph.edges();
    auto ranked_subset = [&](bool by_source, std::size_t k) {
        std::vector<char> keep(all.size(), 0);
        for (std::size_t v = 0; v < graph.node_count(); ++v) {
            std::vector<std::size_t> mine;
            for (std::size_t i = 0; i < all.size(); ++i) {
                const NodeId end = by_source ? all[i].source : all[i].target;
                if (end == v) mine.push_back(i);
            }
            std::sort(mine.begin(), mine.end(), [&](std::size_t a, std::size_t b) {
                if (all[a].weight != all[b].weight) return all[a].weight > all[b].weight;
                const NodeId ca = by_source ? all[a].target : all[a].source;
                const NodeId cb = by_source ? all[b].target : all[b].source;
                return ca < cb;
            });
            for (std::size_t i = 0; i < mine.size() && i < k; ++i) {
                keep[mine[i]] = 1;
            }
        }
        return keep;
    };

    std::vector<char> out_keep(all.size(), 1), in_keep(all.size(), 1);
    if (k_out) out_keep = ranked_subset(true, *k_out);
    if (k_in) in_keep = ranked_subset(false, *k_in);

    std::vector<Edge> survivors;
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool keep;
        if (k_out && k_in) {
            keep = require_both ? (out_keep[i] && in_keep[i]) : (out_keep[i] || in_keep[i]);
        } else if (k_out) {
            keep = out_keep[i];
        } else if (k_in) {
            keep = in_keep[i];
        } else {
            keep = true;
        }
        if (keep) survivors.push_back(all[i]);
    }
    return survivors;
}

std::optional<Edge> strongest_out_edge(const DirectedGraph& graph, NodeId from) {
    std::optional<Edge> best;
    for (const Edge& e : graph.edges()) {
        if (e.source != from) continue;
        if (!best || e.weight > best->weight ||
            (e.weight == best->weight && e.target < best->target)) {
            best = e;
        }
    }
    return best;
}

DirectedGraph random_digraph(std::mt19937_64& rng, std::size_t nodes, double edge_prob,
                             bool weighted) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.1, 10.0);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < nodes; ++i) {
        for (std::size_t j = 0; j < nodes; ++j) {
            if (i != j && coin(rng) < edge_prob) {
                edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j),
                                 weighted ? weight(rng) : 1.0});
            }
        }
    }
    return clickgraph::build_graph(nodes, edges, weighted);
}

} // namespace oracles
