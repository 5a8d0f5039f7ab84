#include "clickgraph/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>

#include "clickgraph/errors.hpp"
#include "clickgraph/io.hpp"

namespace clickgraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-path DAG from one source: distances, path counts, predecessor
// lists, and the settled order (ascending distance).
struct ShortestPaths {
    std::vector<double> dist;
    std::vector<double> sigma;
    std::vector<std::vector<NodeId>> preds;
    std::vector<NodeId> order;
};

ShortestPaths bfs_paths(const DirectedGraph& graph, NodeId source, bool reversed) {
    const std::size_t n = graph.node_count();
    ShortestPaths sp;
    sp.dist.assign(n, kInf);
    sp.sigma.assign(n, 0.0);
    sp.preds.assign(n, {});
    sp.order.reserve(n);

    sp.dist[source] = 0.0;
    sp.sigma[source] = 1.0;
    std::vector<NodeId> queue;
    queue.reserve(n);
    queue.push_back(source);
    std::size_t head = 0;
    while (head < queue.size()) {
        const NodeId v = queue[head++];
        sp.order.push_back(v);
        auto relax = [&](NodeId w) {
            if (sp.dist[w] == kInf) {
                sp.dist[w] = sp.dist[v] + 1.0;
                queue.push_back(w);
            }
            if (sp.dist[w] == sp.dist[v] + 1.0) {
                sp.sigma[w] += sp.sigma[v];
                sp.preds[w].push_back(v);
            }
        };
        if (reversed) {
            for (const InEdge& e : graph.in_edges(v)) relax(e.source);
        } else {
            for (const Edge& e : graph.out_edges(v)) relax(e.target);
        }
    }
    return sp;
}

ShortestPaths dijkstra_paths(const DirectedGraph& graph, NodeId source, bool reversed) {
    const std::size_t n = graph.node_count();
    ShortestPaths sp;
    sp.dist.assign(n, kInf);
    sp.sigma.assign(n, 0.0);
    sp.preds.assign(n, {});
    sp.order.reserve(n);

    sp.dist[source] = 0.0;
    sp.sigma[source] = 1.0;
    using Entry = std::pair<double, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.push({0.0, source});
    std::vector<char> settled(n, 0);
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (settled[v]) continue;
        settled[v] = 1;
        sp.order.push_back(v);
        auto relax = [&](NodeId w, double weight) {
            const double len = 1.0 / weight; // heavier edge = shorter distance
            const double cand = sp.dist[v] + len;
            if (cand < sp.dist[w]) {
                sp.dist[w] = cand;
                sp.sigma[w] = sp.sigma[v];
                sp.preds[w].assign(1, v);
                heap.push({cand, w});
            } else if (cand == sp.dist[w]) {
                sp.sigma[w] += sp.sigma[v];
                sp.preds[w].push_back(v);
            }
        };
        if (reversed) {
            for (const InEdge& e : graph.in_edges(v)) relax(e.source, e.weight);
        } else {
            for (const Edge& e : graph.out_edges(v)) relax(e.target, e.weight);
        }
    }
    return sp;
}

ShortestPaths single_source(const DirectedGraph& graph, NodeId source, DistanceScheme scheme,
                            bool reversed) {
    return scheme == DistanceScheme::hops ? bfs_paths(graph, source, reversed)
                                          : dijkstra_paths(graph, source, reversed);
}

} // namespace

std::vector<DegreeCount> degree_centrality(const DirectedGraph& graph) {
    std::vector<DegreeCount> degrees(graph.node_count());
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        degrees[v].in = graph.in_degree(static_cast<NodeId>(v));
        degrees[v].out = graph.out_degree(static_cast<NodeId>(v));
        degrees[v].total = degrees[v].in + degrees[v].out;
    }
    return degrees;
}

std::vector<double> betweenness_centrality(const DirectedGraph& graph, DistanceScheme scheme) {
    const std::size_t n = graph.node_count();
    std::vector<double> bc(n, 0.0);
    std::vector<double> delta(n);
    for (std::size_t s = 0; s < n; ++s) {
        const auto sp = single_source(graph, static_cast<NodeId>(s), scheme, false);
        std::fill(delta.begin(), delta.end(), 0.0);
        // Dependency accumulation in reverse settled order.
        for (auto it = sp.order.rbegin(); it != sp.order.rend(); ++it) {
            const NodeId w = *it;
            for (NodeId v : sp.preds[w]) {
                delta[v] += sp.sigma[v] / sp.sigma[w] * (1.0 + delta[w]);
            }
            if (w != s) {
                bc[w] += delta[w];
            }
        }
    }
    return bc;
}

std::vector<double> closeness_centrality(const DirectedGraph& graph, ClosenessMode mode,
                                         ClosenessVariant variant, DistanceScheme scheme) {
    const std::size_t n = graph.node_count();
    std::vector<double> scores(n, 0.0);
    if (n < 2) {
        return scores;
    }
    const bool reversed = mode == ClosenessMode::in;
    for (std::size_t v = 0; v < n; ++v) {
        const auto sp = single_source(graph, static_cast<NodeId>(v), scheme, reversed);
        if (variant == ClosenessVariant::classic) {
            double sum = 0.0;
            std::size_t reachable = 0;
            for (std::size_t t = 0; t < n; ++t) {
                if (t != v && sp.dist[t] != kInf) {
                    sum += sp.dist[t];
                    ++reachable;
                }
            }
            if (reachable > 0 && sum > 0.0) {
                const double r = static_cast<double>(reachable);
                scores[v] = (r / sum) * (r / static_cast<double>(n - 1));
            }
        } else {
            double sum = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                if (t != v && sp.dist[t] != kInf && sp.dist[t] > 0.0) {
                    sum += 1.0 / sp.dist[t];
                }
            }
            scores[v] = sum / static_cast<double>(n - 1);
        }
    }
    return scores;
}

namespace {

// Sorts community members by (score desc, traffic desc, node id asc).
std::vector<RankedNode> ranked(const std::vector<NodeId>& to_global,
                               const std::vector<double>& scores,
                               std::span<const WebsiteRecord> registry) {
    std::vector<RankedNode> list;
    list.reserve(to_global.size());
    for (std::size_t i = 0; i < to_global.size(); ++i) {
        list.push_back({to_global[i], scores[i]});
    }
    std::sort(list.begin(), list.end(), [&](const RankedNode& a, const RankedNode& b) {
        if (a.score != b.score) return a.score > b.score;
        if (registry[a.node].traffic != registry[b.node].traffic) {
            return registry[a.node].traffic > registry[b.node].traffic;
        }
        return a.node < b.node;
    });
    return list;
}

std::vector<RankedNode> truncated(std::vector<RankedNode> list, std::size_t k) {
    if (list.size() > k) list.resize(k);
    return list;
}

} // namespace

std::vector<CommunityTopNodes> top_nodes_per_community(const DirectedGraph& graph,
                                                       const CommunityAssignment& assignment,
                                                       std::span<const WebsiteRecord> registry,
                                                       std::size_t k,
                                                       const CentralityOptions& options) {
    if (k < 1) {
        throw ConfigError("top nodes per community requires k >= 1");
    }
    if (assignment.labels.size() != graph.node_count() ||
        registry.size() != graph.node_count()) {
        throw StructuralError("assignment/registry do not cover the graph");
    }

    std::vector<std::vector<NodeId>> members(assignment.community_count);
    for (std::size_t v = 0; v < assignment.labels.size(); ++v) {
        members[assignment.labels[v]].push_back(static_cast<NodeId>(v));
    }

    std::vector<CommunityTopNodes> result;
    result.reserve(members.size());
    for (std::size_t c = 0; c < members.size(); ++c) {
        const auto sub = induced_subgraph(graph, members[c]);
        const auto degrees = degree_centrality(sub.graph);
        std::vector<double> degree_scores(degrees.size());
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            degree_scores[i] = static_cast<double>(degrees[i].total);
        }
        const auto bc = betweenness_centrality(sub.graph, options.distance);
        const auto cc = closeness_centrality(sub.graph, options.closeness_mode,
                                             options.closeness_variant, options.distance);

        CommunityTopNodes top;
        top.community = static_cast<int>(c);
        auto by_degree = ranked(sub.to_global, degree_scores, registry);
        auto by_betweenness = ranked(sub.to_global, bc, registry);
        auto by_closeness = ranked(sub.to_global, cc, registry);
        if (!by_degree.empty() && by_degree.front().node == by_betweenness.front().node &&
            by_degree.front().node == by_closeness.front().node) {
            top.triple_top = by_degree.front().node;
        }
        top.by_degree = truncated(std::move(by_degree), k);
        top.by_betweenness = truncated(std::move(by_betweenness), k);
        top.by_closeness = truncated(std::move(by_closeness), k);
        result.push_back(std::move(top));
    }
    return result;
}

void write_centrality_csv(std::ostream& out, const DirectedGraph& graph,
                          const CommunityAssignment& assignment,
                          std::span<const WebsiteRecord> registry,
                          const CentralityOptions& options) {
    if (assignment.labels.size() != graph.node_count() ||
        registry.size() != graph.node_count()) {
        throw StructuralError("assignment/registry do not cover the graph");
    }
    std::vector<std::vector<NodeId>> members(assignment.community_count);
    for (std::size_t v = 0; v < assignment.labels.size(); ++v) {
        members[assignment.labels[v]].push_back(static_cast<NodeId>(v));
    }

    struct Row {
        std::size_t in = 0;
        std::size_t out = 0;
        double betweenness = 0.0;
        double closeness = 0.0;
    };
    std::vector<Row> rows(graph.node_count());
    for (const auto& group : members) {
        const auto sub = induced_subgraph(graph, group);
        const auto degrees = degree_centrality(sub.graph);
        const auto bc = betweenness_centrality(sub.graph, options.distance);
        const auto cc = closeness_centrality(sub.graph, options.closeness_mode,
                                             options.closeness_variant, options.distance);
        for (std::size_t i = 0; i < sub.to_global.size(); ++i) {
            rows[sub.to_global[i]] = {degrees[i].in, degrees[i].out, bc[i], cc[i]};
        }
    }

    out << "domain,community,in_degree,out_degree,betweenness,closeness\n";
    for (std::size_t v = 0; v < graph.node_count(); ++v) {
        out << registry[v].domain << ',' << assignment.labels[v] << ',' << rows[v].in << ','
            << rows[v].out << ',' << format_double(rows[v].betweenness) << ','
            << format_double(rows[v].closeness) << '\n';
    }
}

} // namespace clickgraph
