#include "clickgraph/pathway.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <unordered_map>

#include "clickgraph/errors.hpp"
#include "clickgraph/io.hpp"

namespace clickgraph {

PathwayTrace extract_popular_pathway(const DirectedGraph& graph, NodeId start,
                                     std::size_t step_count) {
    if (start >= graph.node_count()) {
        throw StructuralError("pathway start node " + std::to_string(start) + " out of range");
    }
    if (step_count < 1) {
        throw ConfigError("pathway extraction requires step_count >= 1");
    }

    PathwayTrace trace;
    trace.start = start;
    trace.nodes.push_back(start);
    std::vector<char> visited(graph.node_count(), 0);
    visited[start] = 1;

    NodeId current = start;
    for (std::size_t step = 0; step < step_count; ++step) {
        const auto out = graph.out_edges(current);
        if (out.empty()) {
            break;
        }
        // out_edges is sorted by target, so strict > keeps the smallest
        // target among equal weights.
        const Edge* best = &out[0];
        for (const Edge& e : out) {
            if (e.weight > best->weight) {
                best = &e;
            }
        }
        trace.steps.push_back(*best);
        current = best->target;
        if (visited[current]) {
            trace.cycle_detected = true;
        } else {
            visited[current] = 1;
            trace.nodes.push_back(current);
        }
    }

    // Compact the traversed edges into a subnetwork over first-visit order.
    std::unordered_map<NodeId, NodeId> local;
    for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
        local[trace.nodes[i]] = static_cast<NodeId>(i);
    }
    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<Edge> sub_edges;
    for (const Edge& e : trace.steps) {
        if (seen.emplace(e.source, e.target).second) {
            sub_edges.push_back({local.at(e.source), local.at(e.target), e.weight});
        }
    }
    trace.subnetwork = build_graph(trace.nodes.size(), sub_edges, graph.is_weighted());
    return trace;
}

std::vector<CommunityPathway> pathway_per_community(const DirectedGraph& graph,
                                                    const CommunityAssignment& assignment,
                                                    std::span<const WebsiteRecord> registry,
                                                    std::size_t step_count) {
    if (assignment.labels.size() != graph.node_count() ||
        registry.size() != graph.node_count()) {
        throw StructuralError("assignment/registry do not cover the graph");
    }

    // Highest-traffic member per community; ties go to the smaller index.
    std::vector<std::int64_t> leader(assignment.community_count, -1);
    for (std::size_t v = 0; v < assignment.labels.size(); ++v) {
        auto& best = leader[assignment.labels[v]];
        if (best < 0 || registry[v].traffic > registry[best].traffic) {
            best = static_cast<std::int64_t>(v);
        }
    }

    std::vector<CommunityPathway> result;
    result.reserve(leader.size());
    for (std::size_t c = 0; c < leader.size(); ++c) {
        CommunityPathway entry;
        entry.community = static_cast<int>(c);
        entry.trace =
            extract_popular_pathway(graph, static_cast<NodeId>(leader[c]), step_count);
        result.push_back(std::move(entry));
    }
    return result;
}

namespace {

std::vector<char> membership(const DirectedGraph& graph, std::span<const NodeId> node_set) {
    std::vector<char> in_set(graph.node_count(), 0);
    for (NodeId v : node_set) {
        if (v >= graph.node_count()) {
            throw StructuralError("moderated share: node " + std::to_string(v) + " out of range");
        }
        in_set[v] = 1;
    }
    return in_set;
}

} // namespace

ModeratedShareBreakdown moderated_share_breakdown(const DirectedGraph& graph,
                                                  std::span<const NodeId> node_set) {
    const auto in_set = membership(graph, node_set);
    const double total = graph.total_weight();
    if (!(total > 0.0)) {
        throw DomainError("moderated share undefined: total edge weight is zero");
    }
    ModeratedShareBreakdown shares;
    for (const Edge& e : graph.edges()) {
        const bool s = in_set[e.source];
        const bool t = in_set[e.target];
        if (s) shares.from_set += e.weight;
        if (t) shares.into_set += e.weight;
        if (s || t) shares.incident += e.weight;
    }
    shares.from_set /= total;
    shares.into_set /= total;
    shares.incident /= total;
    return shares;
}

double moderated_share(const DirectedGraph& graph, std::span<const NodeId> node_set) {
    return moderated_share_breakdown(graph, node_set).incident;
}

nlohmann::json trace_to_json(const PathwayTrace& trace, std::span<const WebsiteRecord> registry) {
    nlohmann::json steps = nlohmann::json::array();
    for (const Edge& e : trace.steps) {
        steps.push_back({{"source", registry[e.source].domain},
                         {"target", registry[e.target].domain},
                         {"weight", e.weight}});
    }
    nlohmann::json nodes = nlohmann::json::array();
    for (NodeId v : trace.nodes) {
        nodes.push_back(registry[v].domain);
    }
    return nlohmann::json{{"start", registry[trace.start].domain},
                          {"steps", steps},
                          {"nodes", nodes},
                          {"cycle_detected", trace.cycle_detected}};
}

void write_trace_dot(std::ostream& out, const PathwayTrace& trace,
                     std::span<const WebsiteRecord> registry) {
    out << "digraph pathway {\n";
    for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
        out << "  n" << i << " [label=\"" << registry[trace.nodes[i]].domain << "\"";
        if (trace.nodes[i] == trace.start) {
            out << ", shape=box"; // starting point
        }
        out << "];\n";
    }
    for (const Edge& e : trace.subnetwork.edges()) {
        out << "  n" << e.source << " -> n" << e.target;
        if (trace.subnetwork.is_weighted()) {
            out << " [label=\"" << format_double(e.weight) << "\"]";
        }
        out << ";\n";
    }
    out << "}\n";
}

} // namespace clickgraph
