#include "clickgraph/mismatch.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "clickgraph/errors.hpp"

namespace clickgraph {

void to_json(nlohmann::json& j, const MismatchReport& report) {
    j = nlohmann::json{{"overlap_count", report.overlap_count},
                       {"hyperlink_count", report.hyperlink_count},
                       {"clickstream_count", report.clickstream_count},
                       {"jaccard", report.jaccard},
                       {"flow_coverage", report.flow_coverage}};
}

namespace {

void check_registry(const DualGraph& dual) {
    const std::size_t n = dual.registry.size();
    if (dual.clickstream.node_count() != n || dual.hyperlink.node_count() != n) {
        throw StructuralError("mismatch analysis requires both graphs to share the registry");
    }
}

// Sorted unordered-pair set of a digraph's edges.
std::vector<std::pair<NodeId, NodeId>> undirected_pairs(const DirectedGraph& g) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        pairs.emplace_back(std::min(e.source, e.target), std::max(e.source, e.target));
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

bool covered(const DualGraph& dual, const Edge& e, bool direction_sensitive) {
    if (dual.hyperlink.has_edge(e.source, e.target)) return true;
    return !direction_sensitive && dual.hyperlink.has_edge(e.target, e.source);
}

} // namespace

MismatchReport edge_overlap(const DualGraph& dual, bool direction_sensitive) {
    check_registry(dual);
    MismatchReport report;
    report.hyperlink_count = dual.hyperlink.edge_count();
    report.clickstream_count = dual.clickstream.edge_count();

    std::size_t overlap = 0;
    std::size_t set_h = report.hyperlink_count;
    std::size_t set_c = report.clickstream_count;
    if (direction_sensitive) {
        for (const Edge& e : dual.clickstream.edges()) {
            if (dual.hyperlink.has_edge(e.source, e.target)) {
                ++overlap;
            }
        }
    } else {
        const auto h = undirected_pairs(dual.hyperlink);
        const auto c = undirected_pairs(dual.clickstream);
        set_h = h.size();
        set_c = c.size();
        std::vector<std::pair<NodeId, NodeId>> shared;
        std::set_intersection(h.begin(), h.end(), c.begin(), c.end(), std::back_inserter(shared));
        overlap = shared.size();
    }
    report.overlap_count = overlap;

    const std::size_t uni = set_h + set_c - overlap;
    report.jaccard = uni == 0 ? 0.0 : static_cast<double>(overlap) / static_cast<double>(uni);
    if (dual.clickstream.total_weight() > 0.0) {
        report.flow_coverage = flow_coverage(dual, direction_sensitive);
    }
    return report;
}

double flow_coverage(const DualGraph& dual, bool direction_sensitive) {
    check_registry(dual);
    const double total = dual.clickstream.total_weight();
    if (!(total > 0.0)) {
        throw DomainError("flow coverage undefined: clickstream total weight is zero");
    }
    double carried = 0.0;
    for (const Edge& e : dual.clickstream.edges()) {
        if (covered(dual, e, direction_sensitive)) {
            carried += e.weight;
        }
    }
    return carried / total;
}

} // namespace clickgraph
