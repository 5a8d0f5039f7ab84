#pragma once

#include <cstddef>

#include <nlohmann/json.hpp>

#include "clickgraph/graph.hpp"

namespace clickgraph {

/// How far apart the two networks are: how many directed edges they share and
/// how much clickstream mass rides on edges that also exist as hyperlinks.
struct MismatchReport {
    std::size_t overlap_count = 0;
    std::size_t hyperlink_count = 0;
    std::size_t clickstream_count = 0;
    double jaccard = 0.0;
    double flow_coverage = 0.0;
};

void to_json(nlohmann::json& j, const MismatchReport& report);

/// Counts shared edges and the Jaccard index of the two edge sets. Overlap is
/// direction-sensitive by default; with direction_sensitive=false both graphs
/// are projected to unordered pairs first. flow_coverage is filled in as well
/// whenever the clickstream graph carries positive weight, 0 otherwise.
MismatchReport edge_overlap(const DualGraph& dual, bool direction_sensitive = true);

/// Fraction of total clickstream weight on edges that also exist in the
/// hyperlink graph. Raises DomainError when the clickstream has zero weight.
double flow_coverage(const DualGraph& dual, bool direction_sensitive = true);

} // namespace clickgraph
