#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clickgraph/graph.hpp"

namespace clickgraph {

struct EdgeListSchema {
    char delimiter = ',';
    bool has_header = true;
    std::optional<std::size_t> weight_column; // set for weighted edge lists
};

/// Parses node metadata CSV: domain,traffic,language[,category].
/// Domains are lowercased; duplicates raise ValidationError listing them all;
/// malformed or negative traffic raises ParseError with the line number.
std::vector<WebsiteRecord> parse_node_metadata(std::istream& text, const EdgeListSchema& schema);

/// One unresolved endpoint of a skipped edge line.
struct EdgeSkip {
    std::size_t line = 0;
    std::string domain;
};

struct EdgeListResult {
    std::vector<Edge> edges;
    std::vector<EdgeSkip> skips; // one entry per unknown endpoint occurrence
    std::size_t skipped_edges = 0;
};

/// Parses an edge CSV (source_domain,target_domain[,weight]) against a
/// registry. Edges touching unknown domains are skipped and reported, not
/// fatal. A weighted schema applied to rows lacking the weight column raises
/// ConfigError.
EdgeListResult parse_edge_list(std::istream& text, const EdgeListSchema& schema,
                               std::span<const WebsiteRecord> registry);

/// How the per-endpoint top-K filters combine when both are active. `either`
/// keeps an edge reported by either endpoint's list, `both` requires both.
enum class CensorMode { either, both };

/// Emulates a data provider that reports only each node's k_out strongest
/// outbound and k_in strongest inbound edges (ties broken by the smaller
/// counterpart index). An absent k disables that side's filter; with both
/// absent the graph is returned unchanged.
DirectedGraph apply_topk_censoring(const DirectedGraph& graph,
                                   std::optional<std::size_t> k_out,
                                   std::optional<std::size_t> k_in,
                                   CensorMode mode = CensorMode::either);

enum class ExportFormat { edge_csv, graphml, dot };

/// Parses "edge-csv" | "graphml" | "dot"; anything else raises ConfigError.
ExportFormat parse_export_format(const std::string& name);

/// Writes the graph deterministically (edges sorted by source,target; weights
/// at full round-trip precision). GraphML and DOT carry traffic/language as
/// node attributes.
void export_graph(std::ostream& out, const DirectedGraph& graph,
                  std::span<const WebsiteRecord> registry, ExportFormat format);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

} // namespace clickgraph
