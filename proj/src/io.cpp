#include "clickgraph/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "clickgraph/errors.hpp"

namespace clickgraph {

namespace {

std::string lowercased(std::string s) {
    for (char& c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
}

std::string trimmed(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string::npos) {
            fields.push_back(trimmed(line.substr(start)));
            break;
        }
        fields.push_back(trimmed(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

double parse_double_field(const std::string& field, std::size_t line_no, const char* what) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed " + what + " value '" +
                         field + "'");
    }
    return value;
}

void check_schema(const EdgeListSchema& schema) {
    if (!std::isprint(static_cast<unsigned char>(schema.delimiter))) {
        throw ConfigError("schema delimiter must be a single printable character");
    }
}

// Reads logical lines, dropping trailing CR and skipping empty lines.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line, std::size_t& line_no) {
        while (std::getline(in_, line)) {
            ++count_;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line.empty()) continue;
            line_no = count_;
            return true;
        }
        return false;
    }

private:
    std::istream& in_;
    std::size_t count_ = 0;
};

std::string xml_escaped(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string dot_escaped(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::vector<WebsiteRecord> parse_node_metadata(std::istream& text, const EdgeListSchema& schema) {
    check_schema(schema);
    std::vector<WebsiteRecord> records;
    std::unordered_map<std::string, std::size_t> seen;
    std::vector<std::string> duplicates;

    LineReader reader(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = schema.has_header;
    while (reader.next(line, line_no)) {
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto fields = split_fields(line, schema.delimiter);
        if (fields.size() < 2) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected at least domain and traffic fields");
        }
        WebsiteRecord rec;
        rec.domain = lowercased(fields[0]);
        if (rec.domain.empty()) {
            throw ParseError("line " + std::to_string(line_no) + ": empty domain");
        }
        rec.traffic = parse_double_field(fields[1], line_no, "traffic");
        if (rec.traffic < 0.0) {
            throw ParseError("line " + std::to_string(line_no) + ": traffic must be >= 0, got " +
                             fields[1]);
        }
        if (fields.size() > 2 && !fields[2].empty()) {
            rec.language = fields[2];
        }
        if (fields.size() > 3 && !fields[3].empty()) {
            rec.category = fields[3];
        }
        if (auto [it, inserted] = seen.emplace(rec.domain, records.size()); !inserted) {
            duplicates.push_back(rec.domain);
        }
        records.push_back(std::move(rec));
    }

    if (!duplicates.empty()) {
        std::sort(duplicates.begin(), duplicates.end());
        duplicates.erase(std::unique(duplicates.begin(), duplicates.end()), duplicates.end());
        std::string msg = "duplicate domains:";
        for (const auto& d : duplicates) {
            msg += " " + d;
        }
        throw ValidationError(msg);
    }
    return records;
}

EdgeListResult parse_edge_list(std::istream& text, const EdgeListSchema& schema,
                               std::span<const WebsiteRecord> registry) {
    check_schema(schema);
    if (registry.empty()) {
        throw ValidationError("edge list parse requires a non-empty registry");
    }
    std::unordered_map<std::string, NodeId> index;
    index.reserve(registry.size());
    for (std::size_t i = 0; i < registry.size(); ++i) {
        index.emplace(registry[i].domain, static_cast<NodeId>(i));
    }

    EdgeListResult result;
    LineReader reader(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = schema.has_header;
    while (reader.next(line, line_no)) {
        if (header_pending) {
            header_pending = false;
            continue;
        }
        const auto fields = split_fields(line, schema.delimiter);
        if (fields.size() < 2) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected source and target domains");
        }
        double weight = 1.0;
        if (schema.weight_column) {
            if (*schema.weight_column >= fields.size()) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": weight column " + std::to_string(*schema.weight_column) +
                                  " missing from row with " + std::to_string(fields.size()) +
                                  " fields");
            }
            weight = parse_double_field(fields[*schema.weight_column], line_no, "weight");
            if (weight <= 0.0) {
                throw ValidationError("line " + std::to_string(line_no) +
                                      ": edge weight must be positive, got " +
                                      fields[*schema.weight_column]);
            }
        }

        const std::string source = lowercased(fields[0]);
        const std::string target = lowercased(fields[1]);
        const auto s_it = index.find(source);
        const auto t_it = index.find(target);
        if (s_it == index.end() || t_it == index.end()) {
            if (s_it == index.end()) result.skips.push_back({line_no, source});
            if (t_it == index.end()) result.skips.push_back({line_no, target});
            ++result.skipped_edges;
            continue;
        }
        result.edges.push_back({s_it->second, t_it->second, weight});
    }
    return result;
}

DirectedGraph apply_topk_censoring(const DirectedGraph& graph, std::optional<std::size_t> k_out,
                                   std::optional<std::size_t> k_in, CensorMode mode) {
    if ((k_out && *k_out < 1) || (k_in && *k_in < 1)) {
        throw ConfigError("top-k censoring requires k >= 1");
    }
    if (!k_out && !k_in) {
        return graph; // identity
    }

    const auto edges = graph.edges();
    std::vector<char> out_keep(edges.size(), 0);
    std::vector<char> in_keep(edges.size(), 0);

    // Edges are stored sorted by source, so each node's out-list is a
    // contiguous index range.
    if (k_out) {
        std::size_t begin = 0;
        while (begin < edges.size()) {
            std::size_t end = begin;
            while (end < edges.size() && edges[end].source == edges[begin].source) ++end;
            std::vector<std::size_t> order;
            order.reserve(end - begin);
            for (std::size_t i = begin; i < end; ++i) order.push_back(i);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (edges[a].weight != edges[b].weight) return edges[a].weight > edges[b].weight;
                return edges[a].target < edges[b].target;
            });
            for (std::size_t i = 0; i < order.size() && i < *k_out; ++i) {
                out_keep[order[i]] = 1;
            }
            begin = end;
        }
    }
    if (k_in) {
        std::vector<std::vector<std::size_t>> by_target(graph.node_count());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            by_target[edges[i].target].push_back(i);
        }
        for (auto& order : by_target) {
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (edges[a].weight != edges[b].weight) return edges[a].weight > edges[b].weight;
                return edges[a].source < edges[b].source;
            });
            for (std::size_t i = 0; i < order.size() && i < *k_in; ++i) {
                in_keep[order[i]] = 1;
            }
        }
    }

    std::vector<Edge> surviving;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        bool keep = false;
        if (k_out && k_in) {
            keep = mode == CensorMode::either ? (out_keep[i] || in_keep[i])
                                              : (out_keep[i] && in_keep[i]);
        } else if (k_out) {
            keep = out_keep[i];
        } else {
            keep = in_keep[i];
        }
        if (keep) {
            surviving.push_back(edges[i]);
        }
    }
    return build_graph(graph.node_count(), surviving, graph.is_weighted());
}

ExportFormat parse_export_format(const std::string& name) {
    if (name == "edge-csv") return ExportFormat::edge_csv;
    if (name == "graphml") return ExportFormat::graphml;
    if (name == "dot") return ExportFormat::dot;
    throw ConfigError("unknown export format '" + name + "' (expected edge-csv, graphml, or dot)");
}

namespace {

void export_edge_csv(std::ostream& out, const DirectedGraph& graph,
                     std::span<const WebsiteRecord> registry) {
    if (graph.is_weighted()) {
        out << "source_domain,target_domain,weight\n";
        for (const Edge& e : graph.edges()) {
            out << registry[e.source].domain << ',' << registry[e.target].domain << ','
                << format_double(e.weight) << '\n';
        }
    } else {
        out << "source_domain,target_domain\n";
        for (const Edge& e : graph.edges()) {
            out << registry[e.source].domain << ',' << registry[e.target].domain << '\n';
        }
    }
}

void export_graphml(std::ostream& out, const DirectedGraph& graph,
                    std::span<const WebsiteRecord> registry) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d0\" for=\"node\" attr.name=\"domain\" attr.type=\"string\"/>\n"
        << "  <key id=\"d1\" for=\"node\" attr.name=\"traffic\" attr.type=\"double\"/>\n"
        << "  <key id=\"d2\" for=\"node\" attr.name=\"language\" attr.type=\"string\"/>\n"
        << "  <key id=\"d3\" for=\"node\" attr.name=\"category\" attr.type=\"string\"/>\n"
        << "  <key id=\"d4\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
        << "  <graph id=\"G\" edgedefault=\"directed\">\n";
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        const auto& rec = registry[i];
        out << "    <node id=\"n" << i << "\">"
            << "<data key=\"d0\">" << xml_escaped(rec.domain) << "</data>"
            << "<data key=\"d1\">" << format_double(rec.traffic) << "</data>";
        if (rec.language) {
            out << "<data key=\"d2\">" << xml_escaped(*rec.language) << "</data>";
        }
        if (rec.category) {
            out << "<data key=\"d3\">" << xml_escaped(*rec.category) << "</data>";
        }
        out << "</node>\n";
    }
    for (const Edge& e : graph.edges()) {
        out << "    <edge source=\"n" << e.source << "\" target=\"n" << e.target << "\">";
        if (graph.is_weighted()) {
            out << "<data key=\"d4\">" << format_double(e.weight) << "</data>";
        }
        out << "</edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
}

void export_dot(std::ostream& out, const DirectedGraph& graph,
                std::span<const WebsiteRecord> registry) {
    out << "digraph G {\n";
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        const auto& rec = registry[i];
        out << "  n" << i << " [label=\"" << dot_escaped(rec.domain) << "\", traffic="
            << format_double(rec.traffic);
        if (rec.language) {
            out << ", language=\"" << dot_escaped(*rec.language) << "\"";
        }
        out << "];\n";
    }
    for (const Edge& e : graph.edges()) {
        out << "  n" << e.source << " -> n" << e.target;
        if (graph.is_weighted()) {
            out << " [weight=" << format_double(e.weight) << ", label=\""
                << format_double(e.weight) << "\"]";
        }
        out << ";\n";
    }
    out << "}\n";
}

} // namespace

void export_graph(std::ostream& out, const DirectedGraph& graph,
                  std::span<const WebsiteRecord> registry, ExportFormat format) {
    if (registry.size() != graph.node_count()) {
        throw StructuralError("export: registry size " + std::to_string(registry.size()) +
                              " does not match node count " +
                              std::to_string(graph.node_count()));
    }
    switch (format) {
    case ExportFormat::edge_csv: export_edge_csv(out, graph, registry); break;
    case ExportFormat::graphml: export_graphml(out, graph, registry); break;
    case ExportFormat::dot: export_dot(out, graph, registry); break;
    }
}

} // namespace clickgraph
