#include "clickgraph/community.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_map>

#include "clickgraph/errors.hpp"
#include "clickgraph/stats.hpp"

namespace clickgraph {

namespace {

struct VoteEdge {
    NodeId neighbor;
    double weight;
};

// Vote adjacency: per-direction strength is the edge weight (or 1 for
// unweighted votes). On the undirected projection mutual pairs sum both
// directions; in_only/out_only keep a single direction of influence.
std::vector<std::vector<VoteEdge>> vote_adjacency(const DirectedGraph& graph,
                                                  bool weighted_votes,
                                                  NeighborhoodMode neighborhood) {
    std::vector<std::vector<VoteEdge>> adj(graph.node_count());
    for (const Edge& e : graph.edges()) {
        const double w = weighted_votes ? e.weight : 1.0;
        if (neighborhood != NeighborhoodMode::in_only) {
            adj[e.source].push_back({e.target, w});
        }
        if (neighborhood != NeighborhoodMode::out_only) {
            adj[e.target].push_back({e.source, w});
        }
    }
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end(),
                  [](const VoteEdge& a, const VoteEdge& b) { return a.neighbor < b.neighbor; });
        std::size_t out = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (out > 0 && nbrs[out - 1].neighbor == nbrs[i].neighbor) {
                nbrs[out - 1].weight += nbrs[i].weight;
            } else {
                nbrs[out++] = nbrs[i];
            }
        }
        nbrs.resize(out);
    }
    return adj;
}

// Vote totals per label, in ascending label order for deterministic float sums.
std::map<int, double> tally_votes(const std::vector<VoteEdge>& neighborhood,
                                  std::span<const int> labels) {
    std::map<int, double> votes;
    for (const VoteEdge& v : neighborhood) {
        votes[labels[v.neighbor]] += v.weight;
    }
    return votes;
}

bool label_is_maximal(const std::map<int, double>& votes, int label) {
    double best = 0.0;
    bool first = true;
    for (const auto& [lab, total] : votes) {
        if (first || total > best) {
            best = total;
            first = false;
        }
    }
    const auto it = votes.find(label);
    return it != votes.end() && it->second == best;
}

bool stable(const std::vector<std::vector<VoteEdge>>& adj, std::span<const int> labels) {
    for (std::size_t v = 0; v < adj.size(); ++v) {
        if (adj[v].empty()) continue; // isolated nodes are vacuously stable
        const auto votes = tally_votes(adj[v], labels);
        if (!label_is_maximal(votes, labels[v])) {
            return false;
        }
    }
    return true;
}

// Relabels communities to 0..k-1 ordered by descending size, ties by the
// smallest member index.
void canonicalize(std::vector<int>& labels, std::size_t& community_count) {
    struct Group {
        std::size_t size = 0;
        std::size_t min_node = 0;
    };
    std::unordered_map<int, Group> groups;
    for (std::size_t v = 0; v < labels.size(); ++v) {
        auto [it, inserted] = groups.try_emplace(labels[v], Group{0, v});
        ++it->second.size;
        if (inserted) it->second.min_node = v;
    }
    std::vector<std::pair<int, Group>> ordered(groups.begin(), groups.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second.size != b.second.size) return a.second.size > b.second.size;
        return a.second.min_node < b.second.min_node;
    });
    std::unordered_map<int, int> remap;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        remap[ordered[i].first] = static_cast<int>(i);
    }
    for (int& label : labels) {
        label = remap[label];
    }
    community_count = ordered.size();
}

} // namespace

CommunityAssignment label_propagation(const DirectedGraph& graph,
                                      const LabelPropagationOptions& options) {
    const std::size_t n = graph.node_count();
    if (n < 1) {
        throw DomainError("label propagation requires at least one node");
    }
    if (options.max_iterations < 1) {
        throw ConfigError("label propagation requires max_iterations >= 1");
    }

    const auto adj = vote_adjacency(graph, options.weighted_votes, options.neighborhood);
    std::vector<int> labels(n);
    std::iota(labels.begin(), labels.end(), 0);

    std::mt19937_64 rng(options.seed);
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);

    CommunityAssignment result;
    result.seed = options.seed;
    for (std::size_t sweep = 1; sweep <= options.max_iterations; ++sweep) {
        std::shuffle(order.begin(), order.end(), rng);
        for (NodeId v : order) {
            if (adj[v].empty()) continue;
            const auto votes = tally_votes(adj[v], labels);
            double best = 0.0;
            bool first = true;
            for (const auto& [lab, total] : votes) {
                if (first || total > best) {
                    best = total;
                    first = false;
                }
            }
            // Collect the tied most-popular labels (ascending label order).
            std::vector<int> top;
            for (const auto& [lab, total] : votes) {
                if (total == best) top.push_back(lab);
            }
            if (top.size() == 1) {
                labels[v] = top.front();
            } else {
                std::uniform_int_distribution<std::size_t> pick(0, top.size() - 1);
                labels[v] = top[pick(rng)];
            }
        }
        result.iterations = sweep;
        if (stable(adj, labels)) {
            result.converged = true;
            break;
        }
    }

    result.labels = std::move(labels);
    canonicalize(result.labels, result.community_count);
    return result;
}

bool is_stable_assignment(const DirectedGraph& graph, std::span<const int> labels,
                          bool weighted_votes, NeighborhoodMode neighborhood) {
    if (labels.size() != graph.node_count()) {
        throw StructuralError("assignment does not cover the graph's nodes");
    }
    return stable(vote_adjacency(graph, weighted_votes, neighborhood), labels);
}

void to_json(nlohmann::json& j, const CommunityRow& row) {
    j = nlohmann::json{{"community", row.community},
                       {"nodes", row.node_count},
                       {"edges", row.edge_count},
                       {"density", row.density ? nlohmann::json(*row.density) : nlohmann::json()},
                       {"average_path_length", row.average_path_length
                                                   ? nlohmann::json(*row.average_path_length)
                                                   : nlohmann::json()},
                       {"total_clickstream", row.total_clickstream}};
}

std::vector<CommunityRow> community_summary(const DirectedGraph& graph,
                                            const CommunityAssignment& assignment) {
    if (assignment.labels.size() != graph.node_count()) {
        throw StructuralError("assignment does not cover the graph's nodes");
    }
    std::vector<std::vector<NodeId>> members(assignment.community_count);
    for (std::size_t v = 0; v < assignment.labels.size(); ++v) {
        members[assignment.labels[v]].push_back(static_cast<NodeId>(v));
    }

    std::vector<CommunityRow> rows;
    rows.reserve(members.size());
    for (std::size_t c = 0; c < members.size(); ++c) {
        const auto sub = induced_subgraph(graph, members[c]);
        CommunityRow row;
        row.community = static_cast<int>(c);
        row.node_count = sub.graph.node_count();
        row.edge_count = sub.graph.edge_count();
        row.total_clickstream = sub.graph.total_weight();
        if (row.node_count >= 2) {
            row.density = density(sub.graph);
            try {
                row.average_path_length = average_path_length(sub.graph);
            } catch (const DomainError&) {
                // no reachable intra-community pair; leave absent
            }
        }
        rows.push_back(row);
    }
    return rows;
}

double label_purity(const CommunityAssignment& assignment,
                    std::span<const WebsiteRecord> registry) {
    if (assignment.labels.size() != registry.size()) {
        throw StructuralError("assignment does not cover the registry");
    }
    std::vector<std::map<std::string, std::size_t>> tag_counts(assignment.community_count);
    std::size_t tagged = 0;
    for (std::size_t v = 0; v < registry.size(); ++v) {
        if (registry[v].language) {
            ++tag_counts[assignment.labels[v]][*registry[v].language];
            ++tagged;
        }
    }
    if (tagged == 0) {
        throw DomainError("label purity undefined: no node carries a language tag");
    }

    std::size_t matching = 0;
    for (const auto& counts : tag_counts) {
        if (counts.empty()) continue;
        // std::map iterates languages in lexicographic order, so keeping the
        // first strict maximum implements the tie rule.
        std::size_t best = 0;
        for (const auto& [language, count] : counts) {
            if (count > best) {
                best = count;
            }
        }
        for (const auto& [language, count] : counts) {
            if (count == best) {
                matching += count;
                break;
            }
        }
    }
    return static_cast<double>(matching) / static_cast<double>(tagged);
}

void write_assignment_csv(std::ostream& out, const CommunityAssignment& assignment,
                          std::span<const WebsiteRecord> registry) {
    if (assignment.labels.size() != registry.size()) {
        throw StructuralError("assignment does not cover the registry");
    }
    out << "domain,community,language\n";
    for (std::size_t v = 0; v < registry.size(); ++v) {
        out << registry[v].domain << ',' << assignment.labels[v] << ','
            << (registry[v].language ? *registry[v].language : "") << '\n';
    }
}

} // namespace clickgraph
