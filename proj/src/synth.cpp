#include "clickgraph/synth.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "clickgraph/errors.hpp"

namespace clickgraph {

namespace {

double draw_weight(const WeightLaw& law, std::mt19937_64& rng) {
    switch (law.kind) {
    case WeightLaw::Kind::unit: return 1.0;
    case WeightLaw::Kind::uniform: {
        std::uniform_real_distribution<double> dist(law.a, law.b);
        return dist(rng);
    }
    case WeightLaw::Kind::lognormal: {
        std::lognormal_distribution<double> dist(law.a, law.b);
        return dist(rng);
    }
    }
    throw ConfigError("unknown weight law");
}

void check_law(const WeightLaw& law) {
    if (law.kind == WeightLaw::Kind::uniform && !(law.a > 0.0 && law.b >= law.a)) {
        throw ConfigError("uniform weight law requires 0 < lo <= hi");
    }
    if (law.kind == WeightLaw::Kind::lognormal && !(law.b >= 0.0)) {
        throw ConfigError("lognormal weight law requires sigma >= 0");
    }
}

void check_spec(const PlantedPartitionSpec& spec) {
    if (spec.block_sizes.empty()) {
        throw ConfigError("planted partition requires at least one block");
    }
    for (std::size_t size : spec.block_sizes) {
        if (size < 1) throw ConfigError("planted partition blocks must be non-empty");
    }
    if (spec.p_in.size() != 1 && spec.p_in.size() != spec.block_sizes.size()) {
        throw ConfigError("p_in must hold one probability or one per block");
    }
    for (double p : spec.p_in) {
        if (!(p > 0.0 && p <= 1.0)) throw ConfigError("p_in must lie in (0, 1]");
    }
    if (!(spec.p_out >= 0.0 && spec.p_out < 1.0)) {
        throw ConfigError("p_out must lie in [0, 1)");
    }
    check_law(spec.weight_law);
}

} // namespace

PlantedGraph generate_planted_digraph(const PlantedPartitionSpec& spec) {
    check_spec(spec);

    std::size_t n = 0;
    std::vector<int> block_of;
    std::vector<NodeId> block_start;
    for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
        block_start.push_back(static_cast<NodeId>(n));
        n += spec.block_sizes[b];
        block_of.resize(n, static_cast<int>(b));
    }
    auto p_in_of = [&](std::size_t b) {
        return spec.p_in.size() == 1 ? spec.p_in[0] : spec.p_in[b];
    };

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    // Ordered map keeps downstream passes deterministic.
    std::map<std::pair<NodeId, NodeId>, double> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double p =
                block_of[i] == block_of[j] ? p_in_of(block_of[i]) : spec.p_out;
            if (p > 0.0 && coin(rng) < p) {
                edges[{static_cast<NodeId>(i), static_cast<NodeId>(j)}] =
                    draw_weight(spec.weight_law, rng);
            }
        }
    }

    PlantedGraph result;
    result.block_of = std::move(block_of);

    if (spec.hub_per_block) {
        for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
            result.hubs.push_back(block_start[b]);
        }
        // Per block: the dominating weight must exceed every edge incident to
        // the block that is not itself being overwritten (the hub's
        // intra-block edges). This keeps greedy strongest-edge walks inside
        // the block and pointed at the hub.
        std::vector<double> base(spec.block_sizes.size(), 0.0);
        for (const auto& [key, w] : edges) {
            const auto [s, t] = key;
            const int bs = result.block_of[s];
            const int bt = result.block_of[t];
            const bool hub_intra =
                bs == bt && (s == result.hubs[bs] || t == result.hubs[bs]);
            if (!hub_intra) {
                base[bs] = std::max(base[bs], w);
                base[bt] = std::max(base[bt], w);
            }
        }
        for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
            const NodeId hub = result.hubs[b];
            const double w = 10.0 * (base[b] > 0.0 ? base[b] : 1.0);
            for (std::size_t m = 0; m < spec.block_sizes[b]; ++m) {
                const NodeId member = block_start[b] + static_cast<NodeId>(m);
                if (member == hub) continue;
                edges[{hub, member}] = w;
                edges[{member, hub}] = w;
            }
        }
    }

    std::vector<Edge> records;
    records.reserve(edges.size());
    for (const auto& [key, w] : edges) {
        records.push_back({key.first, key.second, w});
    }
    result.graph = build_graph(n, records, spec.weight_law.kind != WeightLaw::Kind::unit);
    return result;
}

DirectedGraph generate_flat_overlay(std::size_t node_count, double density_target,
                                    std::uint64_t seed) {
    if (!(density_target > 0.0 && density_target < 1.0)) {
        throw ConfigError("flat overlay density must lie in (0, 1)");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<Edge> records;
    for (std::size_t i = 0; i < node_count; ++i) {
        for (std::size_t j = 0; j < node_count; ++j) {
            if (i != j && coin(rng) < density_target) {
                records.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0});
            }
        }
    }
    return build_graph(node_count, records, false);
}

namespace {

WeightLaw parse_weight_law(const nlohmann::json& j) {
    WeightLaw law;
    const std::string kind = j.value("kind", "lognormal");
    if (kind == "unit") {
        law.kind = WeightLaw::Kind::unit;
    } else if (kind == "uniform") {
        law.kind = WeightLaw::Kind::uniform;
        law.a = j.value("lo", 0.1);
        law.b = j.value("hi", 1.0);
    } else if (kind == "lognormal") {
        law.kind = WeightLaw::Kind::lognormal;
        law.a = j.value("mu", 0.0);
        law.b = j.value("sigma", 1.0);
    } else {
        throw ConfigError("unknown weight law kind '" + kind + "'");
    }
    return law;
}

GraphSpec parse_graph_spec(const nlohmann::json& j) {
    GraphSpec spec;
    const std::string type = j.value("type", "");
    if (type == "planted_partition") {
        spec.type = GraphSpec::Type::planted_partition;
        if (!j.contains("block_sizes")) {
            throw ConfigError("planted_partition spec requires block_sizes");
        }
        spec.planted.block_sizes = j.at("block_sizes").get<std::vector<std::size_t>>();
        if (j.contains("p_in")) {
            if (j.at("p_in").is_array()) {
                spec.planted.p_in = j.at("p_in").get<std::vector<double>>();
            } else {
                spec.planted.p_in = {j.at("p_in").get<double>()};
            }
        }
        spec.planted.p_out = j.value("p_out", 0.0);
        if (j.contains("weight_law")) {
            spec.planted.weight_law = parse_weight_law(j.at("weight_law"));
        }
        spec.planted.hub_per_block = j.value("hub_per_block", false);
    } else if (type == "flat_overlay") {
        spec.type = GraphSpec::Type::flat_overlay;
        if (!j.contains("density")) {
            throw ConfigError("flat_overlay spec requires density");
        }
        spec.density = j.at("density").get<double>();
        spec.node_count = j.value("nodes", std::size_t{0});
    } else {
        throw ConfigError("graph spec type must be planted_partition or flat_overlay");
    }
    return spec;
}

} // namespace

DualSpec parse_dual_spec(const nlohmann::json& j) {
    DualSpec spec;
    spec.seed = j.value("seed", std::uint64_t{0});
    if (!j.contains("clickstream") || !j.contains("hyperlink")) {
        throw ConfigError("dual spec requires clickstream and hyperlink sections");
    }
    spec.clickstream = parse_graph_spec(j.at("clickstream"));
    spec.hyperlink = parse_graph_spec(j.at("hyperlink"));
    if (j.contains("traffic_law")) {
        spec.traffic_law = parse_weight_law(j.at("traffic_law"));
    }
    return spec;
}

namespace {

std::size_t spec_node_count(const GraphSpec& spec, std::size_t fallback) {
    if (spec.type == GraphSpec::Type::planted_partition) {
        std::size_t n = 0;
        for (std::size_t s : spec.planted.block_sizes) n += s;
        return n;
    }
    return spec.node_count > 0 ? spec.node_count : fallback;
}

struct BuiltSide {
    DirectedGraph graph;
    std::vector<int> block_of;
    std::vector<NodeId> hubs;
};

BuiltSide build_side(const GraphSpec& spec, std::size_t node_count, std::uint64_t seed,
                     bool weighted) {
    BuiltSide side;
    if (spec.type == GraphSpec::Type::planted_partition) {
        PlantedPartitionSpec planted = spec.planted;
        planted.seed = seed;
        auto generated = generate_planted_digraph(planted);
        side.block_of = std::move(generated.block_of);
        side.hubs = std::move(generated.hubs);
        if (generated.graph.is_weighted() == weighted) {
            side.graph = std::move(generated.graph);
        } else {
            // Re-flag: force unit weights or mark unit weights as weighted.
            std::vector<Edge> records(generated.graph.edges().begin(),
                                      generated.graph.edges().end());
            side.graph = build_graph(node_count, records, weighted);
        }
    } else {
        side.graph = generate_flat_overlay(node_count, spec.density, seed);
        if (weighted) {
            std::vector<Edge> records(side.graph.edges().begin(), side.graph.edges().end());
            side.graph = build_graph(node_count, records, true);
        }
    }
    return side;
}

} // namespace

SynthDual generate_dual(const DualSpec& spec) {
    const std::size_t n_click = spec_node_count(spec.clickstream, 0);
    const std::size_t n_link = spec_node_count(spec.hyperlink, n_click);
    if (n_click == 0) {
        throw ConfigError("dual spec: clickstream side must define the node universe");
    }
    if (n_link != n_click) {
        throw ConfigError("dual spec: both sides must cover the same node count");
    }
    check_law(spec.traffic_law);

    auto click = build_side(spec.clickstream, n_click, spec.seed, true);
    auto link = build_side(spec.hyperlink, n_click, spec.seed + 1, false);

    std::vector<WebsiteRecord> registry(n_click);
    std::mt19937_64 rng(spec.seed + 2);
    for (std::size_t i = 0; i < n_click; ++i) {
        registry[i].domain = "site" + std::to_string(i) + ".test";
        registry[i].traffic = draw_weight(spec.traffic_law, rng);
        if (!click.block_of.empty()) {
            registry[i].language = "lang" + std::to_string(click.block_of[i]);
        }
    }
    // Hubs outrank every block member on traffic, so traffic-ranked pathway
    // starts land on them.
    if (!click.hubs.empty()) {
        std::vector<double> block_max(click.hubs.size(), 0.0);
        for (std::size_t i = 0; i < n_click; ++i) {
            auto& top = block_max[click.block_of[i]];
            top = std::max(top, registry[i].traffic);
        }
        for (std::size_t b = 0; b < click.hubs.size(); ++b) {
            registry[click.hubs[b]].traffic = 10.0 * block_max[b];
        }
    }

    SynthDual result{DualGraph::assemble(std::move(registry), std::move(click.graph),
                                         std::move(link.graph)),
                     std::move(click.block_of), std::move(click.hubs)};
    return result;
}

} // namespace clickgraph
