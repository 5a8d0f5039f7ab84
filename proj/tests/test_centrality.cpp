#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "clickgraph/centrality.hpp"
#include "clickgraph/errors.hpp"
#include "clickgraph/synth.hpp"
#include "oracles.hpp"

using namespace clickgraph;

namespace {

DirectedGraph complete_digraph(std::size_t n) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0});
        }
    }
    return build_graph(n, edges, false);
}

std::vector<WebsiteRecord> flat_registry(std::size_t n, double traffic = 1.0) {
    std::vector<WebsiteRecord> registry(n);
    for (std::size_t i = 0; i < n; ++i) {
        registry[i].domain = "site" + std::to_string(i) + ".test";
        registry[i].traffic = traffic;
    }
    return registry;
}

CommunityAssignment whole_graph_assignment(std::size_t n) {
    CommunityAssignment assignment;
    assignment.labels.assign(n, 0);
    assignment.community_count = 1;
    return assignment;
}

} // namespace

TEST_SUITE("centrality") {

TEST_CASE("degree counts on small fixtures") {
    std::vector<Edge> cycle{{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}};
    const auto degrees = degree_centrality(build_graph(3, cycle, false));
    for (const auto& d : degrees) {
        CHECK(d.in == 1);
        CHECK(d.out == 1);
        CHECK(d.total == 2);
    }

    std::vector<Edge> star{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}};
    const auto star_degrees = degree_centrality(build_graph(5, star, false));
    CHECK(star_degrees[0].in == 0);
    CHECK(star_degrees[0].out == 4);
    CHECK(star_degrees[0].total == 4);
}

TEST_CASE("degree matches an edge-scan recount") {
    std::mt19937_64 rng(61);
    const auto g = oracles::random_digraph(rng, 40, 0.1, true);
    const auto degrees = degree_centrality(g);
    std::vector<std::size_t> in(g.node_count(), 0), out(g.node_count(), 0);
    for (const Edge& e : g.edges()) {
        ++out[e.source];
        ++in[e.target];
    }
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        CHECK(degrees[v].in == in[v]);
        CHECK(degrees[v].out == out[v]);
    }
}

TEST_CASE("betweenness of the middle of a directed path is 1") {
    const std::vector<Edge> path{{0, 1, 1.0}, {1, 2, 1.0}};
    const auto bc = betweenness_centrality(build_graph(3, path, false));
    CHECK(bc[0] == 0.0);
    CHECK(bc[1] == 1.0);
    CHECK(bc[2] == 0.0);
}

TEST_CASE("betweenness vanishes on a complete digraph") {
    const auto bc = betweenness_centrality(complete_digraph(5));
    for (double b : bc) {
        CHECK(b == 0.0);
    }
}

TEST_CASE("betweenness matches explicit path enumeration on small digraphs") {
    std::mt19937_64 rng(62);
    std::uniform_int_distribution<std::size_t> size(2, 5);
    std::uniform_real_distribution<double> prob(0.2, 0.8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = oracles::random_digraph(rng, size(rng), prob(rng), false);
        const auto fast = betweenness_centrality(g);
        const auto slow = oracles::betweenness_by_enumeration(g);
        for (std::size_t v = 0; v < g.node_count(); ++v) {
            CHECK(fast[v] == doctest::Approx(slow[v]).epsilon(1e-9));
        }
    }
}

TEST_CASE("betweenness total equals the interior-node mass of all pairs") {
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = oracles::random_digraph(rng, 25, 0.12, false);
        const auto bc = betweenness_centrality(g);
        const auto dist = oracles::floyd_warshall(g);
        double expected = 0.0;
        for (std::size_t s = 0; s < g.node_count(); ++s) {
            for (std::size_t t = 0; t < g.node_count(); ++t) {
                if (s != t && dist[s][t] != oracles::kUnreachable) {
                    expected += dist[s][t] - 1.0;
                }
            }
        }
        const double total = std::accumulate(bc.begin(), bc.end(), 0.0);
        CHECK(total == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("closeness of a complete digraph is 1 and isolated nodes score 0") {
    const auto cc = closeness_centrality(complete_digraph(4));
    for (double c : cc) {
        CHECK(c == 1.0);
    }
    const auto lonely = closeness_centrality(build_graph(3, std::vector<Edge>{{0, 1, 1.0}},
                                                         false));
    CHECK(lonely[2] == 0.0);
}

TEST_CASE("closeness matches the all-pairs distance oracle") {
    std::mt19937_64 rng(64);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = oracles::random_digraph(rng, 30, 0.08, false);
        for (const bool out_mode : {true, false}) {
            const auto mode = out_mode ? ClosenessMode::out : ClosenessMode::in;
            const auto classic = closeness_centrality(g, mode, ClosenessVariant::classic);
            const auto classic_oracle = oracles::closeness_classic(g, out_mode);
            const auto harmonic = closeness_centrality(g, mode, ClosenessVariant::harmonic);
            const auto harmonic_oracle = oracles::closeness_harmonic(g, out_mode);
            for (std::size_t v = 0; v < g.node_count(); ++v) {
                CHECK(classic[v] == doctest::Approx(classic_oracle[v]).epsilon(1e-12));
                CHECK(harmonic[v] == doctest::Approx(harmonic_oracle[v]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("harmonic closeness never decreases when an edge is added") {
    std::mt19937_64 rng(65);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = oracles::random_digraph(rng, 15, 0.1, false);
        std::uniform_int_distribution<NodeId> node(0, 14);
        const NodeId s = node(rng), t = node(rng);
        if (s == t || g.has_edge(s, t)) continue;
        std::vector<Edge> edges(g.edges().begin(), g.edges().end());
        edges.push_back({s, t, 1.0});
        const auto h = build_graph(15, edges, false);
        const auto before = closeness_centrality(g, ClosenessMode::out,
                                                 ClosenessVariant::harmonic);
        const auto after = closeness_centrality(h, ClosenessMode::out,
                                                ClosenessVariant::harmonic);
        for (std::size_t v = 0; v < 15; ++v) {
            CHECK(after[v] >= before[v] - 1e-12);
        }
    }
}

TEST_CASE("centralities are invariant under node relabeling") {
    std::mt19937_64 rng(66);
    const auto g = oracles::random_digraph(rng, 20, 0.15, false);
    std::vector<NodeId> perm(g.node_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        edges.push_back({perm[e.source], perm[e.target], e.weight});
    }
    const auto h = build_graph(g.node_count(), edges, false);
    const auto bc_g = betweenness_centrality(g);
    const auto bc_h = betweenness_centrality(h);
    const auto cc_g = closeness_centrality(g);
    const auto cc_h = closeness_centrality(h);
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        CHECK(bc_h[perm[v]] == doctest::Approx(bc_g[v]).epsilon(1e-9));
        CHECK(cc_h[perm[v]] == doctest::Approx(cc_g[v]).epsilon(1e-12));
    }
}

TEST_CASE("inverse-weight distances reroute shortest paths") {
    // 0->2 direct carries little weight; 0->1->2 carries heavy clickstreams,
    // so with inverse-weight distances the two-hop route is shorter and node 1
    // becomes an intermediary.
    const std::vector<Edge> edges{{0, 2, 1.0}, {0, 1, 10.0}, {1, 2, 10.0}};
    const auto g = build_graph(3, edges, true);
    const auto hop_bc = betweenness_centrality(g, DistanceScheme::hops);
    CHECK(hop_bc[1] == 0.0);
    const auto weighted_bc = betweenness_centrality(g, DistanceScheme::inverse_weight);
    CHECK(weighted_bc[1] == 1.0);
}

TEST_CASE("a mutual star's hub ranks first on all three measures") {
    std::vector<Edge> edges;
    for (NodeId spoke = 1; spoke <= 4; ++spoke) {
        edges.push_back({0, spoke, 1.0});
        edges.push_back({spoke, 0, 1.0});
    }
    const auto g = build_graph(5, edges, false);
    const auto registry = flat_registry(5);
    const auto tops =
        top_nodes_per_community(g, whole_graph_assignment(5), registry, 3);
    REQUIRE(tops.size() == 1);
    REQUIRE(tops[0].triple_top.has_value());
    CHECK(*tops[0].triple_top == 0);
    CHECK(tops[0].by_degree.front().node == 0);
    CHECK(tops[0].by_degree.size() == 3);
}

TEST_CASE("a directed cycle's tie is decided by traffic") {
    std::vector<Edge> cycle{{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}};
    const auto g = build_graph(3, cycle, false);
    auto registry = flat_registry(3);
    registry[1].traffic = 99.0;
    const auto tops =
        top_nodes_per_community(g, whole_graph_assignment(3), registry, 2);
    REQUIRE(tops.size() == 1);
    REQUIRE(tops[0].triple_top.has_value());
    CHECK(*tops[0].triple_top == 1);
}

TEST_CASE("planted hubs are the triple-top of their blocks") {
    PlantedPartitionSpec spec;
    spec.block_sizes = {12, 18, 25};
    spec.p_in = {0.3};
    spec.p_out = 0.02;
    spec.hub_per_block = true;
    spec.seed = 9;
    const auto planted = generate_planted_digraph(spec);

    CommunityAssignment assignment;
    assignment.labels.assign(planted.graph.node_count(), 0);
    // Canonical labels: blocks ordered by descending size.
    std::vector<std::size_t> order{2, 1, 0};
    for (std::size_t v = 0; v < planted.graph.node_count(); ++v) {
        assignment.labels[v] = static_cast<int>(
            std::find(order.begin(), order.end(),
                      static_cast<std::size_t>(planted.block_of[v])) -
            order.begin());
    }
    assignment.community_count = 3;

    const auto registry = flat_registry(planted.graph.node_count());
    const auto tops = top_nodes_per_community(planted.graph, assignment, registry, 1);
    REQUIRE(tops.size() == 3);
    std::set<NodeId> hubs(planted.hubs.begin(), planted.hubs.end());
    for (const auto& top : tops) {
        REQUIRE(top.triple_top.has_value());
        CHECK(hubs.count(*top.triple_top) == 1);
    }
}

TEST_CASE("triple tops are invariant to positive weight rescaling") {
    std::mt19937_64 rng(67);
    const auto g = oracles::random_digraph(rng, 24, 0.2, true);
    auto registry = flat_registry(24);
    std::uniform_real_distribution<double> traffic(1.0, 100.0);
    for (auto& rec : registry) rec.traffic = traffic(rng);

    std::vector<Edge> scaled;
    for (const Edge& e : g.edges()) {
        scaled.push_back({e.source, e.target, e.weight * 3.7});
    }
    const auto h = build_graph(24, scaled, true);
    const auto assignment = whole_graph_assignment(24);
    const auto tops_g = top_nodes_per_community(g, assignment, registry, 4);
    const auto tops_h = top_nodes_per_community(h, assignment, registry, 4);
    REQUIRE(tops_g.size() == tops_h.size());
    CHECK(tops_g[0].triple_top == tops_h[0].triple_top);
    for (std::size_t i = 0; i < tops_g[0].by_degree.size(); ++i) {
        CHECK(tops_g[0].by_degree[i].node == tops_h[0].by_degree[i].node);
    }
}

TEST_CASE("centrality csv has the documented header and row count") {
    const auto g = complete_digraph(3);
    const auto registry = flat_registry(3);
    std::ostringstream out;
    write_centrality_csv(out, g, whole_graph_assignment(3), registry);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "domain,community,in_degree,out_degree,betweenness,closeness");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 3);
}

} // TEST_SUITE
