#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "clickgraph/errors.hpp"
#include "clickgraph/report.hpp"

using namespace clickgraph;
namespace fs = std::filesystem;

namespace {

// Writes a two-block planted spec to a temp file and returns its path.
std::string write_spec_file() {
    const auto path = fs::temp_directory_path() / "clickgraph_test_spec.json";
    std::ofstream out(path);
    out << R"({
  "seed": 5,
  "clickstream": {
    "type": "planted_partition",
    "block_sizes": [12, 20],
    "p_in": 0.5,
    "p_out": 0.005,
    "weight_law": {"kind": "lognormal", "mu": 0.0, "sigma": 1.0},
    "hub_per_block": true
  },
  "hyperlink": {"type": "flat_overlay", "density": 0.08}
})";
    return path.string();
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("a clean two-block fixture yields two pure communities") {
    RunConfig config;
    config.synth_spec_path = write_spec_file();
    config.seed = 5;
    const auto report = run_pipeline(config);

    CHECK(report.assignment.community_count == 2);
    REQUIRE(report.purity.has_value());
    CHECK(*report.purity == 1.0);
    CHECK(report.community_rows.size() == 2);
    CHECK(report.hyperlink_summary.nodes == 32);
    CHECK(report.clickstream_summary.nodes == 32);
    CHECK(report.mismatch.clickstream_count == report.dual.clickstream.edge_count());

    // Hub dominance makes each community's hub the triple top.
    CHECK(report.triple_top_set.size() == 2);
    CHECK(report.pathways.size() == 2);
}

TEST_CASE("identical configs render byte-identical reports") {
    RunConfig config;
    config.synth_spec_path = write_spec_file();
    config.seed = 11;
    const auto a = render_report(run_pipeline(config));
    const auto b = render_report(run_pipeline(config));
    CHECK(a == b);
    CHECK(a.find("\"schema_version\": 1") != std::string::npos);

    RunConfig other = config;
    other.seed = 12;
    const auto c = render_report(run_pipeline(other));
    CHECK(a != c);
}

TEST_CASE("report json carries every section") {
    RunConfig config;
    config.synth_spec_path = write_spec_file();
    const auto j = report_to_json(run_pipeline(config));
    for (const char* key : {"schema_version", "config", "summaries", "mismatch", "communities",
                            "centrality", "pathways", "moderated_share"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["summaries"].contains("hyperlink"));
    CHECK(j["summaries"].contains("clickstream"));
    CHECK(j["communities"]["rows"].is_array());
    CHECK(j["moderated_share"]["share"].is_number());
    CHECK(j["config"]["seed"] == 0);
}

TEST_CASE("config json round-trips") {
    RunConfig config;
    config.inputs = InputPaths{"n.csv", "c.csv", "h.csv"};
    config.seed = 42;
    config.clickstream_k_out = 10;
    config.clickstream_k_in = 10;
    config.censor_mode = CensorMode::both;
    config.votes = VotePolicy::unweighted;
    config.neighborhood = NeighborhoodMode::in_only;
    config.closeness_variant = ClosenessVariant::harmonic;
    config.closeness_mode = ClosenessMode::in;
    config.distance = DistanceScheme::inverse_weight;
    config.local_transitivity = LocalTransitivityMode::count_zero;
    config.directed_overlap = false;
    config.top_k = 3;
    config.pathway_steps = 6;

    const auto restored = config_from_json(config_to_json(config));
    CHECK(restored.inputs->nodes == "n.csv");
    CHECK(restored.seed == 42);
    CHECK(restored.clickstream_k_out == 10);
    CHECK_FALSE(restored.hyperlink_k_out.has_value());
    CHECK(restored.censor_mode == CensorMode::both);
    CHECK(restored.votes == VotePolicy::unweighted);
    CHECK(restored.neighborhood == NeighborhoodMode::in_only);
    CHECK(restored.closeness_variant == ClosenessVariant::harmonic);
    CHECK(restored.closeness_mode == ClosenessMode::in);
    CHECK(restored.distance == DistanceScheme::inverse_weight);
    CHECK(restored.local_transitivity == LocalTransitivityMode::count_zero);
    CHECK_FALSE(restored.directed_overlap);
    CHECK(restored.top_k == 3);
    CHECK(restored.pathway_steps == 6);
}

TEST_CASE("exactly one input source must be configured") {
    RunConfig neither;
    CHECK_THROWS_AS(run_pipeline(neither), StageError);

    RunConfig both;
    both.inputs = InputPaths{"n", "c", "h"};
    both.synth_spec_path = "spec.json";
    CHECK_THROWS_AS(run_pipeline(both), StageError);
}

TEST_CASE("stage failures name the stage") {
    RunConfig config;
    config.synth_spec_path = "/nonexistent/spec.json";
    try {
        run_pipeline(config);
        FAIL("expected a stage error");
    } catch (const StageError& e) {
        CHECK(e.stage == "load");
        CHECK(std::string(e.what()).find("load") != std::string::npos);
    }
}

TEST_CASE("file-based runs ingest the documented csv schemas") {
    const auto dir = fs::temp_directory_path() / "clickgraph_report_io";
    fs::create_directories(dir);
    {
        std::ofstream nodes(dir / "nodes.csv");
        nodes << "domain,traffic,language\n";
        nodes << "a.test,30,en\nb.test,20,en\nc.test,10,zh\nd.test,5,zh\n";
        std::ofstream click(dir / "clickstream.csv");
        click << "source,target,weight\n";
        click << "a.test,b.test,5.0\nb.test,a.test,4.0\nc.test,d.test,2.0\n"
              << "d.test,c.test,1.0\na.test,c.test,0.5\n";
        std::ofstream link(dir / "hyperlink.csv");
        link << "source,target\n";
        link << "a.test,b.test\nb.test,c.test\nc.test,d.test\n";
    }
    RunConfig config;
    config.inputs = InputPaths{(dir / "nodes.csv").string(), (dir / "clickstream.csv").string(),
                               (dir / "hyperlink.csv").string()};
    const auto report = run_pipeline(config);
    CHECK(report.dual.registry.size() == 4);
    CHECK(report.mismatch.clickstream_count == 5);
    CHECK(report.mismatch.hyperlink_count == 3);
    CHECK(report.mismatch.overlap_count == 2); // a->b and c->d
    REQUIRE(report.purity.has_value());
}

} // TEST_SUITE
