#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "clickgraph/centrality.hpp"
#include "clickgraph/community.hpp"
#include "clickgraph/errors.hpp"
#include "clickgraph/graph.hpp"
#include "clickgraph/io.hpp"
#include "clickgraph/mismatch.hpp"
#include "clickgraph/pathway.hpp"
#include "clickgraph/stats.hpp"
#include "clickgraph/synth.hpp"

namespace clickgraph {

/// A pipeline stage failed; the message carries the stage name and cause.
struct StageError : Error {
    StageError(std::string stage_name, const std::string& cause)
        : Error("stage '" + stage_name + "': " + cause), stage(std::move(stage_name)) {}

    std::string stage;
};

enum class VotePolicy { automatic, weighted, unweighted };

struct InputPaths {
    std::string nodes;
    std::string clickstream;
    std::string hyperlink;
};

/// Everything a reproducible run needs. Exactly one of `inputs` or
/// `synth_spec_path` must be present.
struct RunConfig {
    std::optional<InputPaths> inputs;
    std::optional<std::string> synth_spec_path;

    std::uint64_t seed = 0;

    // Ingest-time censoring (absent = no filter on that side).
    std::optional<std::size_t> clickstream_k_out;
    std::optional<std::size_t> clickstream_k_in;
    std::optional<std::size_t> hyperlink_k_out;
    std::optional<std::size_t> hyperlink_k_in;
    CensorMode censor_mode = CensorMode::either;

    VotePolicy votes = VotePolicy::automatic;
    NeighborhoodMode neighborhood = NeighborhoodMode::both;
    std::size_t max_iterations = 100;

    ClosenessVariant closeness_variant = ClosenessVariant::classic;
    ClosenessMode closeness_mode = ClosenessMode::out;
    DistanceScheme distance = DistanceScheme::hops;
    LocalTransitivityMode local_transitivity = LocalTransitivityMode::exclude_low_degree;

    bool directed_overlap = true;
    std::size_t top_k = 5;
    std::size_t pathway_steps = 4;
};

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// The full measurement bundle produced by one pipeline run.
struct AnalysisReport {
    RunConfig config;
    DualGraph dual;
    NetworkSummary hyperlink_summary;
    NetworkSummary clickstream_summary;
    MismatchReport mismatch;
    CommunityAssignment assignment;
    std::vector<CommunityRow> community_rows;
    std::optional<double> purity; // absent when no node carries a language tag
    std::vector<CommunityTopNodes> community_tops;
    std::vector<NodeId> triple_top_set; // across communities, ascending
    std::vector<CommunityPathway> pathways;
    ModeratedShareBreakdown moderated;
};

/// Runs ingest -> stats -> mismatch -> communities -> centrality -> pathways
/// -> moderated share. Any stage failure raises StageError; nothing partial
/// escapes. All randomness derives from config.seed.
AnalysisReport run_pipeline(const RunConfig& config);

nlohmann::json report_to_json(const AnalysisReport& report);

/// Stable serialized form (sorted keys, 2-space indent, trailing newline);
/// identical configs yield byte-identical output.
std::string render_report(const AnalysisReport& report);

} // namespace clickgraph
