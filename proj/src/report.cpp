#include "clickgraph/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace clickgraph {

namespace {

template <typename F>
auto stage(const char* name, F&& body) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

const char* censor_mode_name(CensorMode mode) {
    return mode == CensorMode::either ? "either" : "both";
}

const char* vote_policy_name(VotePolicy policy) {
    switch (policy) {
    case VotePolicy::automatic: return "auto";
    case VotePolicy::weighted: return "weighted";
    case VotePolicy::unweighted: return "unweighted";
    }
    return "auto";
}

const char* neighborhood_name(NeighborhoodMode mode) {
    switch (mode) {
    case NeighborhoodMode::both: return "both";
    case NeighborhoodMode::in_only: return "in";
    case NeighborhoodMode::out_only: return "out";
    }
    return "both";
}

const char* closeness_variant_name(ClosenessVariant v) {
    return v == ClosenessVariant::classic ? "classic" : "harmonic";
}

const char* closeness_mode_name(ClosenessMode m) {
    return m == ClosenessMode::out ? "out" : "in";
}

const char* distance_name(DistanceScheme s) {
    return s == DistanceScheme::hops ? "hops" : "inverse-weight";
}

const char* local_transitivity_name(LocalTransitivityMode m) {
    return m == LocalTransitivityMode::exclude_low_degree ? "exclude" : "zero";
}

nlohmann::json opt_to_json(const std::optional<std::size_t>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json();
}

std::optional<std::size_t> opt_from_json(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<std::size_t>();
}

DualGraph load_from_files(const InputPaths& paths) {
    auto open = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("cannot open '" + path + "'");
        }
        return in;
    };

    auto nodes_in = open(paths.nodes);
    EdgeListSchema node_schema;
    auto registry = parse_node_metadata(nodes_in, node_schema);

    EdgeListSchema weighted_schema;
    weighted_schema.weight_column = 2;
    auto cs_in = open(paths.clickstream);
    auto cs = parse_edge_list(cs_in, weighted_schema, registry);

    EdgeListSchema unweighted_schema;
    auto hl_in = open(paths.hyperlink);
    auto hl = parse_edge_list(hl_in, unweighted_schema, registry);

    const std::size_t n = registry.size();
    auto clickstream = build_graph(n, cs.edges, true);
    auto hyperlink = build_graph(n, hl.edges, false);
    return DualGraph::assemble(std::move(registry), std::move(clickstream),
                               std::move(hyperlink));
}

} // namespace

nlohmann::json config_to_json(const RunConfig& config) {
    nlohmann::json j;
    if (config.inputs) {
        j["inputs"] = {{"nodes", config.inputs->nodes},
                       {"clickstream", config.inputs->clickstream},
                       {"hyperlink", config.inputs->hyperlink}};
    } else {
        j["inputs"] = nullptr;
    }
    j["synth_spec"] = config.synth_spec_path ? nlohmann::json(*config.synth_spec_path)
                                             : nlohmann::json();
    j["seed"] = config.seed;
    j["clickstream_k_out"] = opt_to_json(config.clickstream_k_out);
    j["clickstream_k_in"] = opt_to_json(config.clickstream_k_in);
    j["hyperlink_k_out"] = opt_to_json(config.hyperlink_k_out);
    j["hyperlink_k_in"] = opt_to_json(config.hyperlink_k_in);
    j["censor_mode"] = censor_mode_name(config.censor_mode);
    j["votes"] = vote_policy_name(config.votes);
    j["neighborhood"] = neighborhood_name(config.neighborhood);
    j["max_iterations"] = config.max_iterations;
    j["closeness_variant"] = closeness_variant_name(config.closeness_variant);
    j["closeness_mode"] = closeness_mode_name(config.closeness_mode);
    j["distance"] = distance_name(config.distance);
    j["local_transitivity"] = local_transitivity_name(config.local_transitivity);
    j["directed_overlap"] = config.directed_overlap;
    j["top_k"] = config.top_k;
    j["pathway_steps"] = config.pathway_steps;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
    RunConfig config;
    if (j.contains("inputs") && !j.at("inputs").is_null()) {
        const auto& in = j.at("inputs");
        config.inputs = InputPaths{in.at("nodes").get<std::string>(),
                                   in.at("clickstream").get<std::string>(),
                                   in.at("hyperlink").get<std::string>()};
    }
    if (j.contains("synth_spec") && !j.at("synth_spec").is_null()) {
        config.synth_spec_path = j.at("synth_spec").get<std::string>();
    }
    config.seed = j.value("seed", std::uint64_t{0});
    config.clickstream_k_out = opt_from_json(j, "clickstream_k_out");
    config.clickstream_k_in = opt_from_json(j, "clickstream_k_in");
    config.hyperlink_k_out = opt_from_json(j, "hyperlink_k_out");
    config.hyperlink_k_in = opt_from_json(j, "hyperlink_k_in");
    if (j.contains("censor_mode")) {
        const auto name = j.at("censor_mode").get<std::string>();
        if (name == "either") {
            config.censor_mode = CensorMode::either;
        } else if (name == "both") {
            config.censor_mode = CensorMode::both;
        } else {
            throw ConfigError("censor_mode must be either|both");
        }
    }
    if (j.contains("votes")) {
        const auto name = j.at("votes").get<std::string>();
        if (name == "auto") {
            config.votes = VotePolicy::automatic;
        } else if (name == "weighted") {
            config.votes = VotePolicy::weighted;
        } else if (name == "unweighted") {
            config.votes = VotePolicy::unweighted;
        } else {
            throw ConfigError("votes must be auto|weighted|unweighted");
        }
    }
    if (j.contains("neighborhood")) {
        const auto name = j.at("neighborhood").get<std::string>();
        if (name == "both") {
            config.neighborhood = NeighborhoodMode::both;
        } else if (name == "in") {
            config.neighborhood = NeighborhoodMode::in_only;
        } else if (name == "out") {
            config.neighborhood = NeighborhoodMode::out_only;
        } else {
            throw ConfigError("neighborhood must be both|in|out");
        }
    }
    config.max_iterations = j.value("max_iterations", std::size_t{100});
    if (j.contains("closeness_variant")) {
        const auto name = j.at("closeness_variant").get<std::string>();
        if (name == "classic") {
            config.closeness_variant = ClosenessVariant::classic;
        } else if (name == "harmonic") {
            config.closeness_variant = ClosenessVariant::harmonic;
        } else {
            throw ConfigError("closeness_variant must be classic|harmonic");
        }
    }
    if (j.contains("closeness_mode")) {
        const auto name = j.at("closeness_mode").get<std::string>();
        if (name == "out") {
            config.closeness_mode = ClosenessMode::out;
        } else if (name == "in") {
            config.closeness_mode = ClosenessMode::in;
        } else {
            throw ConfigError("closeness_mode must be out|in");
        }
    }
    if (j.contains("distance")) {
        const auto name = j.at("distance").get<std::string>();
        if (name == "hops") {
            config.distance = DistanceScheme::hops;
        } else if (name == "inverse-weight") {
            config.distance = DistanceScheme::inverse_weight;
        } else {
            throw ConfigError("distance must be hops|inverse-weight");
        }
    }
    if (j.contains("local_transitivity")) {
        const auto name = j.at("local_transitivity").get<std::string>();
        if (name == "exclude") {
            config.local_transitivity = LocalTransitivityMode::exclude_low_degree;
        } else if (name == "zero") {
            config.local_transitivity = LocalTransitivityMode::count_zero;
        } else {
            throw ConfigError("local_transitivity must be exclude|zero");
        }
    }
    config.directed_overlap = j.value("directed_overlap", true);
    config.top_k = j.value("top_k", std::size_t{5});
    config.pathway_steps = j.value("pathway_steps", std::size_t{4});
    return config;
}

AnalysisReport run_pipeline(const RunConfig& config) {
    if (config.inputs.has_value() == config.synth_spec_path.has_value()) {
        throw StageError("config",
                         "exactly one of input paths or a synth spec must be provided");
    }

    AnalysisReport report;
    report.config = config;

    report.dual = stage("load", [&] {
        if (config.inputs) {
            return load_from_files(*config.inputs);
        }
        std::ifstream in(*config.synth_spec_path);
        if (!in) {
            throw ConfigError("cannot open '" + *config.synth_spec_path + "'");
        }
        nlohmann::json j = nlohmann::json::parse(in);
        DualSpec spec = parse_dual_spec(j);
        spec.seed = config.seed;
        return generate_dual(spec).dual;
    });

    stage("censor", [&] {
        if (config.clickstream_k_out || config.clickstream_k_in) {
            report.dual.clickstream =
                apply_topk_censoring(report.dual.clickstream, config.clickstream_k_out,
                                     config.clickstream_k_in, config.censor_mode);
        }
        if (config.hyperlink_k_out || config.hyperlink_k_in) {
            report.dual.hyperlink =
                apply_topk_censoring(report.dual.hyperlink, config.hyperlink_k_out,
                                     config.hyperlink_k_in, config.censor_mode);
        }
        return 0;
    });

    stage("stats", [&] {
        report.hyperlink_summary = summarize(report.dual.hyperlink, config.local_transitivity);
        report.clickstream_summary =
            summarize(report.dual.clickstream, config.local_transitivity);
        return 0;
    });

    report.mismatch =
        stage("mismatch", [&] { return edge_overlap(report.dual, config.directed_overlap); });

    stage("communities", [&] {
        LabelPropagationOptions options;
        options.seed = config.seed;
        options.max_iterations = config.max_iterations;
        options.weighted_votes = config.votes == VotePolicy::automatic
                                     ? report.dual.clickstream.is_weighted()
                                     : config.votes == VotePolicy::weighted;
        options.neighborhood = config.neighborhood;
        report.assignment = label_propagation(report.dual.clickstream, options);
        report.community_rows = community_summary(report.dual.clickstream, report.assignment);
        const bool any_tag = std::any_of(report.dual.registry.begin(),
                                         report.dual.registry.end(),
                                         [](const WebsiteRecord& r) { return r.language.has_value(); });
        if (any_tag) {
            report.purity = label_purity(report.assignment, report.dual.registry);
        }
        return 0;
    });

    stage("centrality", [&] {
        CentralityOptions options{config.distance, config.closeness_variant,
                                  config.closeness_mode};
        report.community_tops = top_nodes_per_community(
            report.dual.clickstream, report.assignment, report.dual.registry, config.top_k,
            options);
        for (const auto& top : report.community_tops) {
            if (top.triple_top) {
                report.triple_top_set.push_back(*top.triple_top);
            }
        }
        std::sort(report.triple_top_set.begin(), report.triple_top_set.end());
        return 0;
    });

    report.pathways = stage("pathways", [&] {
        return pathway_per_community(report.dual.clickstream, report.assignment,
                                     report.dual.registry, config.pathway_steps);
    });

    report.moderated = stage("moderated_share", [&] {
        if (report.triple_top_set.empty()) {
            return ModeratedShareBreakdown{};
        }
        return moderated_share_breakdown(report.dual.clickstream, report.triple_top_set);
    });

    return report;
}

nlohmann::json report_to_json(const AnalysisReport& report) {
    const auto& registry = report.dual.registry;

    nlohmann::json communities;
    communities["seed"] = report.assignment.seed;
    communities["iterations"] = report.assignment.iterations;
    communities["converged"] = report.assignment.converged;
    communities["count"] = report.assignment.community_count;
    communities["purity"] = report.purity ? nlohmann::json(*report.purity) : nlohmann::json();
    communities["rows"] = report.community_rows;

    nlohmann::json tops = nlohmann::json::array();
    for (const auto& top : report.community_tops) {
        auto ranked_json = [&](const std::vector<RankedNode>& list) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& entry : list) {
                arr.push_back({{"domain", registry[entry.node].domain},
                               {"score", entry.score}});
            }
            return arr;
        };
        tops.push_back({{"community", top.community},
                        {"top_degree", ranked_json(top.by_degree)},
                        {"top_betweenness", ranked_json(top.by_betweenness)},
                        {"top_closeness", ranked_json(top.by_closeness)},
                        {"triple_top", top.triple_top
                                           ? nlohmann::json(registry[*top.triple_top].domain)
                                           : nlohmann::json()}});
    }

    nlohmann::json pathways = nlohmann::json::array();
    for (const auto& entry : report.pathways) {
        auto j = trace_to_json(entry.trace, registry);
        j["community"] = entry.community;
        pathways.push_back(std::move(j));
    }

    nlohmann::json moderated_nodes = nlohmann::json::array();
    for (NodeId v : report.triple_top_set) {
        moderated_nodes.push_back(registry[v].domain);
    }

    return nlohmann::json{
        {"schema_version", 1},
        {"config", config_to_json(report.config)},
        {"summaries",
         {{"hyperlink", report.hyperlink_summary}, {"clickstream", report.clickstream_summary}}},
        {"mismatch", report.mismatch},
        {"communities", communities},
        {"centrality", tops},
        {"pathways", pathways},
        {"moderated_share",
         {{"node_set", moderated_nodes},
          {"share", report.moderated.incident},
          {"from_set", report.moderated.from_set},
          {"into_set", report.moderated.into_set}}}};
}

std::string render_report(const AnalysisReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

} // namespace clickgraph
