// clickgraph: dual-network analytics for clickstream vs hyperlink graphs.
//
// Subcommands cover the full pipeline (report) plus each stage standalone
// (ingest, synth, stats, mismatch, communities, centrality, pathways, export).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "clickgraph/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace clickgraph;

namespace {

struct GraphInput {
    std::string nodes_path;
    std::string edges_path;
    bool weighted = false;
};

void add_graph_options(CLI::App* cmd, GraphInput& input) {
    cmd->add_option("--nodes", input.nodes_path, "node metadata CSV")->required();
    cmd->add_option("--edges", input.edges_path, "edge list CSV")->required();
    cmd->add_flag("--weighted", input.weighted, "parse a weight column (third field)");
}

std::ifstream open_or_die(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open '" + path + "'");
    }
    return in;
}

std::pair<std::vector<WebsiteRecord>, DirectedGraph> load_graph(const GraphInput& input) {
    auto nodes_in = open_or_die(input.nodes_path);
    EdgeListSchema node_schema;
    auto registry = parse_node_metadata(nodes_in, node_schema);

    EdgeListSchema edge_schema;
    if (input.weighted) {
        edge_schema.weight_column = 2;
    }
    auto edges_in = open_or_die(input.edges_path);
    auto parsed = parse_edge_list(edges_in, edge_schema, registry);
    if (!parsed.skips.empty()) {
        std::cerr << "skipped " << parsed.skipped_edges << " edge(s) with unknown domains\n";
    }
    auto graph = build_graph(registry.size(), parsed.edges, input.weighted);
    return {std::move(registry), std::move(graph)};
}

DualGraph load_dual(const std::string& nodes_path, const std::string& click_path,
                    const std::string& link_path) {
    auto nodes_in = open_or_die(nodes_path);
    EdgeListSchema node_schema;
    auto registry = parse_node_metadata(nodes_in, node_schema);

    EdgeListSchema weighted_schema;
    weighted_schema.weight_column = 2;
    auto cs_in = open_or_die(click_path);
    auto cs = parse_edge_list(cs_in, weighted_schema, registry);
    EdgeListSchema unweighted_schema;
    auto hl_in = open_or_die(link_path);
    auto hl = parse_edge_list(hl_in, unweighted_schema, registry);

    const std::size_t n = registry.size();
    auto clickstream = build_graph(n, cs.edges, true);
    auto hyperlink = build_graph(n, hl.edges, false);
    return DualGraph::assemble(std::move(registry), std::move(clickstream),
                               std::move(hyperlink));
}

void write_text(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) {
            throw ConfigError("cannot write '" + tmp.string() + "'");
        }
        out << content;
    }
    fs::rename(tmp, path);
}

void emit(const std::string& out_path, const std::string& content) {
    if (!out_path.empty()) {
        write_text(out_path, content);
    } else {
        std::cout << content;
    }
}

std::string registry_csv(std::span<const WebsiteRecord> registry) {
    std::ostringstream out;
    out << "domain,traffic,language,category\n";
    for (const auto& rec : registry) {
        out << rec.domain << ',' << format_double(rec.traffic) << ','
            << (rec.language ? *rec.language : "") << ','
            << (rec.category ? *rec.category : "") << '\n';
    }
    return out.str();
}

CommunityAssignment load_assignment(const std::string& path,
                                    std::span<const WebsiteRecord> registry) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < registry.size(); ++i) {
        index.emplace(registry[i].domain, i);
    }
    auto in = open_or_die(path);
    CommunityAssignment assignment;
    assignment.labels.assign(registry.size(), 0);
    std::string line;
    std::getline(in, line); // header
    int max_label = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto c1 = line.find(',');
        if (c1 == std::string::npos) {
            throw ParseError("assignment row missing community column: " + line);
        }
        const auto c2 = line.find(',', c1 + 1);
        const std::string domain = line.substr(0, c1);
        const std::string label_text = line.substr(
            c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1);
        const auto it = index.find(domain);
        if (it == index.end()) {
            throw ValidationError("assignment references unknown domain '" + domain + "'");
        }
        const int label = std::stoi(label_text);
        assignment.labels[it->second] = label;
        max_label = std::max(max_label, label);
    }
    assignment.community_count = static_cast<std::size_t>(max_label) + 1;
    return assignment;
}

json ranked_json(const std::vector<RankedNode>& list,
                 std::span<const WebsiteRecord> registry) {
    json arr = json::array();
    for (const auto& e : list) {
        arr.push_back({{"domain", registry[e.node].domain}, {"score", e.score}});
    }
    return arr;
}

int run(int argc, char** argv) {
    CLI::App app{"dual-network analytics: clickstream vs hyperlink graphs"};
    app.require_subcommand(1);

    std::string out_dir = ".";
    std::string out_file;

    // ---- ingest ---------------------------------------------------------
    auto* ingest = app.add_subcommand(
        "ingest", "validate inputs, optionally censor, write canonical CSVs");
    std::string in_nodes, in_click, in_link;
    std::optional<std::size_t> ck_out, ck_in, hk_out, hk_in;
    std::string censor_mode = "either";
    ingest->add_option("--nodes", in_nodes)->required();
    ingest->add_option("--clickstream", in_click)->required();
    ingest->add_option("--hyperlink", in_link)->required();
    ingest->add_option("--out-dir", out_dir);
    ingest->add_option("--clickstream-k-out", ck_out, "keep k strongest outbound clickstreams");
    ingest->add_option("--clickstream-k-in", ck_in, "keep k strongest inbound clickstreams");
    ingest->add_option("--hyperlink-k-out", hk_out, "keep k outbound hyperlinks");
    ingest->add_option("--hyperlink-k-in", hk_in, "keep k inbound hyperlinks");
    ingest->add_option("--censor-mode", censor_mode, "either|both")
        ->check(CLI::IsMember({"either", "both"}));

    // ---- synth ----------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a dual network from a JSON spec");
    std::string spec_path;
    std::uint64_t synth_seed = 0;
    synth->add_option("--spec", spec_path, "generator spec JSON")->required();
    synth->add_option("--seed", synth_seed, "override the spec's seed");
    synth->add_option("--out-dir", out_dir);

    // ---- stats ----------------------------------------------------------
    GraphInput stats_input;
    auto* stats_cmd = app.add_subcommand("stats", "structural summary of one graph");
    add_graph_options(stats_cmd, stats_input);
    std::string stats_local = "exclude";
    stats_cmd->add_option("--local-transitivity", stats_local)
        ->check(CLI::IsMember({"exclude", "zero"}));
    stats_cmd->add_option("--out", out_file);

    // ---- mismatch -------------------------------------------------------
    auto* mismatch_cmd =
        app.add_subcommand("mismatch", "edge overlap and flow coverage of a dual network");
    std::string mm_nodes, mm_click, mm_link;
    bool mm_undirected = false;
    mismatch_cmd->add_option("--nodes", mm_nodes)->required();
    mismatch_cmd->add_option("--clickstream", mm_click)->required();
    mismatch_cmd->add_option("--hyperlink", mm_link)->required();
    mismatch_cmd->add_flag("--undirected", mm_undirected, "overlap on unordered pairs");
    mismatch_cmd->add_option("--out", out_file);

    // ---- communities ----------------------------------------------------
    GraphInput comm_input;
    auto* comm_cmd = app.add_subcommand("communities", "label propagation on one graph");
    add_graph_options(comm_cmd, comm_input);
    std::uint64_t comm_seed = 0;
    std::size_t comm_max_iter = 100;
    std::string comm_votes = "auto", comm_neighborhood = "both";
    comm_cmd->add_option("--seed", comm_seed);
    comm_cmd->add_option("--max-iterations", comm_max_iter);
    comm_cmd->add_option("--votes", comm_votes)
        ->check(CLI::IsMember({"auto", "weighted", "unweighted"}));
    comm_cmd->add_option("--neighborhood", comm_neighborhood, "voting neighbors: both|in|out")
        ->check(CLI::IsMember({"both", "in", "out"}));
    comm_cmd->add_option("--out-dir", out_dir);

    // ---- centrality -----------------------------------------------------
    GraphInput cent_input;
    auto* cent_cmd =
        app.add_subcommand("centrality", "degree/betweenness/closeness per community");
    add_graph_options(cent_cmd, cent_input);
    std::string cent_assignment_path;
    std::size_t cent_top_k = 5;
    std::string cent_closeness = "classic", cent_mode = "out", cent_distance = "hops";
    cent_cmd->add_option("--communities", cent_assignment_path,
                         "assignment CSV (domain,community,...); whole graph when absent");
    cent_cmd->add_option("--top-k", cent_top_k);
    cent_cmd->add_option("--closeness-variant", cent_closeness)
        ->check(CLI::IsMember({"classic", "harmonic"}));
    cent_cmd->add_option("--closeness-mode", cent_mode)->check(CLI::IsMember({"out", "in"}));
    cent_cmd->add_option("--distance", cent_distance)
        ->check(CLI::IsMember({"hops", "inverse-weight"}));
    cent_cmd->add_option("--out-dir", out_dir);

    // ---- pathways -------------------------------------------------------
    GraphInput path_input;
    auto* path_cmd = app.add_subcommand("pathways", "greedy strongest-edge walks per community");
    add_graph_options(path_cmd, path_input);
    std::string path_assignment_path, path_format = "json";
    std::size_t path_steps = 4;
    path_cmd->add_option("--communities", path_assignment_path)->required();
    path_cmd->add_option("--steps", path_steps);
    path_cmd->add_option("--format", path_format)->check(CLI::IsMember({"json", "dot"}));
    path_cmd->add_option("--out", out_file);

    // ---- export ---------------------------------------------------------
    GraphInput export_input;
    auto* export_cmd = app.add_subcommand("export", "write a graph as edge-csv, graphml, or dot");
    add_graph_options(export_cmd, export_input);
    std::string export_format = "edge-csv";
    export_cmd->add_option("--format", export_format, "edge-csv|graphml|dot");
    export_cmd->add_option("--out", out_file);

    // ---- report ---------------------------------------------------------
    auto* report_cmd =
        app.add_subcommand("report", "full pipeline; writes report.json plus CSV side outputs");
    std::string rep_nodes, rep_click, rep_link, rep_spec, rep_config_path;
    std::uint64_t rep_seed = 0;
    std::optional<std::size_t> rep_ck_out, rep_ck_in, rep_hk_out, rep_hk_in;
    std::string rep_censor_mode = "either";
    std::string rep_votes = "auto", rep_closeness = "classic", rep_mode = "out",
                rep_distance = "hops", rep_local = "exclude";
    std::size_t rep_max_iter = 100, rep_top_k = 5, rep_steps = 4;
    bool rep_undirected = false;
    report_cmd->add_option("--config", rep_config_path, "RunConfig JSON (flags override)");
    report_cmd->add_option("--nodes", rep_nodes);
    report_cmd->add_option("--clickstream", rep_click);
    report_cmd->add_option("--hyperlink", rep_link);
    report_cmd->add_option("--synth-spec", rep_spec, "generator spec JSON");
    report_cmd->add_option("--out-dir", out_dir);
    report_cmd->add_option("--seed", rep_seed);
    report_cmd->add_option("--clickstream-k-out", rep_ck_out);
    report_cmd->add_option("--clickstream-k-in", rep_ck_in);
    report_cmd->add_option("--hyperlink-k-out", rep_hk_out);
    report_cmd->add_option("--hyperlink-k-in", rep_hk_in);
    report_cmd->add_option("--censor-mode", rep_censor_mode)
        ->check(CLI::IsMember({"either", "both"}));
    report_cmd->add_option("--votes", rep_votes, "label votes: auto|weighted|unweighted")
        ->check(CLI::IsMember({"auto", "weighted", "unweighted"}));
    std::string rep_neighborhood = "both";
    report_cmd->add_option("--neighborhood", rep_neighborhood, "voting neighbors: both|in|out")
        ->check(CLI::IsMember({"both", "in", "out"}));
    report_cmd->add_option("--max-iterations", rep_max_iter);
    report_cmd->add_option("--closeness-variant", rep_closeness)
        ->check(CLI::IsMember({"classic", "harmonic"}));
    report_cmd->add_option("--closeness-mode", rep_mode)->check(CLI::IsMember({"out", "in"}));
    report_cmd->add_option("--distance", rep_distance)
        ->check(CLI::IsMember({"hops", "inverse-weight"}));
    report_cmd->add_option("--local-transitivity", rep_local)
        ->check(CLI::IsMember({"exclude", "zero"}));
    report_cmd->add_flag("--undirected-overlap", rep_undirected,
                         "project edges to unordered pairs for overlap");
    report_cmd->add_option("--top-k", rep_top_k, "ranked nodes kept per community");
    report_cmd->add_option("--steps", rep_steps, "pathway step count");

    CLI11_PARSE(app, argc, argv);

    if (ingest->parsed()) {
        auto dual = load_dual(in_nodes, in_click, in_link);
        const CensorMode mode =
            censor_mode == "both" ? CensorMode::both : CensorMode::either;
        if (ck_out || ck_in) {
            dual.clickstream = apply_topk_censoring(dual.clickstream, ck_out, ck_in, mode);
        }
        if (hk_out || hk_in) {
            dual.hyperlink = apply_topk_censoring(dual.hyperlink, hk_out, hk_in, mode);
        }

        fs::create_directories(out_dir);
        write_text(fs::path(out_dir) / "nodes.csv", registry_csv(dual.registry));
        std::ostringstream cs_out, hl_out;
        export_graph(cs_out, dual.clickstream, dual.registry, ExportFormat::edge_csv);
        export_graph(hl_out, dual.hyperlink, dual.registry, ExportFormat::edge_csv);
        write_text(fs::path(out_dir) / "clickstream.csv", cs_out.str());
        write_text(fs::path(out_dir) / "hyperlink.csv", hl_out.str());

        json summary{{"nodes", dual.registry.size()},
                     {"clickstream_edges", dual.clickstream.edge_count()},
                     {"clickstream_self_loops_dropped", dual.clickstream.dropped_self_loops()},
                     {"hyperlink_edges", dual.hyperlink.edge_count()},
                     {"hyperlink_self_loops_dropped", dual.hyperlink.dropped_self_loops()}};
        write_text(fs::path(out_dir) / "ingest.json", summary.dump(2) + "\n");
        std::cout << "wrote canonical CSVs to " << out_dir << "\n";
        return 0;
    }

    if (synth->parsed()) {
        auto spec_in = open_or_die(spec_path);
        DualSpec spec = parse_dual_spec(json::parse(spec_in));
        if (synth->count("--seed") > 0) {
            spec.seed = synth_seed;
        }
        auto generated = generate_dual(spec);

        fs::create_directories(out_dir);
        write_text(fs::path(out_dir) / "nodes.csv", registry_csv(generated.dual.registry));
        std::ostringstream cs_out, hl_out;
        export_graph(cs_out, generated.dual.clickstream, generated.dual.registry,
                     ExportFormat::edge_csv);
        export_graph(hl_out, generated.dual.hyperlink, generated.dual.registry,
                     ExportFormat::edge_csv);
        write_text(fs::path(out_dir) / "clickstream.csv", cs_out.str());
        write_text(fs::path(out_dir) / "hyperlink.csv", hl_out.str());
        if (!generated.block_of.empty()) {
            std::ostringstream gt;
            gt << "domain,block\n";
            for (std::size_t i = 0; i < generated.block_of.size(); ++i) {
                gt << generated.dual.registry[i].domain << ',' << generated.block_of[i]
                   << '\n';
            }
            write_text(fs::path(out_dir) / "ground_truth.csv", gt.str());
        }
        std::cout << "wrote synthetic dual network to " << out_dir << "\n";
        return 0;
    }

    if (stats_cmd->parsed()) {
        auto [registry, graph] = load_graph(stats_input);
        const auto mode = stats_local == "zero" ? LocalTransitivityMode::count_zero
                                                : LocalTransitivityMode::exclude_low_degree;
        json j = summarize(graph, mode);
        emit(out_file, j.dump(2) + "\n");
        return 0;
    }

    if (mismatch_cmd->parsed()) {
        auto dual = load_dual(mm_nodes, mm_click, mm_link);
        json j = edge_overlap(dual, !mm_undirected);
        emit(out_file, j.dump(2) + "\n");
        return 0;
    }

    if (comm_cmd->parsed()) {
        auto [registry, graph] = load_graph(comm_input);
        LabelPropagationOptions options;
        options.seed = comm_seed;
        options.max_iterations = comm_max_iter;
        options.weighted_votes =
            comm_votes == "auto" ? graph.is_weighted() : comm_votes == "weighted";
        options.neighborhood = comm_neighborhood == "in"
                                   ? NeighborhoodMode::in_only
                                   : comm_neighborhood == "out" ? NeighborhoodMode::out_only
                                                                : NeighborhoodMode::both;
        auto assignment = label_propagation(graph, options);

        fs::create_directories(out_dir);
        std::ostringstream csv;
        write_assignment_csv(csv, assignment, registry);
        write_text(fs::path(out_dir) / "assignment.csv", csv.str());

        json j{{"seed", assignment.seed},
               {"iterations", assignment.iterations},
               {"converged", assignment.converged},
               {"count", assignment.community_count},
               {"rows", community_summary(graph, assignment)}};
        write_text(fs::path(out_dir) / "communities.json", j.dump(2) + "\n");
        std::cout << "found " << assignment.community_count << " communities in "
                  << assignment.iterations << " sweep(s)\n";
        return 0;
    }

    if (cent_cmd->parsed()) {
        auto [registry, graph] = load_graph(cent_input);
        CommunityAssignment assignment;
        if (!cent_assignment_path.empty()) {
            assignment = load_assignment(cent_assignment_path, registry);
        } else {
            assignment.labels.assign(registry.size(), 0);
            assignment.community_count = registry.empty() ? 0 : 1;
        }
        CentralityOptions options;
        options.distance = cent_distance == "inverse-weight" ? DistanceScheme::inverse_weight
                                                             : DistanceScheme::hops;
        options.closeness_variant = cent_closeness == "harmonic" ? ClosenessVariant::harmonic
                                                                 : ClosenessVariant::classic;
        options.closeness_mode = cent_mode == "in" ? ClosenessMode::in : ClosenessMode::out;

        fs::create_directories(out_dir);
        std::ostringstream csv;
        write_centrality_csv(csv, graph, assignment, registry, options);
        write_text(fs::path(out_dir) / "centrality.csv", csv.str());

        auto tops = top_nodes_per_community(graph, assignment, registry, cent_top_k, options);
        json arr = json::array();
        for (const auto& top : tops) {
            arr.push_back({{"community", top.community},
                           {"top_degree", ranked_json(top.by_degree, registry)},
                           {"top_betweenness", ranked_json(top.by_betweenness, registry)},
                           {"top_closeness", ranked_json(top.by_closeness, registry)},
                           {"triple_top",
                            top.triple_top ? json(registry[*top.triple_top].domain) : json()}});
        }
        write_text(fs::path(out_dir) / "centrality_top.json", arr.dump(2) + "\n");
        std::cout << "wrote centrality outputs to " << out_dir << "\n";
        return 0;
    }

    if (path_cmd->parsed()) {
        auto [registry, graph] = load_graph(path_input);
        auto assignment = load_assignment(path_assignment_path, registry);
        auto pathways = pathway_per_community(graph, assignment, registry, path_steps);
        if (path_format == "dot") {
            std::ostringstream out;
            for (const auto& entry : pathways) {
                write_trace_dot(out, entry.trace, registry);
            }
            emit(out_file, out.str());
        } else {
            json arr = json::array();
            for (const auto& entry : pathways) {
                auto j = trace_to_json(entry.trace, registry);
                j["community"] = entry.community;
                arr.push_back(std::move(j));
            }
            emit(out_file, arr.dump(2) + "\n");
        }
        return 0;
    }

    if (export_cmd->parsed()) {
        auto [registry, graph] = load_graph(export_input);
        std::ostringstream out;
        export_graph(out, graph, registry, parse_export_format(export_format));
        emit(out_file, out.str());
        return 0;
    }

    if (report_cmd->parsed()) {
        RunConfig config;
        if (!rep_config_path.empty()) {
            auto cfg_in = open_or_die(rep_config_path);
            config = config_from_json(json::parse(cfg_in));
        }
        // Flags given on the command line override config-file values.
        if (!rep_nodes.empty() || !rep_click.empty() || !rep_link.empty()) {
            config.inputs = InputPaths{rep_nodes, rep_click, rep_link};
            config.synth_spec_path.reset();
        }
        if (!rep_spec.empty()) {
            config.synth_spec_path = rep_spec;
            config.inputs.reset();
        }
        if (report_cmd->count("--seed")) config.seed = rep_seed;
        if (report_cmd->count("--clickstream-k-out")) config.clickstream_k_out = rep_ck_out;
        if (report_cmd->count("--clickstream-k-in")) config.clickstream_k_in = rep_ck_in;
        if (report_cmd->count("--hyperlink-k-out")) config.hyperlink_k_out = rep_hk_out;
        if (report_cmd->count("--hyperlink-k-in")) config.hyperlink_k_in = rep_hk_in;
        if (report_cmd->count("--censor-mode")) {
            config.censor_mode =
                rep_censor_mode == "both" ? CensorMode::both : CensorMode::either;
        }
        if (report_cmd->count("--votes")) {
            config.votes = rep_votes == "weighted"
                               ? VotePolicy::weighted
                               : rep_votes == "unweighted" ? VotePolicy::unweighted
                                                           : VotePolicy::automatic;
        }
        if (report_cmd->count("--neighborhood")) {
            config.neighborhood = rep_neighborhood == "in"
                                      ? NeighborhoodMode::in_only
                                      : rep_neighborhood == "out" ? NeighborhoodMode::out_only
                                                                  : NeighborhoodMode::both;
        }
        if (report_cmd->count("--max-iterations")) config.max_iterations = rep_max_iter;
        if (report_cmd->count("--closeness-variant")) {
            config.closeness_variant = rep_closeness == "harmonic"
                                           ? ClosenessVariant::harmonic
                                           : ClosenessVariant::classic;
        }
        if (report_cmd->count("--closeness-mode")) {
            config.closeness_mode = rep_mode == "in" ? ClosenessMode::in : ClosenessMode::out;
        }
        if (report_cmd->count("--distance")) {
            config.distance = rep_distance == "inverse-weight" ? DistanceScheme::inverse_weight
                                                               : DistanceScheme::hops;
        }
        if (report_cmd->count("--local-transitivity")) {
            config.local_transitivity = rep_local == "zero"
                                            ? LocalTransitivityMode::count_zero
                                            : LocalTransitivityMode::exclude_low_degree;
        }
        if (report_cmd->count("--undirected-overlap")) config.directed_overlap = false;
        if (report_cmd->count("--top-k")) config.top_k = rep_top_k;
        if (report_cmd->count("--steps")) config.pathway_steps = rep_steps;

        auto report = run_pipeline(config);

        fs::create_directories(out_dir);
        std::ostringstream assignment_csv, centrality_csv;
        write_assignment_csv(assignment_csv, report.assignment, report.dual.registry);
        CentralityOptions cent_options{config.distance, config.closeness_variant,
                                       config.closeness_mode};
        write_centrality_csv(centrality_csv, report.dual.clickstream, report.assignment,
                             report.dual.registry, cent_options);
        write_text(fs::path(out_dir) / "assignment.csv", assignment_csv.str());
        write_text(fs::path(out_dir) / "centrality.csv", centrality_csv.str());
        write_text(fs::path(out_dir) / "report.json", render_report(report));
        std::cout << "wrote report.json to " << out_dir << "\n";
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
