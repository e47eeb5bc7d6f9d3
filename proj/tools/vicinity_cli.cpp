// vicinity: point-to-point exact shortest-path oracle for undirected graphs.
//
// Exit codes: 0 success (NOT_FOUND is a valid answer), 2 invalid
// configuration, 3 I/O failure, 4 input parse error, 5 build failure,
// 6 index format error, 7 node id out of range.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "vicinity/baselines.hpp"
#include "vicinity/bench.hpp"
#include "vicinity/errors.hpp"
#include "vicinity/graph.hpp"
#include "vicinity/oracle.hpp"
#include "vicinity/persistence.hpp"
#include "vicinity/query.hpp"
#include "vicinity/serde.hpp"
#include "vicinity/service.hpp"

namespace {

using namespace vicinity;

struct GraphArgs {
    std::string path;
    bool weighted = false;
    bool pre_symmetrized = false;
    bool lcc = false;
    std::string gen_ba;  // "n,k,seed"
    std::string gen_er;  // "n,p,seed"
};

void add_graph_flags(CLI::App* cmd, GraphArgs& args, bool allow_gen = false) {
    auto* g = cmd->add_option("--graph", args.path, "edge-list file ('u v [w]' lines, #/% comments)");
    cmd->add_flag("--weighted", args.weighted, "read a third per-line weight column");
    cmd->add_flag("--pre-symmetrized", args.pre_symmetrized,
                  "require both directions of every arc to be present");
    cmd->add_flag("--lcc", args.lcc, "restrict to the largest connected component");
    if (allow_gen) {
        auto* ba = cmd->add_option("--gen-ba", args.gen_ba, "synthesize BA graph: n,k,seed");
        auto* er = cmd->add_option("--gen-er", args.gen_er, "synthesize ER graph: n,p,seed");
        ba->excludes(er)->excludes(g);
        er->excludes(g);
    } else {
        g->required();
    }
}

std::shared_ptr<const Graph> load_graph(const GraphArgs& args) {
    Graph g;
    if (!args.gen_ba.empty() || !args.gen_er.empty()) {
        const std::string& spec = args.gen_ba.empty() ? args.gen_er : args.gen_ba;
        const auto c1 = spec.find(',');
        const auto c2 = spec.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ValidationError("generator spec must be three comma-separated values");
        const NodeId n = static_cast<NodeId>(std::stoull(spec.substr(0, c1)));
        const std::uint64_t seed = std::stoull(spec.substr(c2 + 1));
        if (!args.gen_ba.empty()) {
            g = gen_barabasi_albert(n, static_cast<std::uint32_t>(std::stoul(spec.substr(c1 + 1, c2 - c1 - 1))), seed);
        } else {
            g = gen_erdos_renyi(n, std::stod(spec.substr(c1 + 1, c2 - c1 - 1)), seed);
        }
    } else {
        std::ifstream in(args.path);
        if (!in) throw IoError("cannot open graph file: " + args.path);
        ParseOptions opt;
        opt.weighted = args.weighted;
        opt.treat_as_undirected = !args.pre_symmetrized;
        g = parse_edge_list(in, opt).graph;
    }
    if (args.lcc) g = largest_connected_component(g).graph;
    return std::make_shared<const Graph>(std::move(g));
}

int cmd_gen(const GraphArgs& args, const std::string& out_path) {
    auto g = load_graph(args);
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open output file: " + out_path);
    write_edge_list(out, *g);
    std::cerr << "wrote n=" << g->node_count() << " m=" << g->edge_count() << " to " << out_path
              << "\n";
    return 0;
}

int cmd_build(const GraphArgs& graph_args, double alpha, std::uint64_t seed, unsigned workers,
              const std::string& index_out, const std::string& mapping_out) {
    std::shared_ptr<const Graph> g;
    {
        // mapping file needs the pre-remap ids, so parse here when asked
        if (!mapping_out.empty() && !graph_args.path.empty()) {
            std::ifstream in(graph_args.path);
            if (!in) throw IoError("cannot open graph file: " + graph_args.path);
            ParseOptions opt;
            opt.weighted = graph_args.weighted;
            opt.treat_as_undirected = !graph_args.pre_symmetrized;
            ParsedGraph parsed = parse_edge_list(in, opt);
            std::ofstream mo(mapping_out);
            if (!mo) throw IoError("cannot open mapping file: " + mapping_out);
            write_id_mapping(mo, parsed.original_ids);
            Graph graph = std::move(parsed.graph);
            if (graph_args.lcc) graph = largest_connected_component(graph).graph;
            g = std::make_shared<const Graph>(std::move(graph));
        } else {
            g = load_graph(graph_args);
        }
    }
    BuildOptions opt;
    opt.alpha = alpha;
    opt.seed = seed;
    opt.workers = workers;
    Oracle oracle = build_oracle(g, opt);
    std::ofstream out(index_out, std::ios::binary);
    if (!out) throw IoError("cannot open index file: " + index_out);
    save_oracle(oracle, out);
    std::cout << build_stats_json(oracle.stats) << "\n";
    return 0;
}

Oracle load_index(const std::string& index_path, std::shared_ptr<const Graph> g) {
    std::ifstream in(index_path, std::ios::binary);
    if (!in) throw IoError("cannot open index file: " + index_path);
    return load_oracle(in, std::move(g));
}

int cmd_query(const GraphArgs& graph_args, const std::string& index_path, NodeId s, NodeId t,
              bool want_path, bool allow_fallback) {
    const Oracle oracle = load_index(index_path, load_graph(graph_args));
    const auto t0 = std::chrono::steady_clock::now();
    QueryResult qr;
    if (allow_fallback) {
        qr = query_with_fallback(oracle, s, t, FallbackKind::Auto, want_path);
    } else {
        qr = want_path ? query_path(oracle, s, t) : query_distance(oracle, s, t);
    }
    const double micros =
        std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
    std::cout << query_result_json(qr, micros, want_path) << "\n";
    return 0;
}

int cmd_stats(const std::string& index_path) {
    std::ifstream in(index_path, std::ios::binary);
    if (!in) throw IoError("cannot open index file: " + index_path);
    std::cout << index_stats_json(read_index_stats(in)) << "\n";
    return 0;
}

int cmd_bench(const GraphArgs& graph_args, const std::string& config_path,
              const std::string& out_dir, const std::vector<std::string>& experiments) {
    auto g = load_graph(graph_args);
    ExperimentConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot open bench config: " + config_path);
        cfg = parse_experiment_config(in);
    }
    std::filesystem::create_directories(out_dir);
    auto open = [&out_dir](const char* name) {
        std::ofstream out(out_dir + "/" + name);
        if (!out) throw IoError(std::string("cannot open ") + name);
        return out;
    };
    auto enabled = [&experiments](const char* name) {
        return experiments.empty() ||
               std::find(experiments.begin(), experiments.end(), name) != experiments.end();
    };

    {
        auto out = open("metadata.json");
        write_run_metadata(out, *g, cfg);
    }
    if (enabled("intersection")) {
        const auto report = run_intersection_experiment(*g, cfg);
        auto out = open("intersection.csv");
        write_intersection_csv(out, report);
        std::cerr << "intersection: " << report.points.size() << " rows, cross-check mismatches "
                  << report.cross_check_mismatches << "/" << report.cross_checked << "\n";
    }
    if (enabled("boundary")) {
        const auto points = run_boundary_cdf(*g, cfg);
        auto out = open("boundary_cdf.csv");
        write_boundary_cdf_csv(out, points);
        std::cerr << "boundary cdf: " << points.size() << " points\n";
    }
    if (enabled("radius")) {
        const auto points = run_radius_stats(*g, cfg);
        auto out = open("radius.csv");
        write_radius_csv(out, points);
        std::cerr << "radius: " << points.size() << " rows\n";
    }
    if (enabled("latency")) {
        const auto report = run_latency_bench(*g, cfg);
        auto out = open("latency.csv");
        write_latency_csv(out, report);
        std::cerr << "latency: " << report.pairs << " pairs (" << report.intersecting_pairs
                  << " answered), cross-check mismatches " << report.cross_check_mismatches << "/"
                  << report.cross_checked << ", probe bound violations "
                  << report.probe_bound_violations << "\n";
    }
    return 0;
}

int cmd_serve(const GraphArgs& graph_args, const std::string& index_path,
              const std::string& listen) {
    auto oracle = std::make_shared<const Oracle>(load_index(index_path, load_graph(graph_args)));
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos) throw ValidationError("listen address must be host:port");
    const std::string host = listen.substr(0, colon);
    const int port = std::stoi(listen.substr(colon + 1));
    Service service(oracle, host, port);
    std::cerr << "serving index (n=" << oracle->graph->node_count() << ") on " << host << ":"
              << service.port() << "\n";
    service.wait();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vicinity: exact shortest-path oracle via landmark vicinities"};
    app.require_subcommand(1);

    GraphArgs gen_graph;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "synthesize a graph and write it as an edge list");
    add_graph_flags(gen, gen_graph, true);
    gen->add_option("--out", gen_out, "output edge-list path")->required();

    GraphArgs build_graph;
    double alpha = 4.0;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string index_out, mapping_out;
    auto* build = app.add_subcommand("build", "build and save an oracle index");
    add_graph_flags(build, build_graph, true);
    build->add_option("--alpha", alpha, "vicinity size parameter (default 4)");
    build->add_option("--seed", seed, "landmark sampling seed");
    build->add_option("--workers", workers, "worker threads (0 = hardware)");
    build->add_option("--out", index_out, "index output path")->required();
    build->add_option("--mapping-out", mapping_out, "write original->dense id mapping here");

    GraphArgs query_graph;
    std::string query_index;
    NodeId q_s = 0, q_t = 0;
    bool want_path = false, allow_fallback = false;
    auto* query = app.add_subcommand("query", "answer a distance/path query from an index");
    add_graph_flags(query, query_graph, true);
    query->add_option("--index", query_index)->required();
    query->add_option("--source,-s", q_s)->required();
    query->add_option("--target,-t", q_t)->required();
    query->add_flag("--path", want_path, "reconstruct the path");
    query->add_flag("--fallback", allow_fallback, "run an exact search when not indexed");

    std::string stats_index;
    auto* stats = app.add_subcommand("stats", "print index header and size breakdown as JSON");
    stats->add_option("--index", stats_index)->required();

    GraphArgs bench_graph;
    std::string bench_config, bench_out = "bench-out";
    std::vector<std::string> bench_experiments;
    auto* bench = app.add_subcommand("bench", "run measurement experiments, emit CSV");
    add_graph_flags(bench, bench_graph, true);
    bench->add_option("--config", bench_config, "JSON experiment config");
    bench->add_option("--out-dir", bench_out, "output directory (default bench-out)");
    bench->add_option("--experiments", bench_experiments,
                      "subset of {intersection,boundary,radius,latency}");

    GraphArgs serve_graph;
    std::string serve_index, listen = "127.0.0.1:8080";
    auto* serve = app.add_subcommand("serve", "serve /distance, /path, /healthz over HTTP");
    add_graph_flags(serve, serve_graph, true);
    serve->add_option("--index", serve_index)->required();
    serve->add_option("--listen", listen, "host:port (default 127.0.0.1:8080)");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(gen_graph, gen_out);
        if (build->parsed())
            return cmd_build(build_graph, alpha, seed, workers, index_out, mapping_out);
        if (query->parsed())
            return cmd_query(query_graph, query_index, q_s, q_t, want_path, allow_fallback);
        if (stats->parsed()) return cmd_stats(stats_index);
        if (bench->parsed()) return cmd_bench(bench_graph, bench_config, bench_out, bench_experiments);
        if (serve->parsed()) return cmd_serve(serve_graph, serve_index, listen);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const NodeRangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 7;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
