#include "vicinity/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vicinity/baselines.hpp"
#include "vicinity/errors.hpp"
#include "vicinity/oracle.hpp"
#include "vicinity/query.hpp"
#include "vicinity/rng.hpp"

namespace vicinity {

namespace {

std::vector<NodeId> sample_distinct(NodeId n, std::uint32_t k, Rng rng) {
    k = std::min<std::uint32_t>(k, n);
    std::vector<NodeId> out;
    std::vector<std::uint8_t> taken(n, 0);
    out.reserve(k);
    while (out.size() < k) {
        const NodeId v = static_cast<NodeId>(rng.next_below(n));
        if (!taken[v]) {
            taken[v] = 1;
            out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double micros_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
}

// top-1%-trimmed mean; robust against scheduler hiccups
double trimmed_mean(std::vector<double> xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    const std::size_t drop = xs.size() / 100;
    const std::size_t keep = xs.size() - drop;
    return std::accumulate(xs.begin(), xs.begin() + keep, 0.0) / static_cast<double>(keep);
}

std::shared_ptr<const Graph> shared_view(const Graph& g) {
    // non-owning: bench never outlives its caller's graph
    return {&g, [](const Graph*) {}};
}

}  // namespace

void ExperimentConfig::validate() const {
    for (double a : alphas)
        if (!(a > 0)) throw ValidationError("alphas must be positive");
    if (nodes_per_trial < 2) throw ValidationError("nodes_per_trial must be >= 2");
    if (trials < 1) throw ValidationError("trials must be >= 1");
    if (!(boundary_alpha > 0) || !(latency_alpha > 0))
        throw ValidationError("alpha operating points must be positive");
}

ExperimentConfig parse_experiment_config(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("bad bench config: ") + e.what());
    }
    ExperimentConfig cfg;
    if (j.contains("alphas")) cfg.alphas = j["alphas"].get<std::vector<double>>();
    cfg.nodes_per_trial = j.value("nodes_per_trial", cfg.nodes_per_trial);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.boundary_alpha = j.value("boundary_alpha", cfg.boundary_alpha);
    cfg.latency_alpha = j.value("latency_alpha", cfg.latency_alpha);
    cfg.latency_pairs = j.value("latency_pairs", cfg.latency_pairs);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.cross_check = j.value("cross_check", cfg.cross_check);
    cfg.validate();
    return cfg;
}

IntersectionReport run_intersection_experiment(const Graph& g, const ExperimentConfig& cfg) {
    cfg.validate();
    IntersectionReport report;
    auto gp = shared_view(g);
    for (std::uint32_t trial = 0; trial < cfg.trials; ++trial) {
        const std::vector<NodeId> sample =
            sample_distinct(g.node_count(), cfg.nodes_per_trial, Rng(mix_seed(cfg.seed, 1000 + trial)));
        const std::uint64_t landmark_seed = mix_seed(cfg.seed, trial);
        for (double alpha : cfg.alphas) {
            BuildOptions opt;
            opt.alpha = alpha;
            opt.seed = landmark_seed;
            opt.workers = cfg.workers;
            opt.scope = sample;
            const Oracle oracle = build_oracle(gp, opt);
            std::uint64_t hits = 0, total = 0;
            for (std::size_t i = 0; i < sample.size(); ++i) {
                for (std::size_t j = i + 1; j < sample.size(); ++j) {
                    const QueryResult qr = query_distance(oracle, sample[i], sample[j]);
                    ++total;
                    if (qr.method != Method::NotFound) ++hits;
                    if (cfg.cross_check && total % 100 == 0 && qr.distance) {
                        ++report.cross_checked;
                        const auto ref = bidirectional_bfs(g, sample[i], sample[j]);
                        if (!ref.distance || std::abs(*ref.distance - *qr.distance) > 1e-9)
                            ++report.cross_check_mismatches;
                    }
                }
            }
            report.points.push_back(
                {alpha, trial, total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0});
        }
    }
    return report;
}

std::vector<CdfPoint> run_boundary_cdf(const Graph& g, const ExperimentConfig& cfg) {
    cfg.validate();
    const std::uint32_t want = cfg.nodes_per_trial * cfg.trials;
    const std::vector<NodeId> sample =
        sample_distinct(g.node_count(), want, Rng(mix_seed(cfg.seed, 2000)));
    BuildOptions opt;
    opt.alpha = cfg.boundary_alpha;
    opt.seed = mix_seed(cfg.seed, 0);
    opt.workers = cfg.workers;
    opt.scope = sample;
    const Oracle oracle = build_oracle(shared_view(g), opt);
    std::vector<double> fractions;
    fractions.reserve(sample.size());
    for (NodeId u : sample)
        fractions.push_back(static_cast<double>(oracle.vicinities[u].boundary.size()) /
                            static_cast<double>(g.node_count()));
    std::sort(fractions.begin(), fractions.end());
    std::vector<CdfPoint> points;
    points.reserve(fractions.size());
    for (std::size_t i = 0; i < fractions.size(); ++i)
        points.push_back({static_cast<double>(i + 1) / static_cast<double>(fractions.size()),
                          fractions[i]});
    return points;
}

std::vector<RadiusPoint> run_radius_stats(const Graph& g, const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<RadiusPoint> out;
    for (double alpha : cfg.alphas) {
        double mean = 0;
        for (std::uint32_t trial = 0; trial < cfg.trials; ++trial) {
            const LandmarkSet ls = sample_landmarks(g, alpha, mix_seed(cfg.seed, trial));
            mean += std::accumulate(ls.radius.begin(), ls.radius.end(), 0.0) /
                    static_cast<double>(g.node_count());
        }
        out.push_back({alpha, mean / cfg.trials});
    }
    return out;
}

LatencyReport run_latency_bench(const Graph& g, const ExperimentConfig& cfg) {
    cfg.validate();
    LatencyReport report;
    const std::vector<NodeId> sample =
        sample_distinct(g.node_count(), cfg.nodes_per_trial, Rng(mix_seed(cfg.seed, 777)));
    BuildOptions opt;
    opt.alpha = cfg.latency_alpha;
    opt.seed = mix_seed(cfg.seed, 0);
    opt.workers = cfg.workers;
    opt.scope = sample;
    const Oracle oracle = build_oracle(shared_view(g), opt);

    Rng pair_rng(mix_seed(cfg.seed, 778));
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(cfg.latency_pairs);
    while (pairs.size() < cfg.latency_pairs) {
        const NodeId s = sample[pair_rng.next_below(sample.size())];
        const NodeId t = sample[pair_rng.next_below(sample.size())];
        if (s != t) pairs.emplace_back(s, t);
    }
    report.pairs = pairs.size();

    for (const auto& [s, t] : pairs) (void)query_distance(oracle, s, t);  // warm-up pass

    std::vector<double> oracle_us, hit_us, bfs_us, bidir_us;
    std::vector<double> oracle_probes, hit_probes;
    oracle_us.reserve(pairs.size());
    std::uint64_t idx = 0;
    for (const auto& [s, t] : pairs) {
        const auto t0 = std::chrono::steady_clock::now();
        const QueryResult qr = query_distance(oracle, s, t);
        const double us = micros_since(t0);
        oracle_us.push_back(us);
        oracle_probes.push_back(qr.probes);
        const std::uint64_t bound =
            std::min(oracle.vicinities[s].boundary.size(), oracle.vicinities[t].boundary.size()) + 4;
        if (qr.probes > bound) ++report.probe_bound_violations;
        if (qr.method != Method::NotFound) {
            ++report.intersecting_pairs;
            hit_us.push_back(us);
            hit_probes.push_back(qr.probes);
        }
        if (cfg.cross_check && ++idx % 100 == 0 && qr.distance) {
            ++report.cross_checked;
            const auto ref = bidirectional_bfs(g, s, t);
            if (!ref.distance || std::abs(*ref.distance - *qr.distance) > 1e-9)
                ++report.cross_check_mismatches;
        }
    }
    for (const auto& [s, t] : pairs) {
        const auto t0 = std::chrono::steady_clock::now();
        (void)bfs_distance(g, s, t);
        bfs_us.push_back(micros_since(t0));
    }
    for (const auto& [s, t] : pairs) {
        const auto t0 = std::chrono::steady_clock::now();
        (void)bidirectional_bfs(g, s, t);
        bidir_us.push_back(micros_since(t0));
    }

    const double bidir_mean = trimmed_mean(bidir_us);
    auto add_row = [&](const std::string& name, const std::vector<double>& us,
                       const std::vector<double>& probes) {
        LatencyRow row;
        row.method = name;
        row.mean_us = trimmed_mean(us);
        row.worst_us = us.empty() ? 0.0 : *std::max_element(us.begin(), us.end());
        row.mean_probes = probes.empty()
                              ? 0.0
                              : std::accumulate(probes.begin(), probes.end(), 0.0) / probes.size();
        row.speedup = row.mean_us > 0 ? bidir_mean / row.mean_us : 0.0;
        report.rows.push_back(row);
    };
    add_row("oracle", oracle_us, oracle_probes);
    add_row("oracle_intersecting", hit_us, hit_probes);
    add_row("bfs", bfs_us, {});
    add_row("bidirectional_bfs", bidir_us, {});
    return report;
}

SizeSurvey survey_vicinities(const Graph& g, double alpha, std::uint64_t seed) {
    SizeSurvey s;
    const LandmarkSet ls = sample_landmarks(g, alpha, seed);
    s.landmark_count = ls.members.size();
    for (NodeId u = 0; u < g.node_count(); ++u) {
        const VicinityTable vic = build_vicinity(g, u, ls);
        s.mean_vicinity += static_cast<double>(vic.size());
        s.max_vicinity = std::max(s.max_vicinity, static_cast<double>(vic.size()));
        s.mean_boundary += static_cast<double>(vic.boundary.size());
        s.max_boundary = std::max(s.max_boundary, static_cast<double>(vic.boundary.size()));
        s.mean_radius += ls.radius[u];
    }
    const double n = static_cast<double>(g.node_count());
    s.mean_vicinity /= n;
    s.mean_boundary /= n;
    s.mean_radius /= n;
    return s;
}

void write_intersection_csv(std::ostream& out, const IntersectionReport& r) {
    out << "alpha,trial,fraction\n";
    char buf[96];
    for (const auto& p : r.points) {
        std::snprintf(buf, sizeof buf, "%g,%u,%.6f\n", p.alpha, p.trial, p.fraction);
        out << buf;
    }
}

void write_boundary_cdf_csv(std::ostream& out, const std::vector<CdfPoint>& points) {
    out << "quantile,fraction_of_n\n";
    char buf[96];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.6f,%.8f\n", p.quantile, p.fraction_of_n);
        out << buf;
    }
}

void write_radius_csv(std::ostream& out, const std::vector<RadiusPoint>& points) {
    out << "alpha,mean_hops\n";
    char buf[96];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%g,%.6f\n", p.alpha, p.mean_hops);
        out << buf;
    }
}

void write_latency_csv(std::ostream& out, const LatencyReport& r) {
    out << "method,mean_us,worst_us,mean_probes,speedup\n";
    char buf[160];
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%s,%.3f,%.3f,%.2f,%.2f\n", row.method.c_str(), row.mean_us,
                      row.worst_us, row.mean_probes, row.speedup);
        out << buf;
    }
}

void write_run_metadata(std::ostream& out, const Graph& g, const ExperimentConfig& cfg) {
    nlohmann::json j{
        {"config",
         {{"alphas", cfg.alphas},
          {"nodes_per_trial", cfg.nodes_per_trial},
          {"trials", cfg.trials},
          {"seed", cfg.seed},
          {"boundary_alpha", cfg.boundary_alpha},
          {"latency_alpha", cfg.latency_alpha},
          {"latency_pairs", cfg.latency_pairs},
          {"cross_check", cfg.cross_check}}},
        {"graph",
         {{"n", g.node_count()},
          {"m", g.edge_count()},
          {"weighted", g.weighted()},
          {"fingerprint", g.fingerprint()}}},
        {"hardware",
         {{"hardware_concurrency", std::thread::hardware_concurrency()},
#if defined(__clang__)
          {"compiler", "clang " __clang_version__}
#elif defined(__GNUC__)
          {"compiler", "gcc " __VERSION__}
#else
          {"compiler", "unknown"}
#endif
         }},
        {"protocol",
         {{"vicinity_tables", "built for sampled nodes only"},
          {"landmark_tables", "built for sampled landmarks only"},
          {"bfs_early_exit", true},
          {"latency_mean", "top 1% trimmed"},
          {"latency_oracle_rows", "all sampled pairs and answered-only subset, both reported"},
          {"timing", "steady_clock, single-threaded, warmed"}}},
    };
    out << j.dump(2) << '\n';
}

}  // namespace vicinity
