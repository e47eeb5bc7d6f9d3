#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vicinity/graph.hpp"

namespace vicinity {

struct ExperimentConfig {
    std::vector<double> alphas{1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1, 2, 4, 8, 16};
    std::uint32_t nodes_per_trial = 200;
    std::uint32_t trials = 5;
    std::uint64_t seed = 1;
    double boundary_alpha = 4.0;   // boundary CDF operating point
    double latency_alpha = 4.0;    // latency rows operating point
    std::uint32_t latency_pairs = 2000;
    unsigned workers = 0;
    bool cross_check = true;  // validate 1% of answers against bidirectional bfs

    void validate() const;  // throws ValidationError
};

ExperimentConfig parse_experiment_config(std::istream& in);

// Per-(alpha, trial) fraction of sampled pairs the oracle answers without
// fallback. Landmark seeds are fixed per trial across alphas, so sets are
// nested in alpha and fractions compare pairwise.
struct IntersectionPoint {
    double alpha;
    std::uint32_t trial;
    double fraction;
};
struct IntersectionReport {
    std::vector<IntersectionPoint> points;
    std::uint64_t cross_check_mismatches = 0;
    std::uint64_t cross_checked = 0;
};
IntersectionReport run_intersection_experiment(const Graph& g, const ExperimentConfig& cfg);

// Empirical CDF of |B(Gamma(u))| / n over sampled nodes at boundary_alpha.
struct CdfPoint {
    double quantile;
    double fraction_of_n;
};
std::vector<CdfPoint> run_boundary_cdf(const Graph& g, const ExperimentConfig& cfg);

// Mean d(u, l(u)) over all nodes per alpha, averaged over trials.
struct RadiusPoint {
    double alpha;
    double mean_hops;
};
std::vector<RadiusPoint> run_radius_stats(const Graph& g, const ExperimentConfig& cfg);

struct LatencyRow {
    std::string method;
    double mean_us = 0;
    double worst_us = 0;
    double mean_probes = 0;
    double speedup = 0;  // bidirectional bfs mean / this mean
};
struct LatencyReport {
    std::vector<LatencyRow> rows;
    std::uint64_t pairs = 0;
    std::uint64_t intersecting_pairs = 0;
    std::uint64_t probe_bound_violations = 0;
    std::uint64_t cross_check_mismatches = 0;
    std::uint64_t cross_checked = 0;
};
// Single-threaded per-query wall times over sampled pairs: oracle over all
// pairs and over the answered-only subset (both labeled), bfs, and
// bidirectional bfs. Means are top-1%-trimmed; worst is the raw max.
LatencyReport run_latency_bench(const Graph& g, const ExperimentConfig& cfg);

// Build-size survey: constructs every vicinity once, keeps only the sizes.
struct SizeSurvey {
    std::uint64_t landmark_count = 0;
    double mean_vicinity = 0;
    double max_vicinity = 0;
    double mean_boundary = 0;
    double max_boundary = 0;
    double mean_radius = 0;
};
SizeSurvey survey_vicinities(const Graph& g, double alpha, std::uint64_t seed);

void write_intersection_csv(std::ostream& out, const IntersectionReport& r);
void write_boundary_cdf_csv(std::ostream& out, const std::vector<CdfPoint>& points);
void write_radius_csv(std::ostream& out, const std::vector<RadiusPoint>& points);
void write_latency_csv(std::ostream& out, const LatencyReport& r);
// Config, graph fingerprint, hardware note, and protocol notes as JSON.
void write_run_metadata(std::ostream& out, const Graph& g, const ExperimentConfig& cfg);

}  // namespace vicinity
