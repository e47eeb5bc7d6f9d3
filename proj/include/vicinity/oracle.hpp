#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vicinity/graph.hpp"
#include "vicinity/landmarks.hpp"

namespace vicinity {

// Per-node vicinity: exact distances and shortest-path-tree parents for
// every member of Gamma(u) = B(u) + N(B(u)), where the ball B(u) holds all
// nodes within distance radius(u) of u (inclusive). Parents point toward
// the owner, so path reconstruction never leaves the table. Members of the
// landmark set own empty tables; their queries are answered from landmark
// tables instead.
class VicinityTable {
public:
    static constexpr std::uint32_t kNotFound = 0xFFFFFFFFu;

    NodeId owner = kNoNode;
    std::vector<NodeId> keys;           // Gamma(u), ascending
    std::vector<double> dists;          // exact d(owner, keys[i])
    std::vector<NodeId> parents;        // neighbor of keys[i] preceding it; kNoNode for owner
    std::vector<std::uint32_t> boundary;  // indices into keys, ascending
    std::uint32_t ball_size = 0;        // |B(u)|

    std::size_t size() const { return keys.size(); }
    bool empty() const { return keys.empty(); }

    // Membership probe; one call is one hash lookup.
    std::uint32_t find(NodeId v) const {
        if (slots_.empty()) return kNotFound;
        const std::uint32_t mask = static_cast<std::uint32_t>(slots_.size() - 1);
        std::uint32_t i = (v * 0x9E3779B9u) & mask;
        while (true) {
            const std::uint32_t s = slots_[i];
            if (s == kNotFound) return kNotFound;
            if (keys[s] == v) return s;
            i = (i + 1) & mask;
        }
    }

    void rebuild_index();  // fills slots_ from keys

private:
    std::vector<std::uint32_t> slots_;  // open addressing, power-of-two
};

// Full single-source tree rooted at one landmark.
struct LandmarkTable {
    NodeId landmark = kNoNode;
    std::vector<double> dist;    // per node; +inf when unreachable
    std::vector<NodeId> parent;  // shortest-path-tree parent toward the landmark
};

struct BuildStats {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t landmark_count = 0;
    double mean_vicinity = 0.0;
    double max_vicinity = 0.0;
    double mean_boundary = 0.0;
    double max_boundary = 0.0;
    double mean_radius = 0.0;
    double build_seconds = 0.0;
    unsigned workers = 1;
};

std::string build_stats_json(const BuildStats& s);

struct BuildOptions {
    double alpha = 4.0;
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0: hardware concurrency
    // Empty: index every node. Otherwise vicinity tables are built only for
    // these nodes (and landmark tables only for landmarks among them);
    // queries are then restricted to this set.
    std::vector<NodeId> scope;
    // Fixture path: bypasses sampling.
    std::vector<NodeId> explicit_landmarks;
};

class Oracle {
public:
    std::shared_ptr<const Graph> graph;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    LandmarkSet landmarks;
    std::vector<LandmarkTable> landmark_tables;  // aligned with landmarks.members
    std::vector<VicinityTable> vicinities;       // per node; empty when not built
    BuildStats stats;

    bool full() const { return scope_all_; }
    bool covers(NodeId u) const { return scope_all_ || in_scope_[u]; }
    const LandmarkTable* table_of(NodeId landmark) const;

    friend Oracle build_oracle(std::shared_ptr<const Graph> g, const BuildOptions& options);
    friend class IndexReader;

private:
    bool scope_all_ = true;
    std::vector<std::uint8_t> in_scope_;
};

// Truncated expansion from u: BFS through depth radius(u)+1 for unit
// weights; for weighted graphs the expansion keeps settling until every
// ball member and ball neighbor has an exact distance.
VicinityTable build_vicinity(const Graph& g, NodeId u, const LandmarkSet& landmarks);

// { v in Gamma(u) : some neighbor of v lies outside Gamma(u) }, ascending.
std::vector<NodeId> compute_boundary(const Graph& g, const VicinityTable& vic);

std::vector<LandmarkTable> build_landmark_tables(const Graph& g, const LandmarkSet& landmarks);

// Offline phase: sampling, landmark tables, per-node vicinities. Output is
// identical for a fixed (graph, alpha, seed) regardless of worker count.
Oracle build_oracle(std::shared_ptr<const Graph> g, const BuildOptions& options = {});

}  // namespace vicinity
