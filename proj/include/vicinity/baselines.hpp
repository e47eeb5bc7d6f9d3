#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vicinity/graph.hpp"

namespace vicinity {

struct SearchStats {
    std::uint64_t settled_nodes = 0;
    std::uint64_t edge_scans = 0;
    double seconds = 0.0;
};

struct SearchResult {
    std::optional<double> distance;  // empty: unreachable
    SearchStats stats;
    std::vector<NodeId> path;  // filled when want_path and reachable
};

// Unit-weight breadth-first search with early exit at the target.
// Throws ValidationError on weighted graphs.
SearchResult bfs_distance(const Graph& g, NodeId s, NodeId t, bool want_path = false);

// Alternating level expansion from both endpoints, always growing the
// smaller frontier; finishes when the completed depths prove the best
// meeting candidate optimal. Agrees with bfs_distance on all inputs.
SearchResult bidirectional_bfs(const Graph& g, NodeId s, NodeId t, bool want_path = false);

// Nonnegative-weight Dijkstra with early exit at the target.
SearchResult dijkstra_distance(const Graph& g, NodeId s, NodeId t, bool want_path = false);

// Dense all-pairs matrix; symmetric, zero diagonal. Ground truth for the
// invariant suites. Throws ValidationError above the node cap.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(NodeId n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0.0) {}
    double at(NodeId i, NodeId j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    double& at(NodeId i, NodeId j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    NodeId size() const { return n_; }

private:
    NodeId n_ = 0;
    std::vector<double> d_;
};

DistanceMatrix all_pairs_reference(const Graph& g, NodeId node_cap = 2000);

// Exact full single-source distances and shortest-path-tree parents.
void single_source_shortest_paths(const Graph& g, NodeId source, std::vector<double>& dist,
                                  std::vector<NodeId>& parent);

}  // namespace vicinity
