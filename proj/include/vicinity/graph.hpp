#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace vicinity {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xFFFFFFFFu;

struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    double w = 1.0;
};

// Immutable undirected graph in compressed sparse row form. Node ids are
// dense in [0, n); neighbor lists are sorted ascending; per-half-edge
// weights are symmetric and only stored for weighted graphs. Safe for
// concurrent reads once constructed.
class Graph {
public:
    Graph() = default;

    // Normalizes the edge set: self-loops dropped, duplicates collapsed to
    // the minimum weight, both directions materialized. Throws
    // ValidationError on out-of-range endpoints or negative weights.
    Graph(NodeId node_count, std::vector<Edge> edges, bool weighted);

    NodeId node_count() const { return n_; }
    std::uint64_t edge_count() const { return m_; }
    bool weighted() const { return !weights_.empty(); }

    std::uint32_t degree(NodeId u) const {
        return static_cast<std::uint32_t>(offsets_[u + 1] - offsets_[u]);
    }
    std::span<const NodeId> neighbors(NodeId u) const {
        return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
    }
    // Weights aligned with neighbors(u); unit weights for unweighted graphs.
    std::span<const double> neighbor_weights(NodeId u) const {
        return {weights_.data() + offsets_[u], weights_.data() + offsets_[u + 1]};
    }

    // FNV-1a over (n, m, degree sequence); used to bind index files to the
    // graph they were built from.
    std::uint64_t fingerprint() const;

private:
    NodeId n_ = 0;
    std::uint64_t m_ = 0;  // undirected edge count
    std::vector<std::uint64_t> offsets_;
    std::vector<NodeId> adj_;
    std::vector<double> weights_;
};

struct ParseOptions {
    bool treat_as_undirected = true;  // false: input must already list both directions
    bool weighted = false;            // true: third column required per edge line
};

struct ParsedGraph {
    Graph graph;
    std::vector<std::uint64_t> original_ids;  // new id -> original id (ascending)
};

// Edge-list text: "u v" or "u v w" per line, '#'/'%' comment lines, blank
// lines ignored. Original ids are remapped to dense [0, n) by ascending
// rank, so already-dense input round-trips under the identity map.
ParsedGraph parse_edge_list(std::istream& in, const ParseOptions& options = {});

// One "u v [w]" line per undirected edge, endpoints ascending.
void write_edge_list(std::ostream& out, const Graph& g);

// Two-column "original new" id mapping, as emitted next to built indexes.
void write_id_mapping(std::ostream& out, const std::vector<std::uint64_t>& original_ids);

struct ComponentMap {
    std::vector<NodeId> component_id;         // per node
    std::vector<std::uint32_t> component_sizes;
};

ComponentMap connected_components(const Graph& g);

struct LccResult {
    Graph graph;
    std::vector<NodeId> original_of_new;  // surviving old ids, ascending
    ComponentMap components;              // of the input graph
};

// Keeps the largest component; ties broken by the component containing the
// smallest original node id. Throws ValidationError on an empty graph.
LccResult largest_connected_component(const Graph& g);

// Preferential attachment: seed clique on edges_per_node+1 nodes, then each
// new node attaches to edges_per_node distinct degree-proportional targets.
// Deterministic for a fixed seed; always connected.
Graph gen_barabasi_albert(NodeId n, std::uint32_t edges_per_node, std::uint64_t seed);

// G(n, p) via geometric skipping; deterministic for a fixed seed.
Graph gen_erdos_renyi(NodeId n, double p, std::uint64_t seed);

}  // namespace vicinity
