#include "vicinity/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <queue>

#include "vicinity/errors.hpp"

namespace vicinity {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kUnset = 0xFFFFFFFFu;

void check_node(const Graph& g, NodeId v) {
    if (v >= g.node_count())
        throw NodeRangeError("node id " + std::to_string(v) + " out of range [0, " +
                             std::to_string(g.node_count()) + ")");
}

// Epoch-stamped per-thread scratch: repeat searches skip the O(n) clear.
struct Scratch {
    std::vector<std::uint32_t> stamp_a, stamp_b;
    std::vector<std::uint32_t> dist_a, dist_b;
    std::vector<double> wdist;
    std::vector<NodeId> parent_a, parent_b;
    std::vector<NodeId> frontier, next, queue;
    std::uint32_t epoch = 0;

    void prepare(NodeId n) {
        if (stamp_a.size() < n) {
            stamp_a.assign(n, 0);
            stamp_b.assign(n, 0);
            dist_a.resize(n);
            dist_b.resize(n);
            wdist.resize(n);
            parent_a.resize(n);
            parent_b.resize(n);
        }
        if (++epoch == 0) {  // stamp wrap: hard reset
            std::fill(stamp_a.begin(), stamp_a.end(), 0);
            std::fill(stamp_b.begin(), stamp_b.end(), 0);
            epoch = 1;
        }
    }
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

std::vector<NodeId> chain_path(const std::vector<NodeId>& parent, NodeId from, NodeId root) {
    std::vector<NodeId> path;
    for (NodeId v = from; v != kNoNode; v = parent[v]) {
        path.push_back(v);
        if (v == root) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

SearchResult bfs_distance(const Graph& g, NodeId s, NodeId t, bool want_path) {
    check_node(g, s);
    check_node(g, t);
    if (g.weighted()) throw ValidationError("bfs requires unit weights; use dijkstra_distance");
    const auto t0 = std::chrono::steady_clock::now();
    SearchResult out;
    Scratch& sc = scratch();
    sc.prepare(g.node_count());
    if (s == t) {
        out.distance = 0.0;
        if (want_path) out.path = {s};
        out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }
    sc.queue.clear();
    sc.queue.push_back(s);
    sc.stamp_a[s] = sc.epoch;
    sc.dist_a[s] = 0;
    sc.parent_a[s] = kNoNode;
    for (std::size_t head = 0; head < sc.queue.size(); ++head) {
        const NodeId u = sc.queue[head];
        out.stats.settled_nodes++;
        if (u == t) {
            out.distance = static_cast<double>(sc.dist_a[u]);
            if (want_path) out.path = chain_path(sc.parent_a, t, s);
            break;
        }
        for (NodeId v : g.neighbors(u)) {
            out.stats.edge_scans++;
            if (sc.stamp_a[v] != sc.epoch) {
                sc.stamp_a[v] = sc.epoch;
                sc.dist_a[v] = sc.dist_a[u] + 1;
                sc.parent_a[v] = u;
                sc.queue.push_back(v);
            }
        }
    }
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

SearchResult bidirectional_bfs(const Graph& g, NodeId s, NodeId t, bool want_path) {
    check_node(g, s);
    check_node(g, t);
    if (g.weighted()) throw ValidationError("bidirectional bfs requires unit weights; use dijkstra_distance");
    const auto t0 = std::chrono::steady_clock::now();
    SearchResult out;
    Scratch& sc = scratch();
    sc.prepare(g.node_count());
    if (s == t) {
        out.distance = 0.0;
        if (want_path) out.path = {s};
        out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return out;
    }

    sc.stamp_a[s] = sc.epoch;
    sc.dist_a[s] = 0;
    sc.parent_a[s] = kNoNode;
    sc.stamp_b[t] = sc.epoch;
    sc.dist_b[t] = 0;
    sc.parent_b[t] = kNoNode;
    std::vector<NodeId> frontier_s{s}, frontier_t{t}, next;
    std::uint32_t depth_s = 0, depth_t = 0;
    std::uint32_t best = kUnset;
    NodeId meet = kNoNode;

    while (!frontier_s.empty() && !frontier_t.empty()) {
        if (best != kUnset && depth_s + depth_t >= best) break;
        const bool expand_s = frontier_s.size() <= frontier_t.size();
        auto& frontier = expand_s ? frontier_s : frontier_t;
        auto& stamp_mine = expand_s ? sc.stamp_a : sc.stamp_b;
        auto& dist_mine = expand_s ? sc.dist_a : sc.dist_b;
        auto& parent_mine = expand_s ? sc.parent_a : sc.parent_b;
        auto& stamp_other = expand_s ? sc.stamp_b : sc.stamp_a;
        auto& dist_other = expand_s ? sc.dist_b : sc.dist_a;
        next.clear();
        for (NodeId u : frontier) {
            out.stats.settled_nodes++;
            for (NodeId v : g.neighbors(u)) {
                out.stats.edge_scans++;
                if (stamp_mine[v] == sc.epoch) continue;
                stamp_mine[v] = sc.epoch;
                dist_mine[v] = dist_mine[u] + 1;
                parent_mine[v] = u;
                next.push_back(v);
                if (stamp_other[v] == sc.epoch) {
                    const std::uint32_t cand = dist_mine[v] + dist_other[v];
                    if (cand < best) {
                        best = cand;
                        meet = v;
                    }
                }
            }
        }
        frontier.swap(next);
        (expand_s ? depth_s : depth_t)++;
    }

    if (best != kUnset) {
        out.distance = static_cast<double>(best);
        if (want_path) {
            out.path = chain_path(sc.parent_a, meet, s);
            for (NodeId v = sc.parent_b[meet]; v != kNoNode; v = sc.parent_b[v]) out.path.push_back(v);
        }
    }
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

SearchResult dijkstra_distance(const Graph& g, NodeId s, NodeId t, bool want_path) {
    check_node(g, s);
    check_node(g, t);
    const auto t0 = std::chrono::steady_clock::now();
    SearchResult out;
    Scratch& sc = scratch();
    sc.prepare(g.node_count());
    sc.stamp_a[s] = sc.epoch;
    sc.wdist[s] = 0.0;
    sc.parent_a[s] = kNoNode;
    // (dist, node) keys make pop order and tree parents deterministic
    std::priority_queue<std::pair<double, NodeId>, std::vector<std::pair<double, NodeId>>,
                        std::greater<>>
        heap;
    heap.push({0.0, s});
    std::vector<std::uint32_t>& settled = sc.stamp_b;  // reused as settled marks
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (settled[u] == sc.epoch) continue;
        settled[u] = sc.epoch;
        out.stats.settled_nodes++;
        if (u == t) {
            out.distance = d;
            if (want_path) out.path = chain_path(sc.parent_a, t, s);
            break;
        }
        auto nbrs = g.neighbors(u);
        auto ws = g.weighted() ? g.neighbor_weights(u) : std::span<const double>{};
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            out.stats.edge_scans++;
            const NodeId v = nbrs[i];
            const double nd = d + (g.weighted() ? ws[i] : 1.0);
            if (sc.stamp_a[v] != sc.epoch || nd < sc.wdist[v]) {
                sc.stamp_a[v] = sc.epoch;
                sc.wdist[v] = nd;
                sc.parent_a[v] = u;
                heap.push({nd, v});
            }
        }
    }
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

void single_source_shortest_paths(const Graph& g, NodeId source, std::vector<double>& dist,
                                  std::vector<NodeId>& parent) {
    check_node(g, source);
    const NodeId n = g.node_count();
    dist.assign(n, kInf);
    parent.assign(n, kNoNode);
    if (!g.weighted()) {
        std::vector<NodeId> queue;
        queue.reserve(64);
        queue.push_back(source);
        dist[source] = 0.0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId u = queue[head];
            for (NodeId v : g.neighbors(u)) {
                if (dist[v] == kInf) {
                    dist[v] = dist[u] + 1.0;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        return;
    }
    std::priority_queue<std::pair<double, NodeId>, std::vector<std::pair<double, NodeId>>,
                        std::greater<>>
        heap;
    std::vector<std::uint8_t> settled(n, 0);
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (settled[u]) continue;
        settled[u] = 1;
        auto nbrs = g.neighbors(u);
        auto ws = g.neighbor_weights(u);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            const double nd = d + ws[i];
            if (nd < dist[nbrs[i]]) {
                dist[nbrs[i]] = nd;
                parent[nbrs[i]] = u;
                heap.push({nd, nbrs[i]});
            }
        }
    }
}

DistanceMatrix all_pairs_reference(const Graph& g, NodeId node_cap) {
    if (g.node_count() > node_cap)
        throw ValidationError("all-pairs reference capped at " + std::to_string(node_cap) + " nodes");
    DistanceMatrix m(g.node_count());
    std::vector<double> dist;
    std::vector<NodeId> parent;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        single_source_shortest_paths(g, s, dist, parent);
        for (NodeId v = 0; v < g.node_count(); ++v) m.at(s, v) = dist[v];
    }
    return m;
}

}  // namespace vicinity
