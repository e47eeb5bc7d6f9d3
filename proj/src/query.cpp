#include "vicinity/query.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vicinity/baselines.hpp"
#include "vicinity/errors.hpp"

namespace vicinity {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_query_nodes(const Oracle& oracle, NodeId s, NodeId t) {
    const NodeId n = oracle.graph->node_count();
    if (s >= n || t >= n)
        throw NodeRangeError("node id out of range [0, " + std::to_string(n) + ")");
    if (!oracle.covers(s) || !oracle.covers(t))
        throw ValidationError("node not covered by this scoped build");
}

// walk stored parents from v to the owner of vic; chain stays inside the table
void walk_to_owner(const VicinityTable& vic, NodeId v, std::vector<NodeId>& out) {
    NodeId cur = v;
    std::size_t guard = vic.size() + 1;
    while (true) {
        out.push_back(cur);
        if (cur == vic.owner) return;
        const std::uint32_t idx = vic.find(cur);
        if (idx == VicinityTable::kNotFound || guard-- == 0)
            throw Error("corrupt vicinity parent chain");
        cur = vic.parents[idx];
    }
}

void walk_landmark_tree(const LandmarkTable& table, NodeId from, std::vector<NodeId>& out) {
    NodeId cur = from;
    std::size_t guard = table.dist.size() + 1;
    while (cur != kNoNode) {
        out.push_back(cur);
        if (cur == table.landmark) return;
        if (guard-- == 0) throw Error("corrupt landmark parent chain");
        cur = table.parent[cur];
    }
    throw Error("corrupt landmark parent chain");
}

QueryResult resolve(const Oracle& oracle, NodeId s, NodeId t, bool want_path) {
    check_query_nodes(oracle, s, t);
    QueryResult r;
    if (s == t) {
        r.distance = 0.0;
        r.method = Method::SameNode;
        if (want_path) r.path = {s};
        return r;
    }

    r.probes++;
    if (oracle.landmarks.contains(s)) {
        const LandmarkTable* table = oracle.table_of(s);
        if (!table) throw ValidationError("landmark table not built for this scope");
        if (table->dist[t] == kInf) {
            r.method = Method::NotFound;
            r.unreachable = true;
            return r;
        }
        r.distance = table->dist[t];
        r.method = Method::SourceLandmark;
        if (want_path) {
            walk_landmark_tree(*table, t, r.path);  // t .. s
            std::reverse(r.path.begin(), r.path.end());
        }
        return r;
    }

    r.probes++;
    if (oracle.landmarks.contains(t)) {
        const LandmarkTable* table = oracle.table_of(t);
        if (!table) throw ValidationError("landmark table not built for this scope");
        if (table->dist[s] == kInf) {
            r.method = Method::NotFound;
            r.unreachable = true;
            return r;
        }
        r.distance = table->dist[s];
        r.method = Method::TargetLandmark;
        if (want_path) walk_landmark_tree(*table, s, r.path);  // s .. t
        return r;
    }

    const VicinityTable& vs = oracle.vicinities[s];
    const VicinityTable& vt = oracle.vicinities[t];

    r.probes++;
    if (const std::uint32_t idx = vs.find(t); idx != VicinityTable::kNotFound) {
        r.distance = vs.dists[idx];
        r.method = Method::TargetInSourceVicinity;
        if (want_path) {
            walk_to_owner(vs, t, r.path);  // t .. s
            std::reverse(r.path.begin(), r.path.end());
        }
        return r;
    }

    r.probes++;
    if (const std::uint32_t idx = vt.find(s); idx != VicinityTable::kNotFound) {
        r.distance = vt.dists[idx];
        r.method = Method::SourceInTargetVicinity;
        if (want_path) walk_to_owner(vt, s, r.path);  // s .. t
        return r;
    }

    // boundary-restricted intersection over the smaller boundary side.
    // Neither node is in the other's vicinity here, so on unit-weight
    // graphs d(s,t) >= max(radius)+2; a candidate hitting that bound is
    // provably optimal and the scan can stop early.
    const bool s_side = vs.boundary.size() <= vt.boundary.size();
    const VicinityTable& mine = s_side ? vs : vt;
    const VicinityTable& other = s_side ? vt : vs;
    const double floor_bound =
        oracle.graph->weighted()
            ? -kInf
            : std::max(oracle.landmarks.radius[s], oracle.landmarks.radius[t]) + 2.0;
    double best = kInf;
    NodeId meet = kNoNode;
    for (const std::uint32_t bi : mine.boundary) {
        r.probes++;
        const std::uint32_t oi = other.find(mine.keys[bi]);
        if (oi == VicinityTable::kNotFound) continue;
        const double cand = mine.dists[bi] + other.dists[oi];
        if (cand < best) {
            best = cand;
            meet = mine.keys[bi];
            if (best <= floor_bound) break;
        }
    }
    if (best == kInf) {
        r.method = Method::NotFound;
        return r;
    }
    r.distance = best;
    r.method = Method::Intersection;
    r.meeting_node = meet;
    if (want_path) {
        walk_to_owner(vs, meet, r.path);  // meet .. s
        std::reverse(r.path.begin(), r.path.end());
        std::vector<NodeId> tail;
        walk_to_owner(vt, meet, tail);  // meet .. t
        r.path.insert(r.path.end(), tail.begin() + 1, tail.end());
    }
    return r;
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::SameNode: return "SAME_NODE";
        case Method::SourceLandmark: return "SOURCE_LANDMARK";
        case Method::TargetLandmark: return "TARGET_LANDMARK";
        case Method::TargetInSourceVicinity: return "TARGET_IN_SOURCE_VICINITY";
        case Method::SourceInTargetVicinity: return "SOURCE_IN_TARGET_VICINITY";
        case Method::Intersection: return "INTERSECTION";
        case Method::Fallback: return "FALLBACK";
        case Method::NotFound: return "NOT_FOUND";
    }
    return "NOT_FOUND";
}

QueryResult query_distance(const Oracle& oracle, NodeId s, NodeId t) {
    return resolve(oracle, s, t, false);
}

QueryResult query_path(const Oracle& oracle, NodeId s, NodeId t) {
    return resolve(oracle, s, t, true);
}

QueryResult query_with_fallback(const Oracle& oracle, NodeId s, NodeId t, FallbackKind fallback,
                                bool want_path) {
    QueryResult r = resolve(oracle, s, t, want_path);
    if (r.method != Method::NotFound || r.unreachable) return r;

    FallbackKind kind = fallback;
    if (kind == FallbackKind::Auto)
        kind = oracle.graph->weighted() ? FallbackKind::Dijkstra : FallbackKind::BidirectionalBfs;
    SearchResult sr;
    switch (kind) {
        case FallbackKind::Bfs: sr = bfs_distance(*oracle.graph, s, t, want_path); break;
        case FallbackKind::Dijkstra: sr = dijkstra_distance(*oracle.graph, s, t, want_path); break;
        default: sr = bidirectional_bfs(*oracle.graph, s, t, want_path); break;
    }
    if (!sr.distance) {
        r.unreachable = true;
        return r;
    }
    r.distance = sr.distance;
    r.method = Method::Fallback;
    r.path = std::move(sr.path);
    return r;
}

}  // namespace vicinity
