#include "vicinity/landmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "vicinity/errors.hpp"
#include "vicinity/rng.hpp"

namespace vicinity {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One sweep from all members at once. Keys are (distance, landmark id)
// pairs, so each node settles with its nearest landmark and the smallest
// landmark id among equidistant ones.
void nearest_landmark_sweep(const Graph& g, LandmarkSet& ls) {
    const NodeId n = g.node_count();
    ls.nearest.assign(n, kNoNode);
    ls.radius.assign(n, kInf);
    using Key = std::pair<double, NodeId>;  // (dist, owner)
    std::vector<Key> best(n, {kInf, kNoNode});
    std::priority_queue<std::pair<Key, NodeId>, std::vector<std::pair<Key, NodeId>>, std::greater<>>
        heap;
    for (NodeId a : ls.members) {
        best[a] = {0.0, a};
        heap.push({{0.0, a}, a});
    }
    while (!heap.empty()) {
        auto [key, u] = heap.top();
        heap.pop();
        if (key > best[u]) continue;
        auto nbrs = g.neighbors(u);
        auto ws = g.weighted() ? g.neighbor_weights(u) : std::span<const double>{};
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            const NodeId v = nbrs[i];
            const Key cand{key.first + (g.weighted() ? ws[i] : 1.0), key.second};
            if (cand < best[v]) {
                best[v] = cand;
                heap.push({cand, v});
            }
        }
    }
    for (NodeId u = 0; u < n; ++u) {
        ls.radius[u] = best[u].first;
        ls.nearest[u] = best[u].second;
    }
}

void finalize(const Graph& g, LandmarkSet& ls) {
    std::sort(ls.members.begin(), ls.members.end());
    ls.members.erase(std::unique(ls.members.begin(), ls.members.end()), ls.members.end());
    ls.is_member.assign(g.node_count(), 0);
    ls.rank.assign(g.node_count(), LandmarkSet::kNoRank);
    for (std::uint32_t i = 0; i < ls.members.size(); ++i) {
        ls.is_member[ls.members[i]] = 1;
        ls.rank[ls.members[i]] = i;
    }
    nearest_landmark_sweep(g, ls);
}

}  // namespace

LandmarkSet sample_landmarks(const Graph& g, double alpha, std::uint64_t seed) {
    if (!(alpha > 0.0)) throw ValidationError("alpha must be positive");
    if (g.node_count() == 0) throw ValidationError("empty graph");
    const NodeId n = g.node_count();
    const double scale = 2.0 / (alpha * std::sqrt(static_cast<double>(n)));

    LandmarkSet ls;
    Rng rng(seed);
    for (NodeId u = 0; u < n; ++u) {
        const double p = std::min(1.0, scale * g.degree(u));
        if (rng.next_double() < p) ls.members.push_back(u);
    }

    // any component left uncovered force-includes its highest-degree node
    ComponentMap cm = connected_components(g);
    std::vector<std::uint8_t> covered(cm.component_sizes.size(), 0);
    for (NodeId a : ls.members) covered[cm.component_id[a]] = 1;
    std::vector<NodeId> forced(cm.component_sizes.size(), kNoNode);
    for (NodeId u = 0; u < n; ++u) {
        const NodeId c = cm.component_id[u];
        if (covered[c]) continue;
        if (forced[c] == kNoNode || g.degree(u) > g.degree(forced[c])) forced[c] = u;
    }
    for (NodeId u : forced)
        if (u != kNoNode) ls.members.push_back(u);

    finalize(g, ls);
    return ls;
}

LandmarkSet landmark_set_from_members(const Graph& g, std::vector<NodeId> members) {
    if (g.node_count() == 0) throw ValidationError("empty graph");
    for (NodeId a : members)
        if (a >= g.node_count()) throw NodeRangeError("landmark id out of range");
    if (members.empty()) throw ValidationError("landmark set must be non-empty");
    LandmarkSet ls;
    ls.members = std::move(members);
    finalize(g, ls);
    for (NodeId u = 0; u < g.node_count(); ++u)
        if (ls.radius[u] == kInf)
            throw ValidationError("component of node " + std::to_string(u) + " has no landmark");
    return ls;
}

}  // namespace vicinity
