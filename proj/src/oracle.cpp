#include "vicinity/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <thread>

#include <nlohmann/json.hpp>

#include "vicinity/baselines.hpp"
#include "vicinity/errors.hpp"

namespace vicinity {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct VicinityScratch {
    std::vector<std::uint32_t> stamp;
    std::vector<double> dist;
    std::vector<NodeId> parent;
    std::vector<std::uint8_t> required;
    std::vector<NodeId> queue, touched;
    std::uint32_t epoch = 0;

    void prepare(NodeId n) {
        if (stamp.size() < n) {
            stamp.assign(n, 0);
            dist.resize(n);
            parent.resize(n);
            required.assign(n, 0);
        }
        if (++epoch == 0) {
            std::fill(stamp.begin(), stamp.end(), 0);
            epoch = 1;
        }
    }
};

VicinityScratch& vic_scratch() {
    thread_local VicinityScratch s;
    return s;
}

// Unit weights: everything within depth radius+1 is exactly Gamma(u), and
// BFS depths are exact distances.
void expand_unweighted(const Graph& g, NodeId u, std::uint32_t radius_hops, VicinityScratch& sc) {
    const std::uint32_t limit = radius_hops + 1;
    sc.queue.clear();
    sc.queue.push_back(u);
    sc.stamp[u] = sc.epoch;
    sc.dist[u] = 0.0;
    sc.parent[u] = kNoNode;
    for (std::size_t head = 0; head < sc.queue.size(); ++head) {
        const NodeId x = sc.queue[head];
        if (sc.dist[x] >= limit) break;  // queue is depth-ordered
        for (NodeId y : g.neighbors(x)) {
            if (sc.stamp[y] != sc.epoch) {
                sc.stamp[y] = sc.epoch;
                sc.dist[y] = sc.dist[x] + 1.0;
                sc.parent[y] = x;
                sc.queue.push_back(y);
            }
        }
    }
    sc.touched = sc.queue;
}

// Weighted: tentative frontier distances are not exact, so the expansion
// settles nodes (in distance order) until every ball member and every
// neighbor of a ball member is settled. required[v] bits: 1 = belongs to
// Gamma(u), 4 = settled; all flags are zeroed again by the caller.
void expand_weighted(const Graph& g, NodeId u, double radius, VicinityScratch& sc) {
    sc.touched.clear();
    std::priority_queue<std::pair<double, NodeId>, std::vector<std::pair<double, NodeId>>,
                        std::greater<>>
        heap;
    sc.stamp[u] = sc.epoch;
    sc.dist[u] = 0.0;
    sc.parent[u] = kNoNode;
    heap.push({0.0, u});
    std::size_t pending = 0;  // required nodes not yet settled
    while (!heap.empty()) {
        auto [d, x] = heap.top();
        heap.pop();
        if (d > sc.dist[x] || (sc.required[x] & 4)) continue;
        if (d > radius && pending == 0) break;  // ball complete, nothing awaited
        sc.required[x] |= 4;
        sc.touched.push_back(x);
        if (sc.required[x] & 1) --pending;
        if (d <= radius) {
            // ball member: itself and all neighbors belong to Gamma(u)
            sc.required[x] |= 1;
            for (NodeId y : g.neighbors(x)) {
                if (!(sc.required[y] & 1)) {
                    sc.required[y] |= 1;
                    if (!(sc.required[y] & 4)) ++pending;
                }
            }
        }
        auto nbrs = g.neighbors(x);
        auto ws = g.neighbor_weights(x);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            const NodeId y = nbrs[i];
            const double nd = d + ws[i];
            if (sc.stamp[y] != sc.epoch || nd < sc.dist[y]) {
                sc.stamp[y] = sc.epoch;
                sc.dist[y] = nd;
                sc.parent[y] = x;
                heap.push({nd, y});
            }
        }
    }
}

}  // namespace

void VicinityTable::rebuild_index() {
    slots_.clear();
    if (keys.empty()) return;
    std::size_t cap = std::bit_ceil(keys.size() * 16 / 11 + 1);
    slots_.assign(cap, kNotFound);
    const std::uint32_t mask = static_cast<std::uint32_t>(cap - 1);
    for (std::uint32_t idx = 0; idx < keys.size(); ++idx) {
        std::uint32_t i = (keys[idx] * 0x9E3779B9u) & mask;
        while (slots_[i] != kNotFound) i = (i + 1) & mask;
        slots_[i] = idx;
    }
}

VicinityTable build_vicinity(const Graph& g, NodeId u, const LandmarkSet& landmarks) {
    if (u >= g.node_count()) throw NodeRangeError("node id out of range");
    VicinityTable vic;
    vic.owner = u;
    if (landmarks.contains(u)) return vic;  // answered from its landmark table

    VicinityScratch& sc = vic_scratch();
    sc.prepare(g.node_count());
    const double radius = landmarks.radius[u];

    struct Entry {
        NodeId node;
        double dist;
        NodeId parent;
    };
    std::vector<Entry> entries;
    if (!g.weighted()) {
        expand_unweighted(g, u, static_cast<std::uint32_t>(radius), sc);
        entries.reserve(sc.touched.size());
        for (NodeId v : sc.touched) entries.push_back({v, sc.dist[v], sc.parent[v]});
    } else {
        expand_weighted(g, u, radius, sc);
        for (NodeId v : sc.touched) {
            if (sc.required[v] & 1) entries.push_back({v, sc.dist[v], sc.parent[v]});
            sc.required[v] = 0;
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.node < b.node; });

    vic.keys.reserve(entries.size());
    vic.dists.reserve(entries.size());
    vic.parents.reserve(entries.size());
    for (const Entry& e : entries) {
        vic.keys.push_back(e.node);
        vic.dists.push_back(e.dist);
        vic.parents.push_back(e.parent);
        if (e.dist <= radius) vic.ball_size++;
    }
    vic.rebuild_index();
    for (std::uint32_t i = 0; i < vic.keys.size(); ++i) {
        for (NodeId y : g.neighbors(vic.keys[i])) {
            if (vic.find(y) == VicinityTable::kNotFound) {
                vic.boundary.push_back(i);
                break;
            }
        }
    }
    return vic;
}

std::vector<NodeId> compute_boundary(const Graph& g, const VicinityTable& vic) {
    std::vector<NodeId> out;
    for (std::uint32_t i : vic.boundary) out.push_back(vic.keys[i]);
    if (!vic.boundary.empty() || vic.keys.empty()) return out;
    for (NodeId v : vic.keys) {
        for (NodeId y : g.neighbors(v)) {
            if (vic.find(y) == VicinityTable::kNotFound) {
                out.push_back(v);
                break;
            }
        }
    }
    return out;
}

std::vector<LandmarkTable> build_landmark_tables(const Graph& g, const LandmarkSet& landmarks) {
    std::vector<LandmarkTable> tables(landmarks.members.size());
    for (std::size_t i = 0; i < landmarks.members.size(); ++i) {
        tables[i].landmark = landmarks.members[i];
        single_source_shortest_paths(g, landmarks.members[i], tables[i].dist, tables[i].parent);
    }
    return tables;
}

const LandmarkTable* Oracle::table_of(NodeId landmark) const {
    const std::uint32_t r = landmarks.rank[landmark];
    if (r == LandmarkSet::kNoRank) return nullptr;
    const LandmarkTable& t = landmark_tables[r];
    return t.dist.empty() ? nullptr : &t;
}

namespace {

void run_chunked(std::size_t count, unsigned workers, const std::function<void(std::size_t, std::size_t)>& chunk_fn) {
    if (workers <= 1 || count < 2) {
        chunk_fn(0, count);
        return;
    }
    const std::size_t per = (count + workers - 1) / workers;
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * per;
        if (lo >= count) break;
        const std::size_t hi = std::min(count, lo + per);
        threads.emplace_back(chunk_fn, lo, hi);
    }
    for (auto& t : threads) t.join();
}

}  // namespace

Oracle build_oracle(std::shared_ptr<const Graph> g, const BuildOptions& options) {
    if (!g || g->node_count() == 0) throw ValidationError("empty graph");
    if (!(options.alpha > 0.0)) throw ValidationError("alpha must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    const NodeId n = g->node_count();
    unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;

    Oracle oracle;
    oracle.graph = g;
    oracle.alpha = options.alpha;
    oracle.seed = options.seed;
    oracle.landmarks = options.explicit_landmarks.empty()
                           ? sample_landmarks(*g, options.alpha, options.seed)
                           : landmark_set_from_members(*g, options.explicit_landmarks);

    std::vector<NodeId> scope = options.scope;
    if (!scope.empty()) {
        std::sort(scope.begin(), scope.end());
        scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
        for (NodeId u : scope)
            if (u >= n) throw NodeRangeError("scope node out of range");
        oracle.scope_all_ = false;
        oracle.in_scope_.assign(n, 0);
        for (NodeId u : scope) oracle.in_scope_[u] = 1;
    }

    // landmark tables: all members for a full build, scoped members otherwise
    const auto& members = oracle.landmarks.members;
    oracle.landmark_tables.resize(members.size());
    std::vector<std::size_t> table_jobs;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (oracle.scope_all_ || oracle.in_scope_[members[i]]) table_jobs.push_back(i);
        oracle.landmark_tables[i].landmark = members[i];
    }
    run_chunked(table_jobs.size(), workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) {
            LandmarkTable& t = oracle.landmark_tables[table_jobs[j]];
            single_source_shortest_paths(*g, t.landmark, t.dist, t.parent);
        }
    });

    oracle.vicinities.resize(n);
    if (oracle.scope_all_) {
        run_chunked(n, workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t u = lo; u < hi; ++u)
                oracle.vicinities[u] = build_vicinity(*g, static_cast<NodeId>(u), oracle.landmarks);
        });
    } else {
        run_chunked(scope.size(), workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t j = lo; j < hi; ++j)
                oracle.vicinities[scope[j]] = build_vicinity(*g, scope[j], oracle.landmarks);
        });
    }

    BuildStats& st = oracle.stats;
    st.n = n;
    st.m = g->edge_count();
    st.alpha = options.alpha;
    st.seed = options.seed;
    st.landmark_count = members.size();
    st.workers = workers;
    const std::size_t built = oracle.scope_all_ ? n : scope.size();
    for (NodeId u = 0; u < n; ++u) {
        if (!oracle.covers(u)) continue;
        const auto& vic = oracle.vicinities[u];
        st.mean_vicinity += static_cast<double>(vic.size());
        st.max_vicinity = std::max(st.max_vicinity, static_cast<double>(vic.size()));
        st.mean_boundary += static_cast<double>(vic.boundary.size());
        st.max_boundary = std::max(st.max_boundary, static_cast<double>(vic.boundary.size()));
    }
    if (built > 0) {
        st.mean_vicinity /= static_cast<double>(built);
        st.mean_boundary /= static_cast<double>(built);
    }
    for (NodeId u = 0; u < n; ++u) st.mean_radius += oracle.landmarks.radius[u];
    st.mean_radius /= static_cast<double>(n);
    st.build_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return oracle;
}

std::string build_stats_json(const BuildStats& s) {
    nlohmann::json j{{"n", s.n},
                     {"m", s.m},
                     {"alpha", s.alpha},
                     {"seed", s.seed},
                     {"landmark_count", s.landmark_count},
                     {"mean_vicinity", s.mean_vicinity},
                     {"max_vicinity", s.max_vicinity},
                     {"mean_boundary", s.mean_boundary},
                     {"max_boundary", s.max_boundary},
                     {"mean_radius", s.mean_radius},
                     {"build_seconds", s.build_seconds},
                     {"workers", s.workers}};
    return j.dump();
}

}  // namespace vicinity
