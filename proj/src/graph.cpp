#include "vicinity/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "vicinity/errors.hpp"
#include "vicinity/rng.hpp"

namespace vicinity {

Graph::Graph(NodeId node_count, std::vector<Edge> edges, bool weighted) : n_(node_count) {
    for (Edge& e : edges) {
        if (e.u >= n_ || e.v >= n_) throw ValidationError("edge endpoint out of range");
        if (e.w < 0) throw ValidationError("negative edge weight");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : (a.v != b.v ? a.v < b.v : a.w < b.w);
    });
    // duplicates keep the minimum weight (first after the sort above)
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
                edges.end());
    m_ = edges.size();

    std::vector<std::uint32_t> deg(n_, 0);
    for (const Edge& e : edges) {
        deg[e.u]++;
        deg[e.v]++;
    }
    offsets_.assign(n_ + 1, 0);
    for (NodeId u = 0; u < n_; ++u) offsets_[u + 1] = offsets_[u] + deg[u];
    adj_.resize(2 * m_);
    if (weighted) weights_.resize(2 * m_);
    std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges) {
        adj_[cursor[e.u]] = e.v;
        adj_[cursor[e.v]] = e.u;
        if (weighted) {
            weights_[cursor[e.u]] = e.w;
            weights_[cursor[e.v]] = e.w;
        }
        cursor[e.u]++;
        cursor[e.v]++;
    }
    // sorted input edges give sorted neighbor lists except across the
    // u/v split; fix up per node
    for (NodeId u = 0; u < n_; ++u) {
        auto first = offsets_[u], last = offsets_[u + 1];
        if (weighted) {
            std::vector<std::pair<NodeId, double>> tmp;
            tmp.reserve(last - first);
            for (auto i = first; i < last; ++i) tmp.emplace_back(adj_[i], weights_[i]);
            std::sort(tmp.begin(), tmp.end());
            for (auto i = first; i < last; ++i) {
                adj_[i] = tmp[i - first].first;
                weights_[i] = tmp[i - first].second;
            }
        } else {
            std::sort(adj_.begin() + first, adj_.begin() + last);
        }
    }
}

std::uint64_t Graph::fingerprint() const {
    std::uint64_t h = 0xCBF29CE484222325ull;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xFF;
            h *= 0x100000001B3ull;
        }
    };
    mix(n_);
    mix(m_);
    for (NodeId u = 0; u < n_; ++u) mix(degree(u));
    return h;
}

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c == '#' || c == '%';
    }
    return true;
}

const char* skip_ws(const char* p, const char* end) {
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    return p;
}

}  // namespace

ParsedGraph parse_edge_list(std::istream& in, const ParseOptions& options) {
    struct RawEdge {
        std::uint64_t u, v;
        double w;
    };
    std::vector<RawEdge> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        RawEdge e{0, 0, 1.0};
        p = skip_ws(p, end);
        auto r1 = std::from_chars(p, end, e.u);
        if (r1.ec != std::errc{}) throw ParseError(line_no, "expected source node id");
        p = skip_ws(r1.ptr, end);
        auto r2 = std::from_chars(p, end, e.v);
        if (r2.ec != std::errc{}) throw ParseError(line_no, "expected target node id");
        p = skip_ws(r2.ptr, end);
        if (options.weighted) {
            auto r3 = std::from_chars(p, end, e.w);
            if (r3.ec != std::errc{}) throw ParseError(line_no, "expected edge weight");
            if (e.w < 0) throw ValidationError("line " + std::to_string(line_no) + ": negative edge weight");
            p = skip_ws(r3.ptr, end);
            if (p != end) throw ParseError(line_no, "trailing characters");
        }
        raw.push_back(e);
    }
    if (in.bad()) throw IoError("edge list read failure");

    std::vector<std::uint64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const RawEdge& e : raw) {
        ids.push_back(e.u);
        ids.push_back(e.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto dense = [&ids](std::uint64_t orig) {
        return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), orig) - ids.begin());
    };

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const RawEdge& e : raw) edges.push_back({dense(e.u), dense(e.v), e.w});

    if (!options.treat_as_undirected) {
        // input claims to be pre-symmetrized: every arc needs its reverse
        std::vector<std::pair<NodeId, NodeId>> arcs;
        arcs.reserve(edges.size());
        for (const Edge& e : edges)
            if (e.u != e.v) arcs.emplace_back(e.u, e.v);
        std::sort(arcs.begin(), arcs.end());
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
        for (auto [u, v] : arcs) {
            if (!std::binary_search(arcs.begin(), arcs.end(), std::make_pair(v, u)))
                throw ValidationError("asymmetric input: arc " + std::to_string(u) + "->" +
                                      std::to_string(v) + " has no reverse");
        }
    }

    ParsedGraph out;
    out.graph = Graph(static_cast<NodeId>(ids.size()), std::move(edges), options.weighted);
    out.original_ids = std::move(ids);
    return out;
}

void write_edge_list(std::ostream& out, const Graph& g) {
    char buf[64];
    for (NodeId u = 0; u < g.node_count(); ++u) {
        auto nbrs = g.neighbors(u);
        auto ws = g.weighted() ? g.neighbor_weights(u) : std::span<const double>{};
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (nbrs[i] < u) continue;  // each undirected edge once
            out << u << ' ' << nbrs[i];
            if (g.weighted()) {
                std::snprintf(buf, sizeof buf, "%.17g", ws[i]);
                out << ' ' << buf;
            }
            out << '\n';
        }
    }
    if (!out) throw IoError("edge list write failure");
}

void write_id_mapping(std::ostream& out, const std::vector<std::uint64_t>& original_ids) {
    for (std::size_t i = 0; i < original_ids.size(); ++i)
        out << original_ids[i] << ' ' << i << '\n';
    if (!out) throw IoError("id mapping write failure");
}

ComponentMap connected_components(const Graph& g) {
    ComponentMap cm;
    cm.component_id.assign(g.node_count(), kNoNode);
    std::deque<NodeId> queue;
    for (NodeId s = 0; s < g.node_count(); ++s) {
        if (cm.component_id[s] != kNoNode) continue;
        const NodeId label = static_cast<NodeId>(cm.component_sizes.size());
        cm.component_sizes.push_back(0);
        cm.component_id[s] = label;
        queue.push_back(s);
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            cm.component_sizes[label]++;
            for (NodeId v : g.neighbors(u)) {
                if (cm.component_id[v] == kNoNode) {
                    cm.component_id[v] = label;
                    queue.push_back(v);
                }
            }
        }
    }
    return cm;
}

LccResult largest_connected_component(const Graph& g) {
    if (g.node_count() == 0) throw ValidationError("empty graph");
    ComponentMap cm = connected_components(g);
    // components are labeled in order of their smallest node id, so the
    // first maximal label realizes the tie-break rule
    NodeId best = 0;
    for (NodeId c = 1; c < cm.component_sizes.size(); ++c)
        if (cm.component_sizes[c] > cm.component_sizes[best]) best = c;

    LccResult out;
    std::vector<NodeId> new_of_old(g.node_count(), kNoNode);
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (cm.component_id[u] == best) {
            new_of_old[u] = static_cast<NodeId>(out.original_of_new.size());
            out.original_of_new.push_back(u);
        }
    }
    std::vector<Edge> edges;
    for (NodeId u : out.original_of_new) {
        auto nbrs = g.neighbors(u);
        auto ws = g.weighted() ? g.neighbor_weights(u) : std::span<const double>{};
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            if (nbrs[i] > u) continue;
            edges.push_back({new_of_old[nbrs[i]], new_of_old[u], g.weighted() ? ws[i] : 1.0});
        }
    }
    out.graph = Graph(static_cast<NodeId>(out.original_of_new.size()), std::move(edges), g.weighted());
    out.components = std::move(cm);
    return out;
}

Graph gen_barabasi_albert(NodeId n, std::uint32_t edges_per_node, std::uint64_t seed) {
    if (edges_per_node < 1 || n <= edges_per_node)
        throw ValidationError("barabasi-albert requires n > edges_per_node >= 1");
    Rng rng(seed);
    std::vector<Edge> edges;
    std::vector<NodeId> pool;  // one entry per half-edge: degree-proportional sampling
    const NodeId clique = edges_per_node + 1;
    for (NodeId i = 0; i < clique; ++i)
        for (NodeId j = i + 1; j < clique; ++j) {
            edges.push_back({i, j, 1.0});
            pool.push_back(i);
            pool.push_back(j);
        }
    std::vector<NodeId> chosen;
    for (NodeId v = clique; v < n; ++v) {
        chosen.clear();
        while (chosen.size() < edges_per_node) {
            NodeId t = pool[rng.next_below(pool.size())];
            if (t != v && std::find(chosen.begin(), chosen.end(), t) == chosen.end())
                chosen.push_back(t);
        }
        for (NodeId t : chosen) {
            edges.push_back({t, v, 1.0});
            pool.push_back(t);
            pool.push_back(v);
        }
    }
    return Graph(n, std::move(edges), false);
}

Graph gen_erdos_renyi(NodeId n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw ValidationError("edge probability must be in [0, 1]");
    std::vector<Edge> edges;
    if (p >= 1.0) {
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
        return Graph(n, std::move(edges), false);
    }
    if (p > 0.0 && n > 1) {
        // Batagelj-Brandes geometric skipping over the upper triangle
        Rng rng(seed);
        const double log1mp = std::log1p(-p);
        std::int64_t v = 1, w = -1;
        while (v < static_cast<std::int64_t>(n)) {
            const double r = rng.next_double();
            w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log1mp));
            while (w >= v && v < static_cast<std::int64_t>(n)) {
                w -= v;
                ++v;
            }
            if (v < static_cast<std::int64_t>(n))
                edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v), 1.0});
        }
    }
    return Graph(n, std::move(edges), false);
}

}  // namespace vicinity
