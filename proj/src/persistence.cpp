#include "vicinity/persistence.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "vicinity/errors.hpp"

namespace vicinity {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kDistInf32 = 0xFFFFFFFFu;

std::uint64_t fnv1a(const char* data, std::size_t size) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 0x100000001B3ull;
    }
    return h;
}

struct Writer {
    std::string buf;
    void u32(std::uint32_t x) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((x >> (8 * i)) & 0xFF));
    }
    void u64(std::uint64_t x) {
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((x >> (8 * i)) & 0xFF));
    }
    void f64(double x) { u64(std::bit_cast<std::uint64_t>(x)); }
    void dist(double x, bool weighted) {
        if (weighted) {
            f64(x);
        } else {
            u32(x == kInf ? kDistInf32 : static_cast<std::uint32_t>(x));
        }
    }
};

struct Reader {
    const char* p;
    const char* end;
    void need(std::size_t k) const {
        if (static_cast<std::size_t>(end - p) < k)
            throw FormatError(FormatError::Code::Truncated, "index payload truncated");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t x = 0;
        for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(static_cast<unsigned char>(*p++)) << (8 * i);
        return x;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t x = 0;
        for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(static_cast<unsigned char>(*p++)) << (8 * i);
        return x;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    double dist(bool weighted) {
        if (weighted) return f64();
        const std::uint32_t x = u32();
        return x == kDistInf32 ? kInf : static_cast<double>(x);
    }
    void bytes(char* out, std::size_t k) {
        need(k);
        std::memcpy(out, p, k);
        p += k;
    }
    void skip(std::size_t k) {
        need(k);
        p += k;
    }
};

constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 8 * 8;

void write_header(std::ostream& out, const IndexFileHeader& h) {
    Writer w;
    w.buf.append(IndexFileHeader::kMagic, 8);
    w.u32(h.version);
    w.u32(h.flags);
    w.u64(h.n);
    w.u64(h.m);
    w.f64(h.alpha);
    w.u64(h.seed);
    w.u64(h.landmark_count);
    w.u64(h.graph_fingerprint);
    w.u64(h.payload_bytes);
    w.u64(h.payload_checksum);
    out.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
}

std::size_t dist_bytes(bool weighted) { return weighted ? 8 : 4; }

}  // namespace

std::uint64_t save_oracle(const Oracle& oracle, std::ostream& out) {
    if (!oracle.full()) throw ValidationError("only full builds are serializable");
    const Graph& g = *oracle.graph;
    const bool weighted = g.weighted();
    const NodeId n = g.node_count();

    Writer w;
    for (NodeId a : oracle.landmarks.members) w.u32(a);
    for (NodeId u = 0; u < n; ++u) w.u32(oracle.landmarks.nearest[u]);
    for (NodeId u = 0; u < n; ++u) w.dist(oracle.landmarks.radius[u], weighted);
    for (const LandmarkTable& t : oracle.landmark_tables) {
        for (NodeId v = 0; v < n; ++v) w.dist(t.dist[v], weighted);
        for (NodeId v = 0; v < n; ++v) w.u32(t.parent[v]);
    }
    for (NodeId u = 0; u < n; ++u) {
        const VicinityTable& vic = oracle.vicinities[u];
        w.u32(static_cast<std::uint32_t>(vic.size()));
        for (std::uint32_t i = 0; i < vic.size(); ++i) {
            w.u32(vic.keys[i]);
            w.dist(vic.dists[i], weighted);
            w.u32(vic.parents[i]);
        }
        std::string bitmap((vic.size() + 7) / 8, '\0');
        for (std::uint32_t bi : vic.boundary) bitmap[bi / 8] |= static_cast<char>(1u << (bi % 8));
        w.buf.append(bitmap);
    }

    IndexFileHeader h;
    h.flags = weighted ? IndexFileHeader::kFlagWeighted : 0;
    h.n = n;
    h.m = g.edge_count();
    h.alpha = oracle.alpha;
    h.seed = oracle.seed;
    h.landmark_count = oracle.landmarks.members.size();
    h.graph_fingerprint = g.fingerprint();
    h.payload_bytes = w.buf.size();
    h.payload_checksum = fnv1a(w.buf.data(), w.buf.size());
    write_header(out, h);
    out.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
    if (!out) throw IoError("index write failure");
    return kHeaderBytes + w.buf.size();
}

IndexFileHeader read_index_header(std::istream& in) {
    char raw[kHeaderBytes];
    in.read(raw, kHeaderBytes);
    if (static_cast<std::size_t>(in.gcount()) != kHeaderBytes)
        throw FormatError(FormatError::Code::Truncated, "index header truncated");
    if (std::memcmp(raw, IndexFileHeader::kMagic, 8) != 0)
        throw FormatError(FormatError::Code::BadMagic, "not a vicinity index file");
    Reader r{raw + 8, raw + kHeaderBytes};
    IndexFileHeader h;
    h.version = r.u32();
    h.flags = r.u32();
    h.n = r.u64();
    h.m = r.u64();
    h.alpha = r.f64();
    h.seed = r.u64();
    h.landmark_count = r.u64();
    h.graph_fingerprint = r.u64();
    h.payload_bytes = r.u64();
    h.payload_checksum = r.u64();
    if (h.version != IndexFileHeader::kVersion)
        throw FormatError(FormatError::Code::UnsupportedVersion,
                          "unsupported index version " + std::to_string(h.version));
    return h;
}

Oracle load_oracle(std::istream& in, std::shared_ptr<const Graph> graph) {
    if (!graph) throw ValidationError("null graph");
    const IndexFileHeader h = read_index_header(in);
    const Graph& g = *graph;
    if (h.weighted() != g.weighted() || h.n != g.node_count() || h.m != g.edge_count() ||
        h.graph_fingerprint != g.fingerprint())
        throw FormatError(FormatError::Code::GraphMismatch,
                          "index was built from a different graph");

    std::string payload(h.payload_bytes, '\0');
    in.read(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (static_cast<std::uint64_t>(in.gcount()) != h.payload_bytes)
        throw FormatError(FormatError::Code::Truncated, "index payload truncated");
    if (fnv1a(payload.data(), payload.size()) != h.payload_checksum)
        throw FormatError(FormatError::Code::ChecksumMismatch, "index checksum mismatch");

    const bool weighted = h.weighted();
    const NodeId n = g.node_count();
    Reader r{payload.data(), payload.data() + payload.size()};

    Oracle oracle;
    oracle.graph = graph;
    oracle.alpha = h.alpha;
    oracle.seed = h.seed;
    LandmarkSet& ls = oracle.landmarks;
    ls.members.resize(h.landmark_count);
    for (auto& a : ls.members) a = r.u32();
    ls.is_member.assign(n, 0);
    ls.rank.assign(n, LandmarkSet::kNoRank);
    for (std::uint32_t i = 0; i < ls.members.size(); ++i) {
        ls.is_member[ls.members[i]] = 1;
        ls.rank[ls.members[i]] = i;
    }
    ls.nearest.resize(n);
    for (auto& x : ls.nearest) x = r.u32();
    ls.radius.resize(n);
    for (auto& x : ls.radius) x = r.dist(weighted);

    oracle.landmark_tables.resize(ls.members.size());
    for (std::size_t i = 0; i < ls.members.size(); ++i) {
        LandmarkTable& t = oracle.landmark_tables[i];
        t.landmark = ls.members[i];
        t.dist.resize(n);
        for (auto& x : t.dist) x = r.dist(weighted);
        t.parent.resize(n);
        for (auto& x : t.parent) x = r.u32();
    }

    oracle.vicinities.resize(n);
    for (NodeId u = 0; u < n; ++u) {
        VicinityTable& vic = oracle.vicinities[u];
        vic.owner = u;
        const std::uint32_t count = r.u32();
        vic.keys.resize(count);
        vic.dists.resize(count);
        vic.parents.resize(count);
        for (std::uint32_t i = 0; i < count; ++i) {
            vic.keys[i] = r.u32();
            vic.dists[i] = r.dist(weighted);
            vic.parents[i] = r.u32();
        }
        std::string bitmap((count + 7) / 8, '\0');
        r.bytes(bitmap.data(), bitmap.size());
        for (std::uint32_t i = 0; i < count; ++i) {
            if ((static_cast<unsigned char>(bitmap[i / 8]) >> (i % 8)) & 1u)
                vic.boundary.push_back(i);
            if (vic.dists[i] <= ls.radius[u]) vic.ball_size++;
        }
        vic.rebuild_index();
    }

    BuildStats& st = oracle.stats;
    st.n = n;
    st.m = g.edge_count();
    st.alpha = h.alpha;
    st.seed = h.seed;
    st.landmark_count = ls.members.size();
    for (NodeId u = 0; u < n; ++u) {
        const auto& vic = oracle.vicinities[u];
        st.mean_vicinity += static_cast<double>(vic.size());
        st.max_vicinity = std::max(st.max_vicinity, static_cast<double>(vic.size()));
        st.mean_boundary += static_cast<double>(vic.boundary.size());
        st.max_boundary = std::max(st.max_boundary, static_cast<double>(vic.boundary.size()));
        st.mean_radius += ls.radius[u];
    }
    st.mean_vicinity /= n;
    st.mean_boundary /= n;
    st.mean_radius /= n;
    return oracle;
}

IndexStats read_index_stats(std::istream& in) {
    IndexStats s;
    s.header = read_index_header(in);
    s.header_bytes = kHeaderBytes;
    std::string payload(s.header.payload_bytes, '\0');
    in.read(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (static_cast<std::uint64_t>(in.gcount()) != s.header.payload_bytes)
        throw FormatError(FormatError::Code::Truncated, "index payload truncated");
    if (fnv1a(payload.data(), payload.size()) != s.header.payload_checksum)
        throw FormatError(FormatError::Code::ChecksumMismatch, "index checksum mismatch");

    const bool weighted = s.header.weighted();
    const std::size_t db = dist_bytes(weighted);
    Reader r{payload.data(), payload.data() + payload.size()};
    r.skip(s.header.landmark_count * 4);       // members
    r.skip(s.header.n * 4);                    // nearest
    r.skip(s.header.n * db);                   // radius
    const std::uint64_t per_landmark = s.header.n * (db + 4);
    r.skip(s.header.landmark_count * per_landmark);
    s.landmark_section_bytes = s.header.landmark_count * (4 + per_landmark);
    s.landmark_entries = s.header.landmark_count * s.header.n;
    const char* vic_start = r.p;
    for (std::uint64_t u = 0; u < s.header.n; ++u) {
        const std::uint32_t count = r.u32();
        s.vicinity_entries += count;
        r.skip(static_cast<std::size_t>(count) * (4 + db + 4));  // (node, dist, parent) triples
        const std::size_t bitmap = (count + 7) / 8;
        const char* bm = r.p;
        r.skip(bitmap);
        for (std::size_t i = 0; i < bitmap; ++i)
            s.boundary_entries += std::popcount(static_cast<unsigned>(static_cast<unsigned char>(bm[i])));
    }
    s.vicinity_section_bytes = static_cast<std::uint64_t>(r.p - vic_start);
    return s;
}

std::string index_stats_json(const IndexStats& s) {
    nlohmann::json j{
        {"magic", "VICINIDX"},
        {"version", s.header.version},
        {"weighted", s.header.weighted()},
        {"n", s.header.n},
        {"m", s.header.m},
        {"alpha", s.header.alpha},
        {"seed", s.header.seed},
        {"landmark_count", s.header.landmark_count},
        {"graph_fingerprint", s.header.graph_fingerprint},
        {"payload_bytes", s.header.payload_bytes},
        {"payload_checksum", s.header.payload_checksum},
        {"header_bytes", s.header_bytes},
        {"landmark_section_bytes", s.landmark_section_bytes},
        {"vicinity_section_bytes", s.vicinity_section_bytes},
        {"vicinity_entries", s.vicinity_entries},
        {"boundary_entries", s.boundary_entries},
        {"landmark_entries", s.landmark_entries},
    };
    return j.dump(2);
}

}  // namespace vicinity
