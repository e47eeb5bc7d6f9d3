#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include "vicinity/oracle.hpp"

namespace vicinity {

// On-disk layout (all integers little-endian):
//   magic, version, flags, n, m, alpha, seed, landmark_count,
//   graph_fingerprint, payload_bytes, payload_checksum (FNV-1a 64),
// then the payload: landmark id list, nearest-landmark array, radius
// array, one (dist[], parent[]) pair per landmark, then per-node vicinity
// records (entry count, sorted (node, dist, parent) triples, boundary
// bitmap over the entries). Distances are 32-bit hop counts or IEEE f64
// reals depending on the weighted flag.
struct IndexFileHeader {
    static constexpr char kMagic[8] = {'V', 'I', 'C', 'I', 'N', 'I', 'D', 'X'};
    static constexpr std::uint32_t kVersion = 1;
    static constexpr std::uint32_t kFlagWeighted = 1u;

    std::uint32_t version = kVersion;
    std::uint32_t flags = 0;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t landmark_count = 0;
    std::uint64_t graph_fingerprint = 0;
    std::uint64_t payload_bytes = 0;
    std::uint64_t payload_checksum = 0;

    bool weighted() const { return flags & kFlagWeighted; }
};

// Deterministic byte output for a fixed oracle; returns bytes written.
// Only full builds are serializable.
std::uint64_t save_oracle(const Oracle& oracle, std::ostream& out);

// Verifies magic, version, checksum and the graph binding (n, m,
// degree-sequence fingerprint) before constructing anything; failures
// raise FormatError and leave no partial oracle.
Oracle load_oracle(std::istream& in, std::shared_ptr<const Graph> graph);

IndexFileHeader read_index_header(std::istream& in);

struct IndexStats {
    IndexFileHeader header;
    std::uint64_t header_bytes = 0;
    std::uint64_t landmark_section_bytes = 0;
    std::uint64_t vicinity_section_bytes = 0;
    std::uint64_t vicinity_entries = 0;   // sum |Gamma(u)|
    std::uint64_t boundary_entries = 0;   // sum |B(Gamma(u))|
    std::uint64_t landmark_entries = 0;   // |L| * n
};

// Streams through the file without building the oracle.
IndexStats read_index_stats(std::istream& in);

std::string index_stats_json(const IndexStats& s);

}  // namespace vicinity
