#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vicinity/oracle.hpp"

namespace vicinity {

enum class Method {
    SameNode,
    SourceLandmark,
    TargetLandmark,
    TargetInSourceVicinity,
    SourceInTargetVicinity,
    Intersection,
    Fallback,
    NotFound,
};

const char* method_name(Method m);  // spec'd wire strings, e.g. "SAME_NODE"

struct QueryResult {
    std::optional<double> distance;     // empty <=> method == NotFound
    Method method = Method::NotFound;
    NodeId meeting_node = kNoNode;      // set for Intersection
    std::uint32_t probes = 0;           // membership lookups performed
    std::vector<NodeId> path;           // filled by the path variants when found
    bool unreachable = false;           // proven disconnected (vs merely not indexed)
};

enum class FallbackKind { Auto, Bfs, BidirectionalBfs, Dijkstra };

// Distance only. Checks, in order: same node, source/target landmark,
// containment in either vicinity, then the boundary-restricted intersection
// scan over whichever boundary is smaller. Finite answers equal the true
// shortest distance on unit-weight graphs.
QueryResult query_distance(const Oracle& oracle, NodeId s, NodeId t);

// Same resolution plus path reconstruction along stored parents.
QueryResult query_path(const Oracle& oracle, NodeId s, NodeId t);

// Runs the exact fallback search when the oracle alone answers NotFound.
QueryResult query_with_fallback(const Oracle& oracle, NodeId s, NodeId t,
                                FallbackKind fallback = FallbackKind::Auto,
                                bool want_path = true);

}  // namespace vicinity
