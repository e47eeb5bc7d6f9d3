#pragma once

#include <cstdint>
#include <vector>

#include "vicinity/graph.hpp"

namespace vicinity {

// Sampled landmark set with the per-node nearest landmark and its distance
// (the vicinity radius). Members are sorted; nearest-landmark ties break
// toward the smallest landmark id.
struct LandmarkSet {
    std::vector<NodeId> members;         // sorted ascending
    std::vector<std::uint8_t> is_member; // per node
    std::vector<std::uint32_t> rank;     // node -> index into members, or kNoRank
    std::vector<NodeId> nearest;         // per node; nearest[u] == u for members
    std::vector<double> radius;          // per node; 0 for members

    static constexpr std::uint32_t kNoRank = 0xFFFFFFFFu;
    bool contains(NodeId u) const { return is_member[u] != 0; }
};

// Each node joins independently with probability min(1, 2*deg(u)/(alpha*sqrt(n))),
// one uniform draw per node in id order (so a fixed seed couples the sets
// across alpha: larger alpha gives a nested subset). Components left without
// a member force-include their highest-degree node, smallest id on ties.
LandmarkSet sample_landmarks(const Graph& g, double alpha, std::uint64_t seed);

// Fixture path: explicit members, same nearest/radius computation. Throws
// ValidationError if any component has no member.
LandmarkSet landmark_set_from_members(const Graph& g, std::vector<NodeId> members);

}  // namespace vicinity
