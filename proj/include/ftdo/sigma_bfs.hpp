#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ftdo/graph.hpp"
#include "ftdo/sp_tree.hpp"

namespace ftdo {

inline constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();

/// A vertex of the contracted tree. The segment of a node x is the tree path
/// from x to its parent node.
struct SigmaNode {
    Vertex vertex = kNoVertex;
    Hops depth = 0;                    // hop distance to the target
    std::uint32_t parent = kNoNode;    // next node towards the target
    std::uint32_t heavy = kNoNode;     // heavy child
    std::uint32_t subtree = 1;         // nodes in the subtree, itself included
    std::uint32_t chain = 0;
    std::uint32_t chain_pos = 0;       // 0 = chain bottom (closest to the target)
};

/// Union of the source-to-target tree paths with degree-2 corridors contracted.
/// Nodes: the target, reachable sources, and vertices with two or more children.
struct SigmaBfs {
    Vertex target = kNoVertex;
    std::vector<SigmaNode> nodes;               // sorted by (depth, vertex); nodes[0] is the target
    std::vector<std::uint32_t> chain_offsets;   // chain c = chain_nodes[offsets[c] .. offsets[c+1])
    std::vector<std::uint32_t> chain_nodes;     // bottom to top

    std::uint32_t find(Vertex v) const;  // kNoNode when v is not a node
    std::span<const std::uint32_t> chain(std::uint32_t c) const {
        return std::span<const std::uint32_t>(chain_nodes).subspan(chain_offsets[c], chain_offsets[c + 1] - chain_offsets[c]);
    }
    std::size_t chain_count() const { return chain_offsets.empty() ? 0 : chain_offsets.size() - 1; }
    std::size_t segment_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

/// `on_union[v]` is set for every vertex of some source-to-target tree path.
SigmaBfs build_sigma_bfs(const SpTree& to_target, std::span<const Vertex> sources, std::vector<char>* on_union = nullptr);

enum class RouteKind : std::uint8_t { heavy, light };

/// One part of the target-to-source route. Heavy: the route runs along `chain`
/// from its bottom up to node `node`. Light: the route takes the light segment
/// whose upper node is `node`.
struct RouteItem {
    RouteKind kind = RouteKind::heavy;
    std::uint32_t chain = 0;
    std::uint32_t node = kNoNode;

    bool operator==(const RouteItem&) const = default;
};

/// Route items ordered by distance from the target. Heavy items that cover no
/// segment are omitted.
std::vector<RouteItem> heavy_light_route(const SigmaBfs& sb, std::uint32_t source_node);

}  // namespace ftdo
