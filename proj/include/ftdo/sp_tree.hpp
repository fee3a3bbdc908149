#pragma once

#include <stdexcept>
#include <vector>

#include "ftdo/graph.hpp"
#include "ftdo/perturbation.hpp"

namespace ftdo {

class UnreachableVertex : public std::runtime_error {
public:
    explicit UnreachableVertex(Vertex v)
        : std::runtime_error("vertex " + std::to_string(v) + " is unreachable from the tree root") {}
};

/// Shortest-path tree under lexicographic (hops, frac) lengths.
struct SpTree {
    Vertex root = kNoVertex;
    std::vector<Vertex> parent;       // kNoVertex for root / unreachable
    std::vector<EdgeId> parent_edge;  // kNoEdge for root / unreachable
    std::vector<PerturbedLength> dist_p;
    std::vector<Vertex> order;        // reachable vertices by nondecreasing distance
    std::size_t tie_events = 0;       // vertices with two equally short predecessors

    bool reachable(Vertex v) const { return !dist_p[v].is_infinite(); }
    Hops dist(Vertex v) const { return dist_p[v].hops; }
    std::size_t size() const { return parent.size(); }
};

SpTree sssp(const Graph& g, const Perturbation& p, Vertex root);

/// Root-to-v vertex sequence. Throws UnreachableVertex.
std::vector<Vertex> tree_path(const SpTree& t, Vertex v);

/// Edge ids along the root-to-v path, root side first.
std::vector<EdgeId> tree_path_edges(const SpTree& t, Vertex v);

/// True iff every ordered pair has exactly one G_p-shortest path.
bool verify_unique_shortest_paths(const Graph& g, const Perturbation& p);

/// Preorder layout of a SpTree: the subtree of v occupies preorder[pos[v] .. end[v]).
struct TreeLayout {
    std::vector<Vertex> preorder;
    std::vector<std::uint32_t> pos;
    std::vector<std::uint32_t> end;

    explicit TreeLayout(const SpTree& t);

    bool in_subtree(Vertex ancestor, Vertex v) const {
        return pos[v] != kUnset && pos[ancestor] <= pos[v] && pos[v] < end[ancestor];
    }
    std::span<const Vertex> subtree(Vertex v) const {
        return std::span<const Vertex>(preorder).subspan(pos[v], end[v] - pos[v]);
    }

    static constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
};

}  // namespace ftdo
