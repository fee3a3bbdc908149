#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ftdo/graph.hpp"
#include "ftdo/perturbation.hpp"
#include "ftdo/sp_tree.hpp"

namespace ftdo {

class PreconditionViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A preferred replacement path from `origin` to `target` avoiding one edge of the
/// origin-to-target tree path. Depths are hop distances to `target`.
struct PreferredPath {
    Vertex origin = kNoVertex;
    Vertex target = kNoVertex;
    Vertex divergence = kNoVertex;  // a: last tree-path vertex before the detour
    Vertex merge = kNoVertex;       // b: first tree-path vertex after the detour
    Hops divergence_depth = 0;      // first_depth
    Hops merge_depth = 0;           // last_depth
    Hops hops = 0;
    PerturbedLength length_p;
    std::vector<Vertex> vertices;   // origin ... target
    std::size_t detour_begin = 0;   // vertices[detour_begin] == divergence
    std::size_t detour_end = 0;     // vertices[detour_end] == merge

    /// Vertices strictly between divergence and merge.
    std::span<const Vertex> detour_interior() const {
        return std::span<const Vertex>(vertices).subspan(detour_begin + 1, detour_end - detour_begin - 1);
    }
    /// Divergence through merge, inclusive.
    std::span<const Vertex> detour() const {
        return std::span<const Vertex>(vertices).subspan(detour_begin, detour_end - detour_begin + 1);
    }
    Hops detour_hops() const { return static_cast<Hops>(detour_end - detour_begin); }

    bool operator==(const PreferredPath& o) const { return vertices == o.vertices; }
};

/// Computes preferred replacement paths towards one fixed target.
///
/// Selection order among x->t paths in G - e that leave and rejoin the x->t
/// tree path exactly once: fewest hops, then divergence closest to x, then
/// smallest perturbed length (remaining ties by vertex id).
class PreferredPathSolver {
public:
    /// `to_target` must be the SpTree rooted at the target.
    PreferredPathSolver(const Graph& g, const Perturbation& p, const SpTree& to_target);

    /// nullopt when e disconnects x from the target. Throws PreconditionViolation
    /// when e is not on the x->t tree path.
    std::optional<PreferredPath> solve(Vertex x, EdgeId e);

    const SpTree& tree() const { return *tree_; }

private:
    const Graph* g_;
    const Perturbation* p_;
    const SpTree* tree_;
    std::vector<std::int32_t> path_index_;  // position on the current x->t path or -1
    std::vector<PerturbedLength> reach_;    // best length to t through the merge side
    std::vector<Vertex> next_;              // successor towards the merge vertex
    std::vector<Vertex> touched_;
};

std::optional<PreferredPath> preferred_replacement(const Graph& g, const Perturbation& p, Vertex x,
                                                   Vertex t, EdgeId e);

enum class RSet : std::uint8_t { r1, r2 };

/// Input record for classification: a stored path with the tree-path edges it
/// is preferred for (ordered from the origin side towards the target).
struct PathRecord {
    PreferredPath path;
    std::vector<EdgeId> preferred_for;
    Hops avoided_depth = 0;      // depth of the upper endpoint of the first preferred edge
    std::uint32_t segment = 0;   // owning segment id (tie-break only)
    RSet set = RSet::r2;
};

struct PathClass {
    std::size_t unique_prefix_len = 0;  // edges of the detour before it meets a later detour
    std::size_t detour_len = 0;
    bool bad = false;
    RSet set = RSet::r2;
};

/// Order used by classify_paths: detour start depth ascending, then avoided
/// edge depth, hop length, segment id. Returns a permutation of indices.
std::vector<std::size_t> precedence_order(std::span<const PathRecord> paths);

/// Unique-prefix lengths and good/bad labels for a set of paths sharing one
/// target; results are indexed like the input.
std::vector<PathClass> classify_paths(const Graph& g, std::span<const PathRecord> paths);

}  // namespace ftdo
