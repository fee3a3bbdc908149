#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ftdo/graph.hpp"
#include "ftdo/perturbation.hpp"
#include "ftdo/replacement.hpp"
#include "ftdo/rmq.hpp"
#include "ftdo/sigma_bfs.hpp"
#include "ftdo/sp_tree.hpp"
#include "ftdo/terminals.hpp"

namespace ftdo {

/// Avoided edges (u, v) of one segment, identified by depth(u), that share a
/// stored path of `length` hops from the segment's upper node.
struct R2Entry {
    Hops lo = 0;
    Hops hi = 0;
    Hops length = kInfinity;

    bool operator==(const R2Entry&) const = default;
};

struct IntEntry {
    Vertex vertex = kNoVertex;
    std::uint32_t node = kNoNode;

    bool operator==(const IntEntry&) const = default;
};

/// Everything the far case needs for one target t.
///
/// For a node x with parent node y, let t_x be the first terminal on the way
/// from t to x. Only preferred x->t paths that merge strictly below t_x are kept:
///   r1[x]  shortest such path whose detour starts in segment xy and whose
///          avoided edge lies below y;
///   r2(x)  such paths whose avoided edge lies inside segment xy, grouped by
///          contiguous runs of avoided edges.
struct TargetStore {
    SigmaBfs sigma;
    std::vector<Hops> r1;                   // per node
    std::vector<std::uint32_t> r2_offsets;  // per node + 1
    std::vector<R2Entry> r2;                // per node, sorted by lo
    std::vector<SparseTableMin> chain_rmq;  // per chain, indexed by chain_pos
    std::vector<IntEntry> i1;               // sorted by vertex
    std::vector<IntEntry> i2;               // sorted by vertex

    std::span<const R2Entry> r2_of(std::uint32_t node) const {
        return std::span<const R2Entry>(r2).subspan(r2_offsets[node], r2_offsets[node + 1] - r2_offsets[node]);
    }
    static std::uint32_t lookup(std::span<const IntEntry> index, Vertex v);
    /// Chain tuple value at a position: depth(top) - depth(x) + r1[x].
    std::uint64_t chain_value(std::uint32_t node) const;
    std::size_t r1_count() const;
};

/// Structural facts gathered while building a target, for verification.
struct TargetDiagnostics {
    std::vector<PathRecord> r2_paths;
    std::vector<std::uint32_t> r1_members;  // distinct paths per node
    std::size_t contiguity_violations = 0;
    std::size_t merge_diverge_violations = 0;
    std::size_t r2_good = 0;
    std::size_t r2_bad = 0;
    std::size_t unique_prefix_total = 0;
    std::size_t max_route_items = 0;
};

/// I1 covers union vertices within `reach` hops of their intersection vertex.
TargetStore build_target(const Graph& g, const Perturbation& p, const SpTree& to_target,
                         std::span<const Vertex> sources, const TerminalSet& terminals, double reach,
                         TargetDiagnostics* diag = nullptr);

}  // namespace ftdo
