#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ftdo/graph.hpp"
#include "ftdo/kernels.hpp"
#include "ftdo/perturbation.hpp"
#include "ftdo/terminals.hpp"

namespace ftdo {

inline constexpr std::uint32_t kNoRow = std::numeric_limits<std::uint32_t>::max();

/// Maps a vertex subset (sources, terminals, S u T) to dense row numbers.
struct VertexIndex {
    std::vector<Vertex> vertices;       // sorted
    std::vector<std::uint32_t> row_of;  // vertex -> row or kNoRow

    VertexIndex() = default;
    VertexIndex(std::size_t n, std::vector<Vertex> members);

    std::size_t size() const { return vertices.size(); }
    bool contains(Vertex v) const { return v < row_of.size() && row_of[v] != kNoRow; }
    std::uint32_t row(Vertex v) const { return row_of[v]; }
};

/// B0 (hop and perturbed distances) and B2 (power-of-two vertex), one row per
/// vertex of S u T.
struct RootTables {
    std::size_t n = 0;
    VertexIndex roots;
    std::vector<PerturbedLength> dist;  // row * n + y
    std::vector<Vertex> power_vertex;   // row * n + y; kNoVertex when x == y or unreachable

    /// Symmetric lookup; one endpoint must be a root.
    PerturbedLength dist_p(Vertex x, Vertex y) const;
    Hops hops(Vertex x, Vertex y) const { return dist_p(x, y).hops; }
    /// The vertex w on the x->y path with |yw| = 2^floor(log |xy|); x must be a root.
    Vertex b2(Vertex x, Vertex y) const { return power_vertex[std::size_t{roots.row(x)} * n + y]; }

    std::size_t entry_count() const;
};

RootTables build_root_tables(const Graph& g, const Perturbation& p, const VertexIndex& roots, Execution exec);

/// B1: for source row s and target t, the terminal on the s->t path closest to t.
struct NearestTerminalTable {
    std::size_t n = 0;
    std::vector<Vertex> table;  // row * n + t; kNoVertex when no terminal on the path

    Vertex at(std::uint32_t source_row, Vertex t) const { return table[std::size_t{source_row} * n + t]; }
    std::size_t entry_count() const { return table.size(); }
};

NearestTerminalTable build_nearest_terminal(const Graph& g, const Perturbation& p, const VertexIndex& sources,
                                            const TerminalSet& terminals, Execution exec);

struct NearEntry {
    EdgeId edge;
    Hops hops;
};

/// Near case: for each (source, target), sorted (edge, replacement hops) for the
/// edges of the t_s -> t subpath (whole path when t_s is none).
struct NearCaseTable {
    std::size_t n = 0;
    std::vector<std::uint64_t> offsets;  // (row * n + t) -> begin; size rows*n + 1
    std::vector<NearEntry> entries;

    std::span<const NearEntry> list(std::uint32_t source_row, Vertex t) const;
    std::optional<Hops> find(std::uint32_t source_row, Vertex t, EdgeId e) const;
    std::size_t entry_count() const { return entries.size(); }
};

/// Ragged arrays of hop lengths keyed by (row, vertex) and a small index i.
/// B3 (row = terminal y, vertex = x): avoid the 2^i-th edge of x->y counted from x.
/// B4 (row = source s, vertex = x): avoid the 2^i-th edge of s->x counted from x.
struct LadderTable {
    std::size_t n = 0;
    std::vector<std::uint64_t> offsets;  // (row * n + x) -> begin
    std::vector<Hops> values;

    std::size_t count(std::uint32_t row, Vertex x) const {
        const std::size_t k = std::size_t{row} * n + x;
        return offsets[k + 1] - offsets[k];
    }
    Hops at(std::uint32_t row, Vertex x, unsigned i) const {
        const std::size_t k = std::size_t{row} * n + x;
        return i < offsets[k + 1] - offsets[k] ? values[offsets[k] + i] : kInfinity;
    }
    std::size_t entry_count() const { return values.size(); }
};

/// B5: for source s and terminal x, the s->x distance avoiding every edge of the
/// subpath from the 2^i-th vertex after s to the 2^j-th vertex before x.
/// Stored as a (K+1)x(K+1) block per pair with K = floor(log |sx|).
struct SubpathTable {
    std::size_t terminal_count = 0;
    std::vector<std::uint64_t> offsets;  // (source_row * terminal_count + terminal_row) -> begin
    std::vector<std::uint8_t> side;      // K + 1 per pair (0 when |sx| < 2)
    std::vector<Hops> values;
    std::size_t valid_entries = 0;

    Hops at(std::uint32_t source_row, std::uint32_t terminal_row, unsigned i, unsigned j) const;
    std::size_t entry_count() const { return valid_entries; }
};

struct PowerTables {
    LadderTable b3;
    LadderTable b4;
    SubpathTable b5;
};

/// Near-case table and B4, which both come from one BFS per (source, tree edge).
struct SourceSweep {
    NearCaseTable near;
    LadderTable b4;
};

SourceSweep build_source_sweep(const Graph& g, const Perturbation& p, const VertexIndex& sources,
                               const NearestTerminalTable& b1, Execution exec);

LadderTable build_b3(const Graph& g, const Perturbation& p, const VertexIndex& terminals, Execution exec);

SubpathTable build_b5(const Graph& g, const Perturbation& p, const VertexIndex& sources,
                      const VertexIndex& terminals, Execution exec);

}  // namespace ftdo
