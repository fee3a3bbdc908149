#include "ftdo/tables.hpp"

#include <algorithm>
#include <stdexcept>

#include "ftdo/sp_tree.hpp"

namespace ftdo {

VertexIndex::VertexIndex(std::size_t n, std::vector<Vertex> members) : vertices(std::move(members)), row_of(n, kNoRow) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] >= n) throw std::out_of_range("vertex index member out of range");
        row_of[vertices[i]] = static_cast<std::uint32_t>(i);
    }
}

PerturbedLength RootTables::dist_p(Vertex x, Vertex y) const {
    if (roots.contains(x)) return dist[std::size_t{roots.row(x)} * n + y];
    if (roots.contains(y)) return dist[std::size_t{roots.row(y)} * n + x];
    throw std::out_of_range("distance lookup between two unindexed vertices");
}

std::size_t RootTables::entry_count() const { return dist.size(); }

RootTables build_root_tables(const Graph& g, const Perturbation& p, const VertexIndex& roots, Execution exec) {
    RootTables rt;
    rt.n = g.vertex_count();
    rt.roots = roots;
    rt.dist.assign(roots.size() * rt.n, PerturbedLength::infinity());
    rt.power_vertex.assign(roots.size() * rt.n, kNoVertex);
    for_each_index(exec, roots.size(), [&](std::size_t row) {
        const SpTree tree = sssp(g, p, roots.vertices[row]);
        auto* dist = rt.dist.data() + row * rt.n;
        auto* pw = rt.power_vertex.data() + row * rt.n;
        for (Vertex y = 0; y < rt.n; ++y) {
            dist[y] = tree.dist_p[y];
            if (!tree.reachable(y) || tree.dist(y) == 0) continue;
            Vertex w = y;
            for (std::uint64_t k = std::uint64_t{1} << floor_log2(tree.dist(y)); k > 0; --k) w = tree.parent[w];
            pw[y] = w;
        }
    });
    return rt;
}

NearestTerminalTable build_nearest_terminal(const Graph& g, const Perturbation& p, const VertexIndex& sources,
                                            const TerminalSet& terminals, Execution exec) {
    NearestTerminalTable b1;
    b1.n = g.vertex_count();
    b1.table.assign(sources.size() * b1.n, kNoVertex);
    for_each_index(exec, sources.size(), [&](std::size_t row) {
        const SpTree tree = sssp(g, p, sources.vertices[row]);
        auto* out = b1.table.data() + row * b1.n;
        for (Vertex v : tree.order) {
            if (terminals.contains(v))
                out[v] = v;
            else if (tree.parent[v] != kNoVertex)
                out[v] = out[tree.parent[v]];
        }
    });
    return b1;
}

std::span<const NearEntry> NearCaseTable::list(std::uint32_t source_row, Vertex t) const {
    const std::size_t k = std::size_t{source_row} * n + t;
    return std::span<const NearEntry>(entries).subspan(offsets[k], offsets[k + 1] - offsets[k]);
}

std::optional<Hops> NearCaseTable::find(std::uint32_t source_row, Vertex t, EdgeId e) const {
    const auto l = list(source_row, t);
    auto it = std::lower_bound(l.begin(), l.end(), e, [](const NearEntry& a, EdgeId b) { return a.edge < b; });
    if (it == l.end() || it->edge != e) return std::nullopt;
    return it->hops;
}

Hops SubpathTable::at(std::uint32_t source_row, std::uint32_t terminal_row, unsigned i, unsigned j) const {
    const std::size_t k = std::size_t{source_row} * terminal_count + terminal_row;
    const unsigned s = side[k];
    if (i >= s || j >= s) return kInfinity;
    return values[offsets[k] + std::size_t{i} * s + j];
}

namespace {

// Per-row ragged output collected in parallel, then concatenated in row order.
template <class T>
using Rows = std::vector<std::vector<std::vector<T>>>;

template <class T>
void flatten(const Rows<T>& rows, std::size_t n, std::vector<std::uint64_t>& offsets, std::vector<T>& values) {
    offsets.assign(rows.size() * n + 1, 0);
    std::size_t k = 0;
    for (const auto& row : rows)
        for (std::size_t x = 0; x < n; ++x, ++k) offsets[k + 1] = offsets[k] + row[x].size();
    values.clear();
    values.reserve(offsets.back());
    for (const auto& row : rows)
        for (const auto& cell : row) values.insert(values.end(), cell.begin(), cell.end());
}

std::vector<Hops> ladder_cell(const SpTree& tree, Vertex x) {
    if (!tree.reachable(x) || tree.dist(x) == 0) return {};
    return std::vector<Hops>(floor_log2(tree.dist(x)) + 1, kInfinity);
}

}  // namespace

SourceSweep build_source_sweep(const Graph& g, const Perturbation& p, const VertexIndex& sources,
                               const NearestTerminalTable& b1, Execution exec) {
    const std::size_t n = g.vertex_count();
    Rows<NearEntry> near(sources.size());
    Rows<Hops> b4(sources.size());
    for_each_index(exec, sources.size(), [&](std::size_t row) {
        const SpTree tree = sssp(g, p, sources.vertices[row]);
        const TreeLayout layout(tree);
        BfsWorkspace ws(g);
        auto& nr = near[row];
        auto& br = b4[row];
        nr.resize(n);
        br.resize(n);
        for (Vertex x = 0; x < n; ++x) br[x] = ladder_cell(tree, x);
        for (std::size_t i = 1; i < tree.order.size(); ++i) {
            const Vertex c = tree.order[i];
            const Vertex par = tree.parent[c];
            const EdgeId e = tree.parent_edge[c];
            const auto d = ws.run(tree.root, e);
            for (Vertex x : layout.subtree(c)) {
                const Vertex ts = b1.at(static_cast<std::uint32_t>(row), x);
                if (ts == kNoVertex || tree.dist(ts) <= tree.dist(par)) nr[x].push_back({e, d[x]});
                const Hops k = tree.dist(x) - tree.dist(par);
                if (is_power_of_two(k)) br[x][floor_log2(k)] = d[x];
            }
        }
        for (auto& cell : nr)
            std::sort(cell.begin(), cell.end(), [](const NearEntry& a, const NearEntry& b) { return a.edge < b.edge; });
    });
    SourceSweep out;
    out.near.n = n;
    out.b4.n = n;
    flatten(near, n, out.near.offsets, out.near.entries);
    flatten(b4, n, out.b4.offsets, out.b4.values);
    return out;
}

LadderTable build_b3(const Graph& g, const Perturbation& p, const VertexIndex& terminals, Execution exec) {
    const std::size_t n = g.vertex_count();
    Rows<Hops> b3(terminals.size());
    for_each_index(exec, terminals.size(), [&](std::size_t row) {
        const SpTree tree = sssp(g, p, terminals.vertices[row]);
        const TreeLayout layout(tree);
        BfsWorkspace ws(g);
        auto& br = b3[row];
        br.resize(n);
        for (Vertex x = 0; x < n; ++x) br[x] = ladder_cell(tree, x);
        for (std::size_t i = 1; i < tree.order.size(); ++i) {
            const Vertex c = tree.order[i];
            const Vertex par = tree.parent[c];
            const auto d = ws.run(tree.root, tree.parent_edge[c]);
            for (Vertex x : layout.subtree(c)) {
                const Hops k = tree.dist(x) - tree.dist(par);
                if (is_power_of_two(k)) br[x][floor_log2(k)] = d[x];
            }
        }
    });
    LadderTable out;
    out.n = n;
    flatten(b3, n, out.offsets, out.values);
    return out;
}

SubpathTable build_b5(const Graph& g, const Perturbation& p, const VertexIndex& sources,
                      const VertexIndex& terminals, Execution exec) {
    const std::size_t tc = terminals.size();
    std::vector<std::vector<std::uint8_t>> sides(sources.size());
    std::vector<std::vector<Hops>> values(sources.size());
    std::vector<std::size_t> valid(sources.size(), 0);
    for_each_index(exec, sources.size(), [&](std::size_t row) {
        const SpTree tree = sssp(g, p, sources.vertices[row]);
        BfsWorkspace ws(g);
        sides[row].assign(tc, 0);
        for (std::size_t trow = 0; trow < tc; ++trow) {
            const Vertex x = terminals.vertices[trow];
            if (!tree.reachable(x) || tree.dist(x) < 2) continue;
            const Hops len = tree.dist(x);
            const unsigned side = floor_log2(len) + 1;
            sides[row][trow] = static_cast<std::uint8_t>(side);
            const auto edges = tree_path_edges(tree, x);  // edges[k] joins path vertices k and k+1
            for (unsigned i = 0; i < side; ++i)
                for (unsigned j = 0; j < side; ++j) {
                    const Hops from = Hops{1} << i;
                    const Hops to = len - (Hops{1} << j);
                    if (from >= to) {
                        values[row].push_back(kInfinity);
                        continue;
                    }
                    const auto d = ws.run(tree.root, std::span<const EdgeId>(edges).subspan(from, to - from));
                    values[row].push_back(d[x]);
                    ++valid[row];
                }
        }
    });
    SubpathTable out;
    out.terminal_count = tc;
    out.offsets.assign(sources.size() * tc + 1, 0);
    std::size_t k = 0;
    for (std::size_t row = 0; row < sources.size(); ++row) {
        for (std::size_t trow = 0; trow < tc; ++trow, ++k)
            out.offsets[k + 1] = out.offsets[k] + std::size_t{sides[row][trow]} * sides[row][trow];
        out.side.insert(out.side.end(), sides[row].begin(), sides[row].end());
        out.values.insert(out.values.end(), values[row].begin(), values[row].end());
        out.valid_entries += valid[row];
    }
    return out;
}

}  // namespace ftdo
