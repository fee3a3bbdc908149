#include "ftdo/target_store.hpp"

#include <algorithm>
#include <memory>

namespace ftdo {

std::uint32_t TargetStore::lookup(std::span<const IntEntry> index, Vertex v) {
    auto it = std::lower_bound(index.begin(), index.end(), v, [](const IntEntry& a, Vertex b) { return a.vertex < b; });
    return it != index.end() && it->vertex == v ? it->node : kNoNode;
}

std::uint64_t TargetStore::chain_value(std::uint32_t node) const {
    const SigmaNode& x = sigma.nodes[node];
    if (x.chain_pos == 0 || r1[node] == kInfinity) return SparseTableMin::kNone;
    const auto chain = sigma.chain(x.chain);
    const Hops top_depth = sigma.nodes[chain.back()].depth;
    return std::uint64_t{top_depth - x.depth} + r1[node];
}

std::size_t TargetStore::r1_count() const {
    return static_cast<std::size_t>(std::count_if(r1.begin(), r1.end(), [](Hops h) { return h != kInfinity; }));
}

namespace {

struct Group {
    PreferredPath path;
    std::vector<EdgeId> edges;
    Hops lo = 0;
    Hops hi = 0;
};

// A stored path that touches another branch of the union whose tree path to t
// avoids the failed edges should follow that tree path from there on.
bool leaves_tree_after_touch(const PreferredPath& path, const SpTree& tree, const TreeLayout& layout,
                             const std::vector<char>& on_union, Vertex shallowest_u) {
    const auto& vs = path.vertices;
    for (std::size_t k = path.detour_begin + 1; k < path.detour_end; ++k) {
        const Vertex w = vs[k];
        if (!on_union[w] || layout.in_subtree(shallowest_u, w)) continue;
        if (vs[k + 1] != tree.parent[w]) return true;
    }
    return false;
}

}  // namespace

TargetStore build_target(const Graph& g, const Perturbation& p, const SpTree& tree, std::span<const Vertex> sources,
                         const TerminalSet& terminals, double reach, TargetDiagnostics* diag) {
    const std::size_t n = g.vertex_count();
    TargetStore ts;
    std::vector<char> on_union;
    ts.sigma = build_sigma_bfs(tree, sources, &on_union);
    const auto& nodes = ts.sigma.nodes;
    const std::size_t k = nodes.size();

    // First terminal met walking from t towards each vertex.
    std::vector<Vertex> first_terminal(n, kNoVertex);
    for (Vertex v : tree.order) {
        const Vertex par = tree.parent[v];
        if (par != kNoVertex && first_terminal[par] != kNoVertex)
            first_terminal[v] = first_terminal[par];
        else if (terminals.contains(v))
            first_terminal[v] = v;
    }

    std::unique_ptr<TreeLayout> layout;
    if (diag) {
        layout = std::make_unique<TreeLayout>(tree);
        diag->r1_members.assign(k, 0);
    }

    PreferredPathSolver solver(g, p, tree);
    ts.r1.assign(k, kInfinity);
    ts.r2_offsets.assign(k + 1, 0);
    for (std::uint32_t i = 1; i < k; ++i) {
        const SigmaNode& x = nodes[i];
        const Hops y_depth = nodes[x.parent].depth;
        const Vertex tx = first_terminal[x.vertex];
        std::vector<Group> groups;
        std::vector<PreferredPath> r1_paths;
        if (tx != kNoVertex) {
            const Hops tx_depth = tree.dist(tx);
            for (Vertex w = x.vertex; tree.dist(w) > tx_depth; w = tree.parent[w]) {
                const EdgeId e = tree.parent_edge[w];
                auto path = solver.solve(x.vertex, e);
                if (!path || path->merge_depth >= tx_depth) continue;
                const Hops ud = tree.dist(w);
                if (ud <= y_depth) {
                    if (path->divergence_depth <= y_depth) continue;
                    ts.r1[i] = std::min(ts.r1[i], path->hops);
                    if (diag && std::find(r1_paths.begin(), r1_paths.end(), *path) == r1_paths.end())
                        r1_paths.push_back(*path);
                    continue;
                }
                if (!groups.empty() && groups.back().path == *path && groups.back().lo == ud + 1) {
                    groups.back().lo = ud;
                    groups.back().edges.push_back(e);
                    continue;
                }
                if (diag && std::any_of(groups.begin(), groups.end(), [&](const Group& gr) { return gr.path == *path; }))
                    ++diag->contiguity_violations;
                groups.push_back({std::move(*path), {e}, ud, ud});
            }
        }
        ts.r2_offsets[i + 1] = ts.r2_offsets[i] + static_cast<std::uint32_t>(groups.size());
        for (auto it = groups.rbegin(); it != groups.rend(); ++it) ts.r2.push_back({it->lo, it->hi, it->path.hops});
        if (!diag) continue;
        diag->r1_members[i] = static_cast<std::uint32_t>(r1_paths.size());
        for (auto& gr : groups) {
            // The shallowest failed edge of the group has the smallest depth(u).
            Vertex shallowest_u = x.vertex;
            while (tree.dist(shallowest_u) > gr.lo) shallowest_u = tree.parent[shallowest_u];
            if (leaves_tree_after_touch(gr.path, tree, *layout, on_union, shallowest_u))
                ++diag->merge_diverge_violations;
            PathRecord rec;
            rec.avoided_depth = gr.hi;
            rec.segment = i;
            rec.set = RSet::r2;
            rec.preferred_for = std::move(gr.edges);
            rec.path = std::move(gr.path);
            diag->r2_paths.push_back(std::move(rec));
        }
    }

    for (std::uint32_t c = 0; c < ts.sigma.chain_count(); ++c) {
        std::vector<std::uint64_t> values;
        for (std::uint32_t node : ts.sigma.chain(c)) values.push_back(ts.chain_value(node));
        ts.chain_rmq.emplace_back(std::move(values));
    }

    // Int(u, t): nearest node walking away from t, resolved deepest first.
    std::vector<std::uint32_t> node_of(n, kNoNode);
    for (std::uint32_t i = 0; i < k; ++i) node_of[nodes[i].vertex] = i;
    std::vector<std::uint32_t> int_node(n, kNoNode);
    std::vector<Hops> int_dist(n, kInfinity);
    for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
        const Vertex v = *it;
        if (!on_union[v]) continue;
        if (node_of[v] != kNoNode) {
            int_node[v] = node_of[v];
            int_dist[v] = 0;
        }
        const Vertex par = tree.parent[v];
        if (par != kNoVertex && node_of[par] == kNoNode) {
            int_node[par] = int_node[v];
            int_dist[par] = int_dist[v] + 1;
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (!on_union[v]) continue;
        if (static_cast<double>(int_dist[v]) <= reach) ts.i1.push_back({v, int_node[v]});
        if (terminals.contains(v) && node_of[v] == kNoNode) ts.i2.push_back({v, int_node[v]});
    }

    if (diag) {
        const auto classes = classify_paths(g, diag->r2_paths);
        for (const auto& pc : classes) {
            (pc.bad ? diag->r2_bad : diag->r2_good) += 1;
            diag->unique_prefix_total += pc.unique_prefix_len;
        }
        for (std::uint32_t i = 0; i < k; ++i) {
            if (i != 0 && !std::binary_search(sources.begin(), sources.end(), nodes[i].vertex)) continue;
            diag->max_route_items = std::max(diag->max_route_items, heavy_light_route(ts.sigma, i).size());
        }
    }
    return ts;
}

}  // namespace ftdo
