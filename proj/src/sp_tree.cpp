#include "ftdo/sp_tree.hpp"

#include <algorithm>

namespace ftdo {

SpTree sssp(const Graph& g, const Perturbation& p, Vertex root) {
    const auto n = g.vertex_count();
    if (root >= n) throw std::out_of_range("sssp root out of range");
    SpTree t;
    t.root = root;
    t.parent.assign(n, kNoVertex);
    t.parent_edge.assign(n, kNoEdge);
    t.dist_p.assign(n, PerturbedLength::infinity());
    t.order.reserve(n);

    // Hop levels first; a vertex's perturbed distance is then the minimum over
    // its predecessors one level up, which are all final when it is reached in order.
    std::vector<Hops> level(n, kInfinity);
    level[root] = 0;
    t.order.push_back(root);
    for (std::size_t i = 0; i < t.order.size(); ++i) {
        const Vertex v = t.order[i];
        for (const Arc& a : g.neighbors(v))
            if (level[a.to] == kInfinity) {
                level[a.to] = level[v] + 1;
                t.order.push_back(a.to);
            }
    }
    t.dist_p[root] = {0, 0};
    for (std::size_t i = 1; i < t.order.size(); ++i) {
        const Vertex v = t.order[i];
        PerturbedLength best = PerturbedLength::infinity();
        bool tie = false;
        for (const Arc& a : g.neighbors(v)) {
            if (level[a.to] + 1 != level[v]) continue;
            const PerturbedLength cand = t.dist_p[a.to] + p.weight(a.edge);
            if (cand < best) {
                best = cand;
                t.parent[v] = a.to;
                t.parent_edge[v] = a.edge;
                tie = false;
            } else if (cand == best) {
                tie = true;
                // Deterministic choice regardless of adjacency order.
                if (a.edge < t.parent_edge[v]) {
                    t.parent[v] = a.to;
                    t.parent_edge[v] = a.edge;
                }
            }
        }
        t.dist_p[v] = best;
        if (tie) ++t.tie_events;
    }
    return t;
}

std::vector<Vertex> tree_path(const SpTree& t, Vertex v) {
    if (v >= t.size() || !t.reachable(v)) throw UnreachableVertex(v);
    std::vector<Vertex> path;
    path.reserve(t.dist(v) + 1);
    for (Vertex w = v; w != kNoVertex; w = t.parent[w]) path.push_back(w);
    std::reverse(path.begin(), path.end());
    return path;
}

std::vector<EdgeId> tree_path_edges(const SpTree& t, Vertex v) {
    if (v >= t.size() || !t.reachable(v)) throw UnreachableVertex(v);
    std::vector<EdgeId> edges;
    for (Vertex w = v; w != t.root; w = t.parent[w]) edges.push_back(t.parent_edge[w]);
    std::reverse(edges.begin(), edges.end());
    return edges;
}

bool verify_unique_shortest_paths(const Graph& g, const Perturbation& p) {
    for (Vertex r = 0; r < g.vertex_count(); ++r)
        if (sssp(g, p, r).tie_events != 0) return false;
    return true;
}

TreeLayout::TreeLayout(const SpTree& t) : pos(t.size(), kUnset), end(t.size(), kUnset) {
    const auto n = t.size();
    std::vector<std::uint32_t> child_count(n + 1, 0);
    for (Vertex v : t.order)
        if (t.parent[v] != kNoVertex) ++child_count[t.parent[v] + 1];
    for (std::size_t i = 1; i <= n; ++i) child_count[i] += child_count[i - 1];
    std::vector<Vertex> children(child_count[n]);
    std::vector<std::uint32_t> fill(child_count.begin(), child_count.end() - 1);
    for (Vertex v : t.order)
        if (t.parent[v] != kNoVertex) children[fill[t.parent[v]]++] = v;

    preorder.reserve(t.order.size());
    std::vector<std::pair<Vertex, std::uint32_t>> stack{{t.root, child_count[t.root]}};
    pos[t.root] = 0;
    preorder.push_back(t.root);
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next < child_count[v + 1]) {
            const Vertex c = children[next++];
            pos[c] = static_cast<std::uint32_t>(preorder.size());
            preorder.push_back(c);
            stack.emplace_back(c, child_count[c]);
        } else {
            end[v] = static_cast<std::uint32_t>(preorder.size());
            stack.pop_back();
        }
    }
}

}  // namespace ftdo
