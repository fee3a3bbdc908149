#include "ftdo/replacement.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

namespace ftdo {

PreferredPathSolver::PreferredPathSolver(const Graph& g, const Perturbation& p, const SpTree& to_target)
    : g_(&g),
      p_(&p),
      tree_(&to_target),
      path_index_(g.vertex_count(), -1),
      reach_(g.vertex_count(), PerturbedLength::infinity()),
      next_(g.vertex_count(), kNoVertex) {}

std::optional<PreferredPath> PreferredPathSolver::solve(Vertex x, EdgeId e) {
    const SpTree& t = *tree_;
    if (x >= t.size() || !t.reachable(x)) throw PreconditionViolation("origin not connected to target");

    std::vector<Vertex> path;
    for (Vertex w = x; w != kNoVertex; w = t.parent[w]) path.push_back(w);
    std::size_t cut = path.size();  // index of the upper endpoint of e
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (t.parent_edge[path[i]] == e) cut = i;
    if (cut == path.size()) throw PreconditionViolation("edge is not on the origin-to-target tree path");

    for (std::size_t i = 0; i < path.size(); ++i) path_index_[path[i]] = static_cast<std::int32_t>(i);

    // Multi-source search from the tree path below e over off-path vertices only.
    using Item = std::pair<PerturbedLength, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t j = cut + 1; j < path.size(); ++j) heap.emplace(t.dist_p[path[j]], path[j]);
    for (std::size_t j = cut + 1; j < path.size(); ++j) {
        reach_[path[j]] = t.dist_p[path[j]];
        touched_.push_back(path[j]);
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d != reach_[v]) continue;
        for (const Arc& a : g_->neighbors(v)) {
            if (path_index_[a.to] >= 0) continue;
            const PerturbedLength nd = d + p_->weight(a.edge);
            if (nd < reach_[a.to] || (nd == reach_[a.to] && v < next_[a.to])) {
                if (reach_[a.to].is_infinite()) touched_.push_back(a.to);
                const bool improved = nd < reach_[a.to];
                reach_[a.to] = nd;
                next_[a.to] = v;
                if (improved) heap.emplace(nd, a.to);
            }
        }
    }

    // Best immediate departure from each vertex above e.
    struct Choice {
        PerturbedLength total = PerturbedLength::infinity();
        Vertex first = kNoVertex;
    };
    Choice chosen;
    std::size_t chosen_index = 0;
    for (std::size_t i = 0; i <= cut; ++i) {
        const Vertex a = path[i];
        const PerturbedLength prefix = t.dist_p[x] - t.dist_p[a];
        Choice best;
        for (const Arc& arc : g_->neighbors(a)) {
            if (arc.edge == e) continue;
            const std::int32_t pi = path_index_[arc.to];
            if (pi >= 0 && static_cast<std::size_t>(pi) <= cut) continue;
            if (reach_[arc.to].is_infinite()) continue;
            const PerturbedLength cand = prefix + p_->weight(arc.edge) + reach_[arc.to];
            if (cand < best.total || (cand == best.total && arc.to < best.first)) best = {cand, arc.to};
        }
        if (best.total.is_infinite()) continue;
        // Fewer hops wins; among equal hops the earlier divergence is kept.
        if (chosen.total.is_infinite() || best.total.hops < chosen.total.hops) {
            chosen = best;
            chosen_index = i;
        }
    }

    std::optional<PreferredPath> out;
    if (!chosen.total.is_infinite()) {
        PreferredPath pp;
        pp.origin = x;
        pp.target = t.root;
        pp.divergence = path[chosen_index];
        pp.divergence_depth = t.dist(pp.divergence);
        pp.hops = chosen.total.hops;
        pp.length_p = chosen.total;
        pp.vertices.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(chosen_index) + 1);
        pp.detour_begin = chosen_index;
        Vertex w = chosen.first;
        while (path_index_[w] < 0) {
            pp.vertices.push_back(w);
            w = next_[w];
        }
        pp.detour_end = pp.vertices.size();
        pp.merge = w;
        pp.merge_depth = t.dist(w);
        for (auto j = static_cast<std::size_t>(path_index_[w]); j < path.size(); ++j) pp.vertices.push_back(path[j]);
        out = std::move(pp);
    }

    for (Vertex v : touched_) {
        reach_[v] = PerturbedLength::infinity();
        next_[v] = kNoVertex;
    }
    touched_.clear();
    for (Vertex v : path) path_index_[v] = -1;
    return out;
}

std::optional<PreferredPath> preferred_replacement(const Graph& g, const Perturbation& p, Vertex x,
                                                   Vertex t, EdgeId e) {
    const SpTree tree = sssp(g, p, t);
    PreferredPathSolver solver(g, p, tree);
    return solver.solve(x, e);
}

std::vector<std::size_t> precedence_order(std::span<const PathRecord> paths) {
    std::vector<std::size_t> order(paths.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const auto& a = paths[i];
        const auto& b = paths[j];
        return std::tie(a.path.divergence_depth, a.avoided_depth, a.path.hops, a.segment) <
               std::tie(b.path.divergence_depth, b.avoided_depth, b.path.hops, b.segment);
    });
    return order;
}

std::vector<PathClass> classify_paths(const Graph& g, std::span<const PathRecord> paths) {
    const auto order = precedence_order(paths);
    std::vector<PathClass> out(paths.size());

    // Walk from the back of the order so "later" detours are already indexed.
    // owner: interior vertex -> ranks of later paths whose detour passes through it.
    std::unordered_map<Vertex, std::vector<std::size_t>> owner;
    for (std::size_t rank = paths.size(); rank-- > 0;) {
        const std::size_t idx = order[rank];
        const PathRecord& rec = paths[idx];
        const auto interior = rec.path.detour_interior();
        PathClass& pc = out[idx];
        pc.set = rec.set;
        pc.detour_len = rec.path.detour_hops();
        pc.unique_prefix_len = pc.detour_len;

        const std::unordered_set<EdgeId> avoided(rec.preferred_for.begin(), rec.preferred_for.end());
        bool met = false;
        for (std::size_t k = 0; k < interior.size(); ++k) {
            auto it = owner.find(interior[k]);
            if (it == owner.end()) continue;
            if (!met) {
                pc.unique_prefix_len = k + 1;
                met = true;
            }
            // Bad when a later detour, after meeting this one, crosses an avoided edge.
            for (std::size_t later_rank : it->second) {
                const auto od = paths[order[later_rank]].path.detour();
                for (auto q = std::find(od.begin(), od.end(), interior[k]); q + 1 < od.end(); ++q) {
                    const auto e = g.find_edge(*q, *(q + 1));
                    if (e && avoided.count(*e)) {
                        pc.bad = true;
                        break;
                    }
                }
                if (pc.bad) break;
            }
            if (pc.bad) break;
        }
        for (Vertex v : interior) owner[v].push_back(rank);
    }
    return out;
}

}  // namespace ftdo
