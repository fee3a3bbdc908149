#include "ftdo/sigma_bfs.hpp"

#include <algorithm>
#include <tuple>

namespace ftdo {

std::uint32_t SigmaBfs::find(Vertex v) const {
    // Nodes are few; a linear scan keeps the structure flat.
    for (std::uint32_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].vertex == v) return i;
    return kNoNode;
}

SigmaBfs build_sigma_bfs(const SpTree& tree, std::span<const Vertex> sources, std::vector<char>* on_union) {
    const std::size_t n = tree.size();
    SigmaBfs sb;
    sb.target = tree.root;

    std::vector<char> marked(n, 0);
    std::vector<std::uint32_t> children(n, 0);
    std::vector<char> is_source(n, 0);
    marked[tree.root] = 1;
    for (Vertex s : sources) {
        if (!tree.reachable(s)) continue;
        is_source[s] = 1;
        for (Vertex w = s; !marked[w]; w = tree.parent[w]) {
            marked[w] = 1;
            ++children[tree.parent[w]];
        }
    }

    std::vector<Vertex> node_vertices;
    for (Vertex v = 0; v < n; ++v)
        if (marked[v] && (v == tree.root || is_source[v] || children[v] >= 2)) node_vertices.push_back(v);
    std::sort(node_vertices.begin(), node_vertices.end(), [&](Vertex a, Vertex b) {
        return std::tuple(tree.dist(a), a) < std::tuple(tree.dist(b), b);
    });

    std::vector<std::uint32_t> node_of(n, kNoNode);
    sb.nodes.resize(node_vertices.size());
    for (std::uint32_t i = 0; i < node_vertices.size(); ++i) {
        node_of[node_vertices[i]] = i;
        sb.nodes[i].vertex = node_vertices[i];
        sb.nodes[i].depth = tree.dist(node_vertices[i]);
    }
    for (std::uint32_t i = 1; i < sb.nodes.size(); ++i) {
        Vertex w = tree.parent[sb.nodes[i].vertex];
        while (node_of[w] == kNoNode) w = tree.parent[w];
        sb.nodes[i].parent = node_of[w];
    }
    for (std::uint32_t i = static_cast<std::uint32_t>(sb.nodes.size()); i-- > 1;)
        sb.nodes[sb.nodes[i].parent].subtree += sb.nodes[i].subtree;
    for (std::uint32_t i = 1; i < sb.nodes.size(); ++i) {
        auto& par = sb.nodes[sb.nodes[i].parent];
        if (par.heavy == kNoNode) {
            par.heavy = i;
            continue;
        }
        const auto& cur = sb.nodes[par.heavy];
        const auto& cand = sb.nodes[i];
        if (cand.subtree > cur.subtree || (cand.subtree == cur.subtree && cand.vertex < cur.vertex)) par.heavy = i;
    }

    // Chains grow upwards through heavy children; parents precede children in node order.
    std::vector<std::vector<std::uint32_t>> chains;
    for (std::uint32_t i = 0; i < sb.nodes.size(); ++i) {
        auto& node = sb.nodes[i];
        if (i == 0 || sb.nodes[node.parent].heavy != i) {
            node.chain = static_cast<std::uint32_t>(chains.size());
            chains.emplace_back();
        } else {
            node.chain = sb.nodes[node.parent].chain;
        }
        node.chain_pos = static_cast<std::uint32_t>(chains[node.chain].size());
        chains[node.chain].push_back(i);
    }
    sb.chain_offsets.assign(1, 0);
    for (const auto& c : chains) {
        sb.chain_nodes.insert(sb.chain_nodes.end(), c.begin(), c.end());
        sb.chain_offsets.push_back(static_cast<std::uint32_t>(sb.chain_nodes.size()));
    }
    if (on_union) *on_union = std::move(marked);
    return sb;
}

std::vector<RouteItem> heavy_light_route(const SigmaBfs& sb, std::uint32_t source_node) {
    std::vector<std::uint32_t> up;
    for (std::uint32_t x = source_node; x != kNoNode; x = sb.nodes[x].parent) up.push_back(x);
    std::reverse(up.begin(), up.end());

    std::vector<RouteItem> items;
    std::uint32_t bottom = up.front();
    for (std::size_t i = 1; i < up.size(); ++i) {
        if (sb.nodes[up[i - 1]].heavy == up[i]) continue;
        if (up[i - 1] != bottom) items.push_back({RouteKind::heavy, sb.nodes[bottom].chain, up[i - 1]});
        items.push_back({RouteKind::light, sb.nodes[up[i]].chain, up[i]});
        bottom = up[i];
    }
    if (up.back() != bottom) items.push_back({RouteKind::heavy, sb.nodes[bottom].chain, up.back()});
    return items;
}

}  // namespace ftdo
