#include "ftdo/brute_force.hpp"

#include <deque>

namespace ftdo {

std::vector<Hops> brute_replacement_row(const Graph& g, Vertex s, EdgeId e) {
    std::vector<Hops> dist(g.vertex_count(), kInfinity);
    std::deque<Vertex> frontier{s};
    dist[s] = 0;
    while (!frontier.empty()) {
        const Vertex v = frontier.front();
        frontier.pop_front();
        for (const Arc& a : g.neighbors(v)) {
            if (a.edge == e || dist[a.to] != kInfinity) continue;
            dist[a.to] = dist[v] + 1;
            frontier.push_back(a.to);
        }
    }
    return dist;
}

Hops brute_replacement_dist(const Graph& g, Vertex s, Vertex t, EdgeId e) {
    return brute_replacement_row(g, s, e)[t];
}

}  // namespace ftdo
