#pragma once

#include <vector>

#include "ftdo/graph.hpp"

namespace ftdo {

// Ground truth for every correctness check. Deliberately self-contained: it
// shares nothing with the oracle besides Graph.

/// Hop distance from s to t in G minus edge e; kInfinity when disconnected.
Hops brute_replacement_dist(const Graph& g, Vertex s, Vertex t, EdgeId e);

/// Hop distances from s to every vertex in G minus edge e (kNoEdge removes nothing).
std::vector<Hops> brute_replacement_row(const Graph& g, Vertex s, EdgeId e);

}  // namespace ftdo
