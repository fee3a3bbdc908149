#pragma once

#include <cstdint>
#include <string>

#include "ftdo/graph.hpp"

namespace ftdo {

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph grid_graph(std::size_t rows, std::size_t cols);
/// G(n, p): each pair independently with probability p.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);
/// Vertex i > 0 attaches to a uniform earlier vertex.
Graph random_tree(std::size_t n, std::uint64_t seed);

/// Dispatch by model name: erdos-renyi (param = p), cycle, path, grid
/// (param = column count, 0 for square), complete, random-tree.
Graph generate(const std::string& model, std::size_t n, double param, std::uint64_t seed);

}  // namespace ftdo
