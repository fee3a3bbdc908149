#pragma once

#include <cstdint>
#include <vector>

#include "ftdo/graph.hpp"

namespace ftdo {

/// Random terminal sample T. Each vertex is included independently with
/// probability min(1, sqrt(sigma / n)).
struct TerminalSet {
    std::vector<char> member;   // indexed by vertex
    std::vector<Vertex> list;   // sorted
    std::size_t sigma = 1;
    double c = 3.0;
    std::uint64_t seed = 0;

    bool contains(Vertex v) const { return member[v] != 0; }
    double probability() const;
};

TerminalSet sample_terminals(std::size_t n, std::size_t sigma, double c, std::uint64_t seed);

/// `count` distinct vertices chosen uniformly at random, sorted.
std::vector<Vertex> sample_sources(std::size_t n, std::size_t count, std::uint64_t seed);

/// c * sqrt(n / sigma) * ln n: the terminal-spacing bound, also the reach of I1.
double spacing_bound(std::size_t n, std::size_t sigma, double c);

}  // namespace ftdo
