#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ftdo {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Hop distance; kInfinity marks "unreachable".
using Hops = std::uint32_t;
inline constexpr Hops kInfinity = std::numeric_limits<Hops>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// Infinity-absorbing addition.
constexpr Hops add_hops(Hops a, Hops b) {
    if (a == kInfinity || b == kInfinity) return kInfinity;
    return a + b;
}

constexpr Hops add_hops(Hops a, Hops b, Hops c) { return add_hops(add_hops(a, b), c); }

struct Arc {
    Vertex to;
    EdgeId edge;
};

struct Edge {
    Vertex u;
    Vertex v;

    Vertex other(Vertex w) const { return w == u ? v : u; }
};

/// Raised by load_graph; carries the 1-based line number of the offending line.
class GraphParseError : public std::runtime_error {
public:
    enum class Kind { malformed, out_of_range, self_loop, duplicate_edge, edge_count };

    GraphParseError(Kind kind, std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

/// Simple undirected graph. Edge ids are the insertion order and never change.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adjacency_(n) {}

    /// Throws std::invalid_argument on self-loops, duplicates or bad endpoints.
    EdgeId add_edge(Vertex u, Vertex v);

    std::size_t vertex_count() const { return adjacency_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const Arc> neighbors(Vertex v) const { return adjacency_[v]; }

    std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;

private:
    std::vector<Edge> edges_;
    std::vector<std::vector<Arc>> adjacency_;
};

/// Parses the "n m" header + m "u v" lines format. Lines starting with '#' are skipped.
Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);

std::string to_text(const Graph& g);
void save_graph_file(const Graph& g, const std::string& path);

/// Vertices reachable from `root`, in BFS order.
std::vector<Vertex> component_of(const Graph& g, Vertex root);

/// Induced subgraph on the largest connected component, vertices relabelled by
/// increasing original id.
Graph largest_component(const Graph& g);

bool is_power_of_two(std::uint64_t x);
/// floor(log2(x)) for x >= 1.
unsigned floor_log2(std::uint64_t x);

}  // namespace ftdo
