#include "ftdo/generators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ftdo/perturbation.hpp"

namespace ftdo {

Graph path_graph(std::size_t n) {
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v);
    return g;
}

Graph cycle_graph(std::size_t n) {
    if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(static_cast<Vertex>(n - 1), 0);
    return g;
}

Graph complete_graph(std::size_t n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
    Graph g(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const auto v = static_cast<Vertex>(r * cols + c);
            if (c + 1 < cols) g.add_edge(v, v + 1);
            if (r + 1 < rows) g.add_edge(v, static_cast<Vertex>(v + cols));
        }
    return g;
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0, 1]");
    Graph g(n);
    std::mt19937_64 rng(seed);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (uniform_unit(rng) < p) g.add_edge(u, v);
    return g;
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
    Graph g(n);
    std::mt19937_64 rng(seed);
    for (Vertex v = 1; v < n; ++v) g.add_edge(static_cast<Vertex>(uniform_below(rng, v)), v);
    return g;
}

Graph generate(const std::string& model, std::size_t n, double param, std::uint64_t seed) {
    if (model == "erdos-renyi") return erdos_renyi(n, param, seed);
    if (model == "cycle") return cycle_graph(n);
    if (model == "path") return path_graph(n);
    if (model == "complete") return complete_graph(n);
    if (model == "random-tree") return random_tree(n, seed);
    if (model == "grid") {
        std::size_t cols = param > 0 ? static_cast<std::size_t>(param) : static_cast<std::size_t>(std::sqrt(double(n)));
        if (cols == 0 || n % cols != 0) throw std::invalid_argument("grid: column count must divide n");
        return grid_graph(n / cols, cols);
    }
    throw std::invalid_argument("unknown graph model '" + model + "'");
}

}  // namespace ftdo
