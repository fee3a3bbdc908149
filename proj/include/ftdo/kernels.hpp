#pragma once

// Data-parallel loops used by the oracle build and by verification. Every
// kernel has a serial path that is kept as the reference: a parallel run must
// produce bit-identical results, which the test suite checks.

#include <cstddef>
#include <span>
#include <vector>

#include "ftdo/graph.hpp"

#ifdef FTDO_HAVE_OPENMP
#include <omp.h>
#endif

namespace ftdo {

enum class Execution { serial, parallel };

/// Sets the OpenMP thread count (no-op without OpenMP); 0 keeps the runtime default.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count). Iterations must write disjoint outputs.
template <class Body>
void for_each_index(Execution exec, std::size_t count, Body&& body) {
#ifdef FTDO_HAVE_OPENMP
    if (exec == Execution::parallel) {
        const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
        return;
    }
#endif
    (void)exec;
    for (std::size_t i = 0; i < count; ++i) body(i);
}

/// Reusable BFS buffers; unit hop distances in G minus a set of removed edges.
class BfsWorkspace {
public:
    explicit BfsWorkspace(const Graph& g)
        : g_(&g), dist_(g.vertex_count(), kInfinity), removed_(g.edge_count(), 0) {
        queue_.reserve(g.vertex_count());
    }

    /// Distances from `source` with `removed` edges deleted. The returned span
    /// is valid until the next run.
    std::span<const Hops> run(Vertex source, std::span<const EdgeId> removed);
    std::span<const Hops> run(Vertex source, EdgeId removed) {
        return run(source, std::span<const EdgeId>(&removed, removed == kNoEdge ? 0 : 1));
    }

private:
    const Graph* g_;
    std::vector<Hops> dist_;
    std::vector<char> removed_;
    std::vector<Vertex> queue_;
};

}  // namespace ftdo
