#include "ftdo/kernels.hpp"

#include <algorithm>

namespace ftdo {

void set_thread_count(int threads) {
#ifdef FTDO_HAVE_OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

int thread_count() {
#ifdef FTDO_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::span<const Hops> BfsWorkspace::run(Vertex source, std::span<const EdgeId> removed) {
    std::fill(dist_.begin(), dist_.end(), kInfinity);
    for (EdgeId e : removed) removed_[e] = 1;
    queue_.clear();
    queue_.push_back(source);
    dist_[source] = 0;
    for (std::size_t i = 0; i < queue_.size(); ++i) {
        const Vertex v = queue_[i];
        for (const Arc& a : g_->neighbors(v)) {
            if (removed_[a.edge] || dist_[a.to] != kInfinity) continue;
            dist_[a.to] = dist_[v] + 1;
            queue_.push_back(a.to);
        }
    }
    for (EdgeId e : removed) removed_[e] = 0;
    return dist_;
}

}  // namespace ftdo
