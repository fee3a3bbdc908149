#include "ftdo/perturbation.hpp"

namespace ftdo {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    // Rejection sampling keeps the draw exactly uniform and portable.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Perturbation perturb(const Graph& g, std::uint64_t seed) {
    const std::uint64_t n = std::max<std::uint64_t>(g.vertex_count(), 1);
    // M/(n+1) >= n^4; n^4 saturates well before 2^62 / (n + 1) overflows for n < 2^15.
    unsigned __int128 need = static_cast<unsigned __int128>(n) * n * n * n * (n + 1);
    unsigned k = 1;
    while (k < 62 && (static_cast<unsigned __int128>(1) << k) < need) ++k;
    Perturbation p;
    p.scale = std::uint64_t{1} << k;
    p.seed = seed;
    const std::uint64_t hi = std::max<std::uint64_t>(p.scale / (n + 1), 2);
    std::mt19937_64 rng(seed);
    p.r.resize(g.edge_count());
    for (auto& x : p.r) x = 1 + uniform_below(rng, hi - 1);
    return p;
}

}  // namespace ftdo
