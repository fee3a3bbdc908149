#include "ftdo/terminals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ftdo/perturbation.hpp"

namespace ftdo {

namespace {

double inclusion_probability(std::size_t n, std::size_t sigma) {
    if (n == 0) return 1.0;
    return std::min(1.0, std::sqrt(static_cast<double>(sigma) / static_cast<double>(n)));
}

}  // namespace

double TerminalSet::probability() const { return inclusion_probability(member.size(), sigma); }

TerminalSet sample_terminals(std::size_t n, std::size_t sigma, double c, std::uint64_t seed) {
    if (sigma < 1 || (n > 0 && sigma > n)) throw std::invalid_argument("sample_terminals: need 1 <= sigma <= n");
    TerminalSet ts;
    ts.sigma = sigma;
    ts.c = c;
    ts.seed = seed;
    ts.member.assign(n, 0);
    const double prob = inclusion_probability(n, sigma);
    std::mt19937_64 rng(seed);
    for (Vertex v = 0; v < n; ++v) {
        // Always draw so membership of v does not depend on the probability cap.
        const bool in = uniform_unit(rng) < prob;
        if (in || prob >= 1.0) {
            ts.member[v] = 1;
            ts.list.push_back(v);
        }
    }
    return ts;
}

std::vector<Vertex> sample_sources(std::size_t n, std::size_t count, std::uint64_t seed) {
    if (count > n) throw std::invalid_argument("more sources requested than vertices");
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) std::swap(all[i], all[i + uniform_below(rng, n - i)]);
    all.resize(count);
    std::sort(all.begin(), all.end());
    return all;
}

double spacing_bound(std::size_t n, std::size_t sigma, double c) {
    if (n <= 1) return 0.0;
    return c * std::sqrt(static_cast<double>(n) / static_cast<double>(sigma)) * std::log(static_cast<double>(n));
}

}  // namespace ftdo
