#pragma once

#include <compare>
#include <cstdint>
#include <random>

#include "ftdo/graph.hpp"

namespace ftdo {

/// Exact length in the perturbed graph: hop count first, then the sum of the
/// per-edge perturbation numerators. Compared lexicographically.
struct PerturbedLength {
    Hops hops = 0;
    std::uint64_t frac = 0;

    static constexpr PerturbedLength infinity() { return {kInfinity, 0}; }
    constexpr bool is_infinite() const { return hops == kInfinity; }

    constexpr auto operator<=>(const PerturbedLength&) const = default;

    constexpr PerturbedLength operator+(const PerturbedLength& o) const {
        if (is_infinite() || o.is_infinite()) return infinity();
        return {hops + o.hops, frac + o.frac};
    }
    /// Only meaningful when `o` is a prefix of `*this` (both finite).
    constexpr PerturbedLength operator-(const PerturbedLength& o) const {
        return {hops - o.hops, frac - o.frac};
    }
};

struct Perturbation {
    std::vector<std::uint64_t> r;  // per edge id, 0 < r(e) < M/(n+1)
    std::uint64_t scale = 1;       // M
    std::uint64_t seed = 0;

    PerturbedLength weight(EdgeId e) const { return {1, r[e]}; }
};

/// Draws r(e) uniformly from [1, M/(n+1)) with M = 2^k the smallest power of two
/// such that M/(n+1) >= n^4 (k capped at 62). Deterministic in (g, seed).
Perturbation perturb(const Graph& g, std::uint64_t seed);

/// Uniform integer in [0, bound) from a 64-bit Mersenne twister; bound > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
/// Uniform double in [0, 1).
double uniform_unit(std::mt19937_64& rng);

}  // namespace ftdo
