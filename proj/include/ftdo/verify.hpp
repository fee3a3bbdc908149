#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ftdo/oracle.hpp"
#include "ftdo/query.hpp"

namespace ftdo {

struct Mismatch {
    Vertex s;
    Vertex t;
    EdgeId e;
    Hops got;
    Hops expected;
};

struct QueryEvent {
    Vertex s;
    Vertex t;
    EdgeId e;
};

struct VerifyReport {
    std::size_t instances = 1;
    std::uint64_t queries = 0;
    std::uint64_t mismatch_count = 0;
    std::vector<Mismatch> mismatches;        // first few, in (s, e, t) order
    std::uint64_t fallback_count = 0;
    std::vector<QueryEvent> fallbacks;       // every trigger
    std::uint64_t max_probes = 0;
    std::uint64_t tag_counts[6] = {};
    std::uint64_t invariant_violations = 0;  // off-path, monotone damage, symmetry
    bool clean() const { return mismatch_count == 0 && invariant_violations == 0; }
};

/// Every (s, t, e) with s in S, t in V, e in E against BFS in G - e.
/// Also checks: off-path answers equal B0(s, t); answers never beat B0(s, t);
/// query(s, t, e) == query(t, s, e) when both are sources.
VerifyReport exhaustive_check(const Oracle& o, Execution exec, std::size_t keep_mismatches = 20);

/// Structural facts about a built oracle, checked against the stated bounds.
struct LemmaStats {
    BuildReport build;
    SizeReport sizes;
    std::size_t n = 0;
    std::size_t sigma = 0;
    std::optional<bool> unique_shortest_paths;  // evaluated for n <= 64
    std::size_t route_bound = 0;                // 2 ceil(log2 n) + 2
    std::size_t sigma_node_bound = 0;           // 4 sigma + 2
    double r2_constant = 0.0;                   // max_t |R2(t)| / sqrt(n sigma)

    bool spacing_ok() const { return static_cast<double>(build.max_gap) <= build.spacing_bound; }
    std::vector<std::string> violations() const;
};

LemmaStats lemma_stats(const Graph& g, const Oracle& o, const BuildReport& build);

struct GridSpec {
    std::vector<std::size_t> ns{128, 256, 512, 1024};
    std::vector<std::size_t> sigmas{4};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    double avg_degree = 8.0;
    std::size_t sample_queries = 4000;
    BuildParams params;
};

struct GridPoint {
    std::size_t requested_n = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t sigma = 0;
    std::uint64_t seed = 0;
    std::uint64_t entries = 0;
    std::uint64_t max_probes = 0;
    double median_probes = 0.0;
    std::size_t max_r2 = 0;
    double r2_constant = 0.0;
    std::size_t sample_mismatches = 0;
    std::size_t fallbacks = 0;
    std::size_t tie_events = 0;
    int terminal_attempts = 0;
    double gap_ratio = 0.0;  // max terminal gap / spacing bound
    std::map<std::string, std::uint64_t> tables;
};

struct ScalingReport {
    std::vector<GridPoint> points;
    std::optional<double> size_slope;   // log entries vs log n, at the first sigma
    std::optional<double> sigma_slope;  // log entries vs log sigma, at the first n
    std::optional<double> probe_ratio;  // max probes at largest n / at smallest n
    double max_r2_constant = 0.0;
};

/// Least-squares slope of y against x; nullopt with fewer than two distinct x.
std::optional<double> fit_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Rough build cost in abstract units, used to reject infeasible grids.
double estimate_grid_cost(const GridSpec& spec);

using ProgressFn = std::function<void(const GridPoint&)>;

/// G(n, avg_degree / n) largest components. Sampled queries are compared to
/// brute force as a sanity check.
ScalingReport scaling_experiment(const GridSpec& spec, const ProgressFn& progress = {});

}  // namespace ftdo
