#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftdo/graph.hpp"
#include "ftdo/kernels.hpp"
#include "ftdo/perturbation.hpp"
#include "ftdo/sigma_bfs.hpp"
#include "ftdo/tables.hpp"
#include "ftdo/target_store.hpp"
#include "ftdo/terminals.hpp"

namespace ftdo {

struct BuildParams {
    double c = 3.0;
    std::uint64_t perturb_seed = 1;
    std::uint64_t terminal_seed = 1;
    Execution exec = Execution::parallel;
    int perturb_retries = 8;
    int terminal_retries = 3;
    bool enforce_spacing = true;
};

class BuildError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scalar entries stored per table, for the space accounting.
struct SizeReport {
    std::map<std::string, std::uint64_t> tables;
    std::uint64_t total() const;
};

/// Build-time facts: retries consumed, terminal spacing, structural checks.
struct BuildReport {
    std::uint64_t perturb_seed = 0;   // seed actually used
    std::uint64_t terminal_seed = 0;  // seed actually used
    int perturb_attempts = 0;
    int terminal_attempts = 0;
    std::size_t tie_events = 0;
    Hops max_gap = 0;                 // max over (s, t) of |t_s t| (|s t| when t_s is none)
    double spacing_bound = 0.0;
    std::size_t terminal_count = 0;
    std::size_t max_sigma_nodes = 0;
    std::size_t max_route_items = 0;
    std::size_t max_r1_members = 0;
    std::size_t contiguity_violations = 0;
    std::size_t merge_diverge_violations = 0;
    std::size_t max_r2_per_target = 0;
    std::size_t r2_good = 0;
    std::size_t r2_bad = 0;
    std::size_t targets_bad_exceeds_good = 0;
    std::size_t unique_prefix_total = 0;
};

struct Oracle {
    Graph graph;
    Perturbation perturbation;
    VertexIndex sources;
    VertexIndex terminal_index;
    TerminalSet terminals;
    double c = 3.0;
    double reach = 0.0;  // I1 radius and spacing bound

    RootTables roots;  // B0, B2 over S u T
    NearestTerminalTable b1;
    NearCaseTable near;
    LadderTable b3;
    LadderTable b4;
    SubpathTable b5;
    std::vector<TargetStore> targets;  // per t

    // Heavy/Light lists per (source row, t).
    std::vector<std::uint64_t> route_offsets;
    std::vector<RouteItem> routes;

    std::span<const RouteItem> route(std::uint32_t source_row, Vertex t) const {
        const std::size_t k = std::size_t{source_row} * graph.vertex_count() + t;
        return std::span<const RouteItem>(routes).subspan(route_offsets[k], route_offsets[k + 1] - route_offsets[k]);
    }

    SizeReport sizes() const;
};

/// Builds the oracle. With `report`, structural diagnostics are collected too
/// (this keeps every stored path alive during the build of each target).
Oracle build_oracle(const Graph& g, std::vector<Vertex> sources, const BuildParams& params,
                    BuildReport* report = nullptr);

/// Max over (s, t) of the hops from t_s to t (the whole path when t_s is none).
Hops max_terminal_gap(const Oracle& o);

}  // namespace ftdo
