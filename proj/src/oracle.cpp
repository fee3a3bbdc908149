#include "ftdo/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "ftdo/sp_tree.hpp"

namespace ftdo {

std::uint64_t SizeReport::total() const {
    std::uint64_t sum = 0;
    for (const auto& [name, count] : tables) sum += count;
    return sum;
}

SizeReport Oracle::sizes() const {
    SizeReport r;
    r.tables["b0"] = roots.entry_count();
    r.tables["b0p"] = roots.entry_count();
    r.tables["b1"] = b1.entry_count();
    r.tables["b2"] = roots.power_vertex.size();
    r.tables["b3"] = b3.entry_count();
    r.tables["b4"] = b4.entry_count();
    r.tables["b5"] = b5.entry_count();
    r.tables["near"] = near.entry_count();
    std::uint64_t r1 = 0, r2 = 0, chain = 0, i1 = 0, i2 = 0, nodes = 0;
    for (const auto& ts : targets) {
        r1 += ts.r1_count();
        r2 += ts.r2.size();
        for (const auto& rmq : ts.chain_rmq)
            chain += static_cast<std::uint64_t>(std::count_if(rmq.values().begin(), rmq.values().end(),
                                                              [](std::uint64_t v) { return v != SparseTableMin::kNone; }));
        i1 += ts.i1.size();
        i2 += ts.i2.size();
        nodes += ts.sigma.nodes.size();
    }
    r.tables["r1"] = r1;
    r.tables["r2"] = r2;
    r.tables["chain_tuples"] = chain;
    r.tables["i1"] = i1;
    r.tables["i2"] = i2;
    r.tables["sigma_nodes"] = nodes;
    r.tables["heavy_light"] = routes.size();
    return r;
}

namespace {

std::size_t count_ties(const Graph& g, const Perturbation& p, Execution exec) {
    std::vector<std::size_t> ties(g.vertex_count(), 0);
    for_each_index(exec, g.vertex_count(),
                   [&](std::size_t r) { ties[r] = sssp(g, p, static_cast<Vertex>(r)).tie_events; });
    return std::accumulate(ties.begin(), ties.end(), std::size_t{0});
}

Hops terminal_gap(const Graph& g, const Perturbation& p, const VertexIndex& sources, const NearestTerminalTable& b1,
                  Execution exec) {
    std::vector<Hops> gap(sources.size(), 0);
    for_each_index(exec, sources.size(), [&](std::size_t row) {
        const SpTree tree = sssp(g, p, sources.vertices[row]);
        for (Vertex t : tree.order) {
            const Vertex ts = b1.at(static_cast<std::uint32_t>(row), t);
            const Hops h = ts == kNoVertex ? tree.dist(t) : tree.dist(t) - tree.dist(ts);
            gap[row] = std::max(gap[row], h);
        }
    });
    return gap.empty() ? 0 : *std::max_element(gap.begin(), gap.end());
}

}  // namespace

Oracle build_oracle(const Graph& g, std::vector<Vertex> sources, const BuildParams& params, BuildReport* report) {
    const std::size_t n = g.vertex_count();
    if (sources.empty()) throw std::invalid_argument("at least one source is required");
    for (Vertex s : sources)
        if (s >= n) throw std::invalid_argument("source " + std::to_string(s) + " out of range");

    Oracle o;
    o.graph = g;
    o.c = params.c;
    o.sources = VertexIndex(n, std::move(sources));
    const std::size_t sigma = o.sources.size();
    o.reach = spacing_bound(n, sigma, params.c);
    BuildReport local;
    BuildReport& rep = report ? *report : local;
    rep.spacing_bound = o.reach;

    bool unique = false;
    for (int attempt = 0; attempt < std::max(params.perturb_retries, 1); ++attempt) {
        o.perturbation = perturb(g, params.perturb_seed + static_cast<std::uint64_t>(attempt));
        rep.perturb_attempts = attempt + 1;
        rep.tie_events = count_ties(g, o.perturbation, params.exec);
        if (rep.tie_events == 0) {
            unique = true;
            break;
        }
    }
    if (!unique) throw BuildError("perturbation retries exhausted: shortest paths are not unique");
    rep.perturb_seed = o.perturbation.seed;

    bool spaced = false;
    for (int attempt = 0; attempt <= params.terminal_retries; ++attempt) {
        const std::uint64_t seed = params.terminal_seed + static_cast<std::uint64_t>(attempt);
        o.terminals = sample_terminals(n, sigma, params.c, seed);
        o.b1 = build_nearest_terminal(g, o.perturbation, o.sources, o.terminals, params.exec);
        rep.terminal_attempts = attempt + 1;
        rep.terminal_seed = seed;
        rep.max_gap = terminal_gap(g, o.perturbation, o.sources, o.b1, params.exec);
        if (static_cast<double>(rep.max_gap) <= o.reach) {
            spaced = true;
            break;
        }
    }
    if (!spaced && params.enforce_spacing)
        throw BuildError("terminal spacing bound " + std::to_string(o.reach) + " exceeded after " +
                         std::to_string(rep.terminal_attempts) + " samples (gap " + std::to_string(rep.max_gap) + ")");
    rep.terminal_count = o.terminals.list.size();

    o.terminal_index = VertexIndex(n, o.terminals.list);
    std::vector<Vertex> root_set = o.sources.vertices;
    root_set.insert(root_set.end(), o.terminals.list.begin(), o.terminals.list.end());
    o.roots = build_root_tables(g, o.perturbation, VertexIndex(n, std::move(root_set)), params.exec);
    SourceSweep sweep = build_source_sweep(g, o.perturbation, o.sources, o.b1, params.exec);
    o.near = std::move(sweep.near);
    o.b4 = std::move(sweep.b4);
    o.b3 = build_b3(g, o.perturbation, o.terminal_index, params.exec);
    o.b5 = build_b5(g, o.perturbation, o.sources, o.terminal_index, params.exec);

    o.targets.resize(n);
    std::vector<TargetDiagnostics> diags(report ? n : 0);
    std::vector<std::vector<std::vector<RouteItem>>> per_target(n);
    for_each_index(params.exec, n, [&](std::size_t t) {
        const SpTree tree = sssp(g, o.perturbation, static_cast<Vertex>(t));
        o.targets[t] = build_target(g, o.perturbation, tree, o.sources.vertices, o.terminals, o.reach,
                                    report ? &diags[t] : nullptr);
        const SigmaBfs& sb = o.targets[t].sigma;
        std::vector<std::uint32_t> node_of(n, kNoNode);
        for (std::uint32_t i = 0; i < sb.nodes.size(); ++i) node_of[sb.nodes[i].vertex] = i;
        auto& rows = per_target[t];
        rows.resize(sigma);
        for (std::size_t row = 0; row < sigma; ++row) {
            const Vertex s = o.sources.vertices[row];
            if (tree.reachable(s)) rows[row] = heavy_light_route(sb, node_of[s]);
        }
    });
    o.route_offsets.assign(sigma * n + 1, 0);
    for (std::size_t row = 0, k = 0; row < sigma; ++row)
        for (std::size_t t = 0; t < n; ++t, ++k) {
            const auto& items = per_target[t][row];
            o.route_offsets[k + 1] = o.route_offsets[k] + items.size();
            o.routes.insert(o.routes.end(), items.begin(), items.end());
        }

    if (report) {
        for (std::size_t t = 0; t < n; ++t) {
            const auto& d = diags[t];
            rep.max_sigma_nodes = std::max(rep.max_sigma_nodes, o.targets[t].sigma.nodes.size());
            rep.max_route_items = std::max(rep.max_route_items, d.max_route_items);
            for (auto m : d.r1_members) rep.max_r1_members = std::max<std::size_t>(rep.max_r1_members, m);
            rep.contiguity_violations += d.contiguity_violations;
            rep.merge_diverge_violations += d.merge_diverge_violations;
            rep.max_r2_per_target = std::max(rep.max_r2_per_target, o.targets[t].r2.size());
            rep.r2_good += d.r2_good;
            rep.r2_bad += d.r2_bad;
            if (d.r2_bad > d.r2_good) ++rep.targets_bad_exceeds_good;
            rep.unique_prefix_total += d.unique_prefix_total;
        }
    }
    return o;
}

Hops max_terminal_gap(const Oracle& o) {
    return terminal_gap(o.graph, o.perturbation, o.sources, o.b1, Execution::serial);
}

}  // namespace ftdo
