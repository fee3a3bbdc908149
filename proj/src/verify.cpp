#include "ftdo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ftdo/brute_force.hpp"
#include "ftdo/generators.hpp"
#include "ftdo/sp_tree.hpp"

namespace ftdo {

namespace {

struct PairResult {
    std::vector<Mismatch> mismatches;
    std::vector<QueryEvent> fallbacks;
    std::uint64_t mismatch_count = 0;
    std::uint64_t max_probes = 0;
    std::uint64_t tags[6] = {};
    std::uint64_t invariant_violations = 0;
};

}  // namespace

VerifyReport exhaustive_check(const Oracle& o, Execution exec, std::size_t keep_mismatches) {
    const Graph& g = o.graph;
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    const std::size_t sigma = o.sources.size();
    std::vector<PairResult> results(sigma * m);
    for_each_index(exec, sigma * m, [&](std::size_t k) {
        const Vertex s = o.sources.vertices[k / m];
        const auto e = static_cast<EdgeId>(k % m);
        const auto truth = brute_replacement_row(g, s, e);
        PairResult& r = results[k];
        for (Vertex t = 0; t < n; ++t) {
            QueryStats stats;
            const QueryAnswer a = query(o, s, t, e, &stats);
            r.max_probes = std::max(r.max_probes, stats.probes);
            ++r.tags[static_cast<int>(a.tag)];
            if (a.fallback) r.fallbacks.push_back({s, t, e});
            if (a.distance != truth[t]) {
                ++r.mismatch_count;
                if (r.mismatches.size() < keep_mismatches) r.mismatches.push_back({s, t, e, a.distance, truth[t]});
            }
            const Hops base = o.roots.hops(s, t);
            if (a.tag == Provenance::off_path && a.distance != base) ++r.invariant_violations;
            if (a.distance < base) ++r.invariant_violations;
            if (o.sources.contains(t) && t > s && query(o, t, s, e).distance != a.distance) ++r.invariant_violations;
        }
    });

    VerifyReport rep;
    rep.queries = static_cast<std::uint64_t>(sigma) * m * n;
    for (const auto& r : results) {
        rep.mismatch_count += r.mismatch_count;
        for (const auto& mm : r.mismatches)
            if (rep.mismatches.size() < keep_mismatches) rep.mismatches.push_back(mm);
        rep.fallbacks.insert(rep.fallbacks.end(), r.fallbacks.begin(), r.fallbacks.end());
        rep.max_probes = std::max(rep.max_probes, r.max_probes);
        for (int i = 0; i < 6; ++i) rep.tag_counts[i] += r.tags[i];
        rep.invariant_violations += r.invariant_violations;
    }
    rep.fallback_count = rep.fallbacks.size();
    return rep;
}

LemmaStats lemma_stats(const Graph& g, const Oracle& o, const BuildReport& build) {
    LemmaStats st;
    st.build = build;
    st.sizes = o.sizes();
    st.n = g.vertex_count();
    st.sigma = o.sources.size();
    if (st.n <= 64) st.unique_shortest_paths = verify_unique_shortest_paths(g, o.perturbation);
    st.route_bound = 2 * static_cast<std::size_t>(std::ceil(std::log2(std::max<double>(2.0, double(st.n))))) + 2;
    st.sigma_node_bound = 4 * st.sigma + 2;
    st.r2_constant = static_cast<double>(build.max_r2_per_target) / std::sqrt(double(st.n) * double(st.sigma));
    return st;
}

std::vector<std::string> LemmaStats::violations() const {
    std::vector<std::string> out;
    if (build.max_r1_members > 1) out.push_back("a segment has " + std::to_string(build.max_r1_members) + " R1 paths");
    if (build.contiguity_violations) out.push_back(std::to_string(build.contiguity_violations) + " non-contiguous avoided intervals");
    if (build.targets_bad_exceeds_good) out.push_back(std::to_string(build.targets_bad_exceeds_good) + " targets with more bad than good R2 paths");
    if (build.max_route_items > route_bound) out.push_back("heavy-light route of " + std::to_string(build.max_route_items) + " parts");
    if (build.max_sigma_nodes > sigma_node_bound) out.push_back("contracted tree with " + std::to_string(build.max_sigma_nodes) + " nodes");
    if (build.merge_diverge_violations) out.push_back(std::to_string(build.merge_diverge_violations) + " stored paths leave the tree after touching it");
    if (!spacing_ok()) out.push_back("terminal gap " + std::to_string(build.max_gap) + " over bound");
    if (build.tie_events) out.push_back(std::to_string(build.tie_events) + " shortest-path ties");
    if (unique_shortest_paths && !*unique_shortest_paths) out.push_back("shortest paths not unique");
    return out;
}

std::optional<double> fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const double k = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / k, my += y[i] / k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 1e-12) return std::nullopt;
    return sxy / sxx;
}

double estimate_grid_cost(const GridSpec& spec) {
    // Dominant term: one BFS per (terminal, tree edge), ~ sqrt(sigma n) * n * m.
    double cost = 0;
    for (auto n : spec.ns)
        for (auto sigma : spec.sigmas) {
            const double nn = double(n);
            cost += double(spec.seeds.size()) * std::sqrt(double(sigma) * nn) * nn * nn * spec.avg_degree / 2;
        }
    return cost;
}

ScalingReport scaling_experiment(const GridSpec& spec, const ProgressFn& progress) {
    ScalingReport rep;
    for (auto n : spec.ns)
        for (auto sigma : spec.sigmas)
            for (auto seed : spec.seeds) {
                GridPoint pt;
                pt.requested_n = n;
                pt.sigma = sigma;
                pt.seed = seed;
                const Graph g = largest_component(erdos_renyi(n, std::min(1.0, spec.avg_degree / double(n)), seed));
                pt.n = g.vertex_count();
                pt.m = g.edge_count();
                if (sigma > pt.n) throw std::invalid_argument("grid point has more sources than vertices");
                BuildParams params = spec.params;
                params.perturb_seed = spec.params.perturb_seed + seed;
                params.terminal_seed = spec.params.terminal_seed + seed;
                BuildReport build;
                const Oracle o = build_oracle(g, sample_sources(pt.n, sigma, seed), params, &build);
                const SizeReport sizes = o.sizes();
                pt.tables = sizes.tables;
                pt.entries = sizes.total();
                pt.max_r2 = build.max_r2_per_target;
                pt.tie_events = build.tie_events;
                pt.terminal_attempts = build.terminal_attempts;
                pt.gap_ratio = double(build.max_gap) / build.spacing_bound;
                pt.r2_constant = double(pt.max_r2) / std::sqrt(double(pt.n) * double(sigma));

                // Sampled queries: mostly edges on the s->t path, where the work is.
                std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + n);
                std::vector<std::uint64_t> probes;
                std::vector<SpTree> trees;
                for (Vertex s : o.sources.vertices) trees.push_back(sssp(g, o.perturbation, s));
                for (std::size_t q = 0; q < spec.sample_queries && pt.m > 0; ++q) {
                    const std::size_t row = uniform_below(rng, sigma);
                    const Vertex s = o.sources.vertices[row];
                    const auto t = static_cast<Vertex>(uniform_below(rng, pt.n));
                    EdgeId e;
                    if (t != s && q % 4 != 0) {
                        const auto path = tree_path_edges(trees[row], t);
                        e = path[uniform_below(rng, path.size())];
                    } else {
                        e = static_cast<EdgeId>(uniform_below(rng, pt.m));
                    }
                    QueryStats st;
                    const QueryAnswer a = query(o, s, t, e, &st);
                    probes.push_back(st.probes);
                    if (a.fallback) ++pt.fallbacks;
                    if (q % 8 == 0 && a.distance != brute_replacement_dist(g, s, t, e)) ++pt.sample_mismatches;
                }
                if (!probes.empty()) {
                    pt.max_probes = *std::max_element(probes.begin(), probes.end());
                    std::nth_element(probes.begin(), probes.begin() + probes.size() / 2, probes.end());
                    pt.median_probes = double(probes[probes.size() / 2]);
                }
                rep.max_r2_constant = std::max(rep.max_r2_constant, pt.r2_constant);
                rep.points.push_back(pt);
                if (progress) progress(pt);
            }

    std::vector<double> x, y;
    for (const auto& pt : rep.points)
        if (pt.sigma == spec.sigmas.front()) {
            x.push_back(std::log(double(pt.n)));
            y.push_back(std::log(double(pt.entries)));
        }
    rep.size_slope = fit_slope(x, y);
    x.clear(), y.clear();
    for (const auto& pt : rep.points)
        if (pt.requested_n == spec.ns.front()) {
            x.push_back(std::log(double(pt.sigma)));
            y.push_back(std::log(double(pt.entries)));
        }
    rep.sigma_slope = fit_slope(x, y);

    const auto [lo_n, hi_n] = std::minmax_element(spec.ns.begin(), spec.ns.end());
    if (*lo_n != *hi_n) {
        std::uint64_t lo = 0, hi = 0;
        for (const auto& pt : rep.points) {
            if (pt.requested_n == *lo_n) lo = std::max(lo, pt.max_probes);
            if (pt.requested_n == *hi_n) hi = std::max(hi, pt.max_probes);
        }
        if (lo > 0) rep.probe_ratio = double(hi) / double(lo);
    }
    return rep;
}

}  // namespace ftdo
