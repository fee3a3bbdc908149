#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "ftdo/brute_force.hpp"
#include "ftdo/oracle.hpp"
#include "ftdo/rmq.hpp"
#include "ftdo/sp_tree.hpp"

using namespace ftdo;

TEST_CASE("nearest terminal table") {
    const Graph p3 = fx::p3();
    const Perturbation p = perturb(p3, 1);
    const VertexIndex s0(3, {0});
    const auto b1 = build_nearest_terminal(p3, p, s0, fx::terminals(3, {1}), Execution::serial);
    CHECK(b1.at(0, 2) == 1);
    CHECK(b1.at(0, 1) == 1);
    CHECK(b1.at(0, 0) == kNoVertex);

    const Graph k3 = fx::k3();
    const auto all = build_nearest_terminal(k3, perturb(k3, 1), VertexIndex(3, {0}), fx::terminals(3, {0, 1, 2}),
                                            Execution::serial);
    for (Vertex v = 0; v < 3; ++v) CHECK(all.at(0, v) == v);
}

TEST_CASE("root tables hold hop and perturbed distances") {
    const Graph c4 = fx::c4();
    const Perturbation p = perturb(c4, 1);
    const RootTables rt = build_root_tables(c4, p, VertexIndex(4, {0}), Execution::serial);
    CHECK(rt.dist_p(0, 2).hops == 2);
    CHECK(rt.dist_p(2, 0) == rt.dist_p(0, 2));
    CHECK(rt.dist_p(0, 2) == sssp(c4, p, 0).dist_p[2]);
    CHECK_THROWS_AS(rt.dist_p(1, 2), std::out_of_range);
}

TEST_CASE("B2 on a path of length 8 returns the far end") {
    const Graph g = path_graph(12);
    const RootTables rt = build_root_tables(g, perturb(g, 1), VertexIndex(12, {0}), Execution::serial);
    CHECK(rt.b2(0, 8) == 0);
    CHECK(rt.b2(0, 11) == 3);
    CHECK(rt.b2(0, 1) == 0);
    CHECK(rt.b2(0, 0) == kNoVertex);
}

TEST_CASE("near-case table") {
    SUBCASE("bridges on P3") {
        const Graph p3 = fx::p3();
        const Perturbation p = perturb(p3, 1);
        const VertexIndex s0(3, {0});
        const auto b1 = build_nearest_terminal(p3, p, s0, fx::terminals(3, {}), Execution::serial);
        const auto sweep = build_source_sweep(p3, p, s0, b1, Execution::serial);
        const auto list = sweep.near.list(0, 2);
        REQUIRE(list.size() == 2);
        CHECK(list[0].edge == 0);
        CHECK(list[0].hops == kInfinity);
        CHECK(list[1].edge == 1);
        CHECK(list[1].hops == kInfinity);
        CHECK(sweep.near.list(0, 0).empty());
        CHECK(sweep.near.entry_count() == 3);  // t=1 contributes one edge, t=2 two
    }
    SUBCASE("C4 without terminals") {
        const Graph c4 = fx::c4();
        const Perturbation p = perturb(c4, 1);
        const VertexIndex s0(4, {0});
        const auto b1 = build_nearest_terminal(c4, p, s0, fx::terminals(4, {}), Execution::serial);
        const auto sweep = build_source_sweep(c4, p, s0, b1, Execution::serial);
        const auto list = sweep.near.list(0, 2);
        REQUIRE(list.size() == 2);
        for (const auto& e : list) CHECK(e.hops == 2);
        CHECK_FALSE(sweep.near.find(0, 2, *c4.find_edge(0, 1)).has_value() ==
                    sweep.near.find(0, 2, *c4.find_edge(0, 3)).has_value());
    }
    SUBCASE("only the part above the last terminal is covered") {
        const Graph g = path_graph(6);
        const Perturbation p = perturb(g, 1);
        const VertexIndex s0(6, {0});
        const auto b1 = build_nearest_terminal(g, p, s0, fx::terminals(6, {2}), Execution::serial);
        const auto sweep = build_source_sweep(g, p, s0, b1, Execution::serial);
        const auto list = sweep.near.list(0, 5);
        REQUIRE(list.size() == 3);
        CHECK(list.front().edge == *g.find_edge(2, 3));
        CHECK_FALSE(sweep.near.find(0, 5, *g.find_edge(0, 1)));
    }
}

TEST_CASE("power tables agree with brute force") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Graph g = fx::er(45, 4, seed);
        const std::size_t n = g.vertex_count();
        const Perturbation p = perturb(g, seed);
        const VertexIndex sources(n, sample_sources(n, 4, seed));
        const TerminalSet ts = sample_terminals(n, 4, 3, seed);
        const VertexIndex terms(n, ts.list);
        const auto b1 = build_nearest_terminal(g, p, sources, ts, Execution::serial);
        const auto sweep = build_source_sweep(g, p, sources, b1, Execution::serial);
        const auto b3 = build_b3(g, p, terms, Execution::serial);
        const auto b5 = build_b5(g, p, sources, terms, Execution::serial);
        std::vector<Vertex> roots = sources.vertices;
        roots.insert(roots.end(), ts.list.begin(), ts.list.end());
        const RootTables rt = build_root_tables(g, p, VertexIndex(n, roots), Execution::serial);
        BfsWorkspace ws(g);

        for (std::uint32_t row = 0; row < sources.size(); ++row) {
            const Vertex s = sources.vertices[row];
            const SpTree tree = sssp(g, p, s);
            const auto plain = brute_replacement_row(g, s, kNoEdge);
            for (Vertex x = 0; x < n; ++x) {
                CHECK(rt.hops(s, x) == plain[x]);
                if (x == s) continue;
                const auto edges = tree_path_edges(tree, x);
                const auto path = tree_path(tree, x);
                const std::size_t len = edges.size();
                // B1: last terminal on s -> x.
                Vertex last = kNoVertex;
                for (Vertex w : path)
                    if (ts.contains(w)) last = w;
                CHECK(b1.at(row, x) == last);
                // B2: the vertex 2^floor(log len) hops before x.
                CHECK(rt.b2(s, x) == path[len - (std::size_t{1} << floor_log2(len))]);
                // B4: avoid the 2^i-th edge counted from x.
                for (unsigned i = 0; (std::size_t{1} << i) <= len; ++i)
                    CHECK(sweep.b4.at(row, x, i) == brute_replacement_dist(g, s, x, edges[len - (std::size_t{1} << i)]));
                CHECK(sweep.b4.count(row, x) == floor_log2(len) + 1);
                if (!terms.contains(x) || len < 2) continue;
                const std::uint32_t trow = terms.row(x);
                for (unsigned i = 0; i <= floor_log2(len); ++i)
                    for (unsigned j = 0; j <= floor_log2(len); ++j) {
                        const std::size_t from = std::size_t{1} << i, to = len - (std::size_t{1} << j);
                        if (from >= to) {
                            CHECK(b5.at(row, trow, i, j) == kInfinity);
                            continue;
                        }
                        const auto d = ws.run(s, std::span<const EdgeId>(edges).subspan(from, to - from));
                        CHECK(b5.at(row, trow, i, j) == d[x]);
                    }
            }
        }
        for (std::uint32_t trow = 0; trow < terms.size(); ++trow) {
            const Vertex y = terms.vertices[trow];
            const SpTree tree = sssp(g, p, y);
            for (Vertex x = 0; x < n; ++x) {
                if (x == y || !tree.reachable(x)) continue;
                const auto edges = tree_path_edges(tree, x);  // y side first
                const std::size_t len = edges.size();
                for (unsigned i = 0; (std::size_t{1} << i) <= len; ++i)
                    CHECK(b3.at(trow, x, i) == brute_replacement_dist(g, x, y, edges[len - (std::size_t{1} << i)]));
                CHECK(b3.at(trow, x, 40) == kInfinity);
            }
        }
    }
}

TEST_CASE("B3 across bridges is infinite") {
    const Graph p3 = fx::p3();
    const auto b3 = build_b3(p3, perturb(p3, 1), VertexIndex(3, {2}), Execution::serial);
    CHECK(b3.count(0, 0) == 2);
    CHECK(b3.at(0, 0, 0) == kInfinity);
    CHECK(b3.at(0, 0, 1) == kInfinity);
}

TEST_CASE("B5 on C6 with a two-edge subpath removed") {
    const Graph c6 = cycle_graph(6);
    const Perturbation p = perturb(c6, 2);
    const SpTree tree = sssp(c6, p, 0);
    const auto b5 = build_b5(c6, p, VertexIndex(6, {0}), VertexIndex(6, {3}), Execution::serial);
    // |0 3| = 3: i = j = 0 removes the middle edge, leaving the other side of the cycle.
    CHECK(b5.at(0, 0, 0, 0) == 3);
    CHECK(b5.at(0, 0, 1, 1) == kInfinity);
    CHECK(b5.entry_count() == 1);
    (void)tree;
}

namespace {

struct Built {
    Graph g;
    Perturbation p;
    SpTree tree;
    SigmaBfs sb;
};

Built sigma_of(Graph g, Vertex t, std::vector<Vertex> sources) {
    Built b{std::move(g), {}, {}, {}};
    b.p = perturb(b.g, 1);
    b.tree = sssp(b.g, b.p, t);
    b.sb = build_sigma_bfs(b.tree, sources);
    return b;
}

}  // namespace

TEST_CASE("sigma-BFS: single source on a path") {
    const auto b = sigma_of(path_graph(5), 4, {0});
    REQUIRE(b.sb.nodes.size() == 2);
    CHECK(b.sb.segment_count() == 1);
    CHECK(b.sb.nodes[0].vertex == 4);
    CHECK(b.sb.nodes[1].vertex == 0);
    CHECK(b.sb.nodes[1].depth == 4);
    CHECK(b.sb.nodes[0].heavy == 1);
    CHECK(b.sb.chain_count() == 1);
    const auto route = heavy_light_route(b.sb, 1);
    REQUIRE(route.size() == 1);
    CHECK(route[0].kind == RouteKind::heavy);
    CHECK(route[0].node == 1);
    CHECK(heavy_light_route(b.sb, 0).empty());
}

TEST_CASE("sigma-BFS: star with the target at the centre") {
    const auto b = sigma_of(load_graph("4 3\n0 1\n0 2\n0 3\n"), 0, {1, 2, 3});
    CHECK(b.sb.segment_count() == 3);
    int heavy = 0;
    for (std::uint32_t i = 1; i < b.sb.nodes.size(); ++i) heavy += b.sb.nodes[0].heavy == i;
    CHECK(heavy == 1);
    CHECK(b.sb.nodes[b.sb.nodes[0].heavy].vertex == 1);
}

TEST_CASE("sigma-BFS: two sources merging") {
    // 1 and 2 meet at 3, then 3-4-0 with t = 0.
    const auto b = sigma_of(load_graph("5 4\n1 3\n2 3\n3 4\n4 0\n"), 0, {1, 2});
    CHECK(b.sb.segment_count() == 3);
    const auto x = b.sb.find(3);
    REQUIRE(x != kNoNode);
    CHECK(b.sb.find(4) == kNoNode);
    CHECK(b.sb.nodes[x].subtree == 3);
    CHECK(b.sb.nodes[x].depth == 2);
    CHECK(b.sb.nodes[0].heavy == x);
    CHECK(b.sb.nodes[x].heavy == b.sb.find(1));

    const auto r1 = heavy_light_route(b.sb, b.sb.find(1));
    REQUIRE(r1.size() == 1);
    CHECK(r1[0] == RouteItem{RouteKind::heavy, b.sb.nodes[0].chain, b.sb.find(1)});
    const auto r2 = heavy_light_route(b.sb, b.sb.find(2));
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == RouteItem{RouteKind::heavy, b.sb.nodes[0].chain, x});
    CHECK(r2[1].kind == RouteKind::light);
    CHECK(r2[1].node == b.sb.find(2));
}

TEST_CASE("heavy-light route alternates on a four-segment walk") {
    const Graph g = load_graph(
        "13 12\n0 1\n1 2\n1 3\n3 4\n3 5\n3 10\n3 11\n3 12\n2 6\n2 7\n6 8\n6 9\n");
    const auto b = sigma_of(g, 0, {4, 5, 10, 11, 12, 7, 8, 9});
    const auto& sb = b.sb;
    CHECK(sb.nodes[sb.find(1)].heavy == sb.find(3));
    const auto route = heavy_light_route(sb, sb.find(9));
    REQUIRE(route.size() == 4);
    CHECK(route[0] == RouteItem{RouteKind::heavy, sb.nodes[0].chain, sb.find(1)});
    CHECK(route[1].kind == RouteKind::light);
    CHECK(route[1].node == sb.find(2));
    CHECK(route[2] == RouteItem{RouteKind::heavy, sb.nodes[sb.find(2)].chain, sb.find(6)});
    CHECK(route[3].kind == RouteKind::light);
    CHECK(route[3].node == sb.find(9));
}

TEST_CASE("chains partition the nodes bottom to top") {
    const Graph g = fx::er(80, 5, 4);
    const std::size_t n = g.vertex_count();
    const SpTree tree = sssp(g, perturb(g, 1), 0);
    const SigmaBfs sb = build_sigma_bfs(tree, sample_sources(n, 12, 4));
    std::vector<int> seen(sb.nodes.size(), 0);
    for (std::uint32_t c = 0; c < sb.chain_count(); ++c) {
        const auto ch = sb.chain(c);
        for (std::uint32_t k = 0; k < ch.size(); ++k) {
            ++seen[ch[k]];
            CHECK(sb.nodes[ch[k]].chain == c);
            CHECK(sb.nodes[ch[k]].chain_pos == k);
            if (k > 0) CHECK(sb.nodes[ch[k - 1]].heavy == ch[k]);
        }
    }
    for (int s : seen) CHECK(s == 1);
    const std::size_t bound = 2 * static_cast<std::size_t>(std::ceil(std::log2(n))) + 2;
    for (std::uint32_t i = 0; i < sb.nodes.size(); ++i) CHECK(heavy_light_route(sb, i).size() <= bound);
}

TEST_CASE("intersection index") {
    SUBCASE("path with one source: every vertex maps to the source") {
        const Graph g = path_graph(10);
        const Perturbation p = perturb(g, 1);
        const SpTree tree = sssp(g, p, 9);
        const Vertex s[] = {0};
        const TargetStore ts = build_target(g, p, tree, s, fx::terminals(10, {}), 100.0);
        const auto src = ts.sigma.find(0);
        for (Vertex u = 0; u < 9; ++u) CHECK(TargetStore::lookup(ts.i1, u) == src);
    }
    SUBCASE("an intersection vertex maps to itself") {
        const Graph g = load_graph("5 4\n1 3\n2 3\n3 4\n4 0\n");
        const Perturbation p = perturb(g, 1);
        const SpTree tree = sssp(g, p, 0);
        const Vertex s[] = {1, 2};
        const TargetStore ts = build_target(g, p, tree, s, fx::terminals(5, {}), 100.0);
        CHECK(TargetStore::lookup(ts.i1, 3) == ts.sigma.find(3));
        CHECK(TargetStore::lookup(ts.i1, 4) == ts.sigma.find(3));
    }
    SUBCASE("far vertices resolve through a planted terminal") {
        const Graph g = path_graph(100);
        const Perturbation p = perturb(g, 1);
        const SpTree tree = sssp(g, p, 99);
        const Vertex s[] = {0};
        const TargetStore ts = build_target(g, p, tree, s, fx::terminals(100, {50}), 10.0);
        CHECK(TargetStore::lookup(ts.i1, 10) == ts.sigma.find(0));
        CHECK(TargetStore::lookup(ts.i1, 60) == kNoNode);
        CHECK(TargetStore::lookup(ts.i2, 50) == ts.sigma.find(0));
    }
}

TEST_CASE("sparse table matches a linear scan") {
    std::mt19937_64 rng(5);
    for (std::size_t k : {1u, 2u, 3u, 7u, 16u, 33u}) {
        std::vector<std::uint64_t> v(k);
        for (auto& x : v) x = rng() % 10 == 0 ? SparseTableMin::kNone : rng() % 1000;
        const SparseTableMin rmq(v);
        for (std::size_t lo = 0; lo < k; ++lo)
            for (std::size_t hi = lo; hi < k; ++hi)
                CHECK(rmq.min(lo, hi) == *std::min_element(v.begin() + lo, v.begin() + hi + 1));
        CHECK(rmq.min(1, 0) == SparseTableMin::kNone);
        CHECK(rmq.min(0, k) == SparseTableMin::kNone);
    }
}

TEST_CASE("structural properties on random fixtures") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const Graph g = fx::er(70, 6, seed);
        const std::size_t n = g.vertex_count();
        for (std::size_t sigma : {std::size_t{1}, std::size_t{8}, n}) {
            BuildReport rep;
            BuildParams params;
            params.perturb_seed = seed;
            params.terminal_seed = seed;
            const Oracle o = build_oracle(g, sample_sources(n, sigma, seed), params, &rep);
            CAPTURE(seed);
            CAPTURE(sigma);
            CHECK(rep.tie_events == 0);
            CHECK(rep.max_r1_members <= 1);
            CHECK(rep.contiguity_violations == 0);
            CHECK(rep.merge_diverge_violations == 0);
            CHECK(rep.max_route_items <= 2 * static_cast<std::size_t>(std::ceil(std::log2(n))) + 2);
            CHECK(static_cast<double>(rep.max_gap) <= rep.spacing_bound);
            CHECK(max_terminal_gap(o) == rep.max_gap);
            CHECK(rep.max_sigma_nodes <= 2 * sigma + 1);
        }
    }
}

TEST_CASE("build_oracle argument checks") {
    const Graph g = fx::p3();
    CHECK_THROWS_AS(build_oracle(g, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_oracle(g, {7}, {}), std::invalid_argument);
    BuildParams params;
    params.terminal_seed = 2;  // samples no terminal on P3
    const Oracle o = build_oracle(g, {0}, params);
    CHECK(o.terminal_index.size() == 0);
    CHECK(o.near.entry_count() == 3);
    CHECK(o.near.list(0, 2).size() == 2);
    CHECK(build_oracle(fx::k3(), {0, 1, 2}, {}).terminal_index.size() == 3);
}

TEST_CASE("three sources on a cycle: bad R2 paths can outnumber good ones") {
    // Each later detour sweeps through the earlier one and then crosses its
    // avoided edges, so per-target bad <= good does not hold here.
    const Graph g = cycle_graph(24);
    const std::vector<Vertex> sources{0, 7, 13};
    const Oracle o = build_oracle(g, sources, {});
    const SpTree tree = sssp(g, o.perturbation, 17);
    TargetDiagnostics diag;
    build_target(g, o.perturbation, tree, sources, o.terminals, o.reach, &diag);
    CHECK(diag.r2_good == 1);
    CHECK(diag.r2_bad == 2);
}
