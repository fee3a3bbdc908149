#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ftdo/brute_force.hpp"
#include "ftdo/query.hpp"
#include "ftdo/sp_tree.hpp"
#include "ftdo/verify.hpp"

using namespace ftdo;

TEST_CASE("query examples") {
    const Oracle k3 = build_oracle(fx::k3(), {0, 1, 2}, {});
    CHECK(query(k3, 0, 2, 2).distance == 2);
    CHECK(query(k3, 0, 2, 0).distance == 1);
    for (Vertex s = 0; s < 3; ++s)
        for (Vertex t = 0; t < 3; ++t)
            for (EdgeId e = 0; e < 3; ++e) {
                const bool on = s != t && k3.graph.edge(e).other(s) == t && (k3.graph.edge(e).u == s || k3.graph.edge(e).v == s);
                CHECK(query(k3, s, t, e).distance == (s == t ? 0 : on ? 2 : 1));
            }

    const Oracle p3 = build_oracle(fx::p3(), {0}, {});
    CHECK(query(p3, 0, 2, 1).distance == kInfinity);
    CHECK(query(p3, 0, 1, 1).distance == 1);

    const Graph c4g = fx::c4();
    const Oracle c4 = build_oracle(c4g, {0}, {});
    const SpTree tree = sssp(c4g, c4.perturbation, 0);
    const Vertex mid = tree.parent[2];
    const Vertex other = mid == 1 ? 3 : 1;
    const auto off = query(c4, 0, 2, *c4g.find_edge(other, 2));
    CHECK(off.distance == 2);
    CHECK(off.tag == Provenance::off_path);
    CHECK(query(c4, 0, 2, *c4g.find_edge(0, mid)).distance == 2);
}

TEST_CASE("query argument errors are distinct") {
    const Oracle o = build_oracle(fx::p3(), {0}, {});
    auto kind_of = [&](Vertex s, Vertex t, EdgeId e) {
        try {
            query(o, s, t, e);
        } catch (const QueryError& ex) {
            return ex.kind();
        }
        FAIL("no error");
        return QueryError::Kind::bad_edge;
    };
    CHECK(kind_of(1, 2, 0) == QueryError::Kind::not_a_source);
    CHECK(kind_of(0, 5, 0) == QueryError::Kind::bad_vertex);
    CHECK(kind_of(9, 0, 0) == QueryError::Kind::bad_vertex);
    CHECK(kind_of(0, 2, 4) == QueryError::Kind::bad_edge);
}

TEST_CASE("edge_on_path classification") {
    SUBCASE("off path on C4") {
        const Graph g = fx::c4();
        const Oracle o = build_oracle(g, {0}, {});
        const Vertex mid = sssp(g, o.perturbation, 0).parent[2];
        const Vertex other = mid == 1 ? 3 : 1;
        CHECK(edge_on_path(o, 0, 2, *g.find_edge(2, other)).position == EdgePosition::off);
    }
    SUBCASE("near on P3") {
        BuildParams params;
        params.terminal_seed = 2;  // no terminals
        const Oracle o = build_oracle(fx::p3(), {0}, params);
        const auto loc = edge_on_path(o, 0, 2, 1);
        CHECK(loc.position == EdgePosition::near);
        CHECK(loc.u == 1);
        CHECK(loc.v == 2);
    }
    SUBCASE("far with orientation on a long path") {
        // Enough terminals are sampled on a 300-vertex path that some edge ends
        // up before the last terminal of the 0 -> 299 path.
        const Graph g = path_graph(300);
        const Oracle o = build_oracle(g, {0}, {});
        const Vertex ts = o.b1.at(0, 299);
        REQUIRE(ts != kNoVertex);
        REQUIRE(ts > 0);
        const auto loc = edge_on_path(o, 0, 299, *g.find_edge(ts - 1, ts));
        CHECK(loc.position == EdgePosition::far);
        CHECK(loc.u == ts - 1);
        CHECK(loc.v == ts);
        CHECK(loc.t_s == ts);
        CHECK(edge_on_path(o, 0, 299, *g.find_edge(298, 299)).position == EdgePosition::near);
        CHECK(query(o, 0, 299, *g.find_edge(ts - 1, ts)).distance == kInfinity);
    }
}

TEST_CASE("through-terminal candidates") {
    // A grid has plenty of detours; compare each far-case answer that the
    // through-terminal part finds against brute force restricted to paths via t_s.
    const Graph g = grid_graph(6, 6);
    const Oracle o = build_oracle(g, {0, 35}, {});
    std::size_t far = 0, power = 0;
    for (Vertex s : o.sources.vertices)
        for (Vertex t = 0; t < g.vertex_count(); ++t)
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                const auto loc = edge_on_path(o, s, t, e);
                if (loc.position != EdgePosition::far) continue;
                ++far;
                const Hops got = query_through_terminal(o, s, loc.t_s, t, loc.u, loc.v);
                const auto from_s = brute_replacement_row(g, s, e);
                const auto from_ts = brute_replacement_row(g, loc.t_s, e);
                // Through-terminal answer: shortest s -> t_s avoiding e, then the intact t_s -> t tail.
                CHECK(got == add_hops(from_s[loc.t_s], from_ts[t]));
                power += is_power_of_two(o.roots.hops(s, loc.v));
            }
    CHECK(far > 0);
    CHECK(power > 0);
}

TEST_CASE("find_int on a single-source path returns the source") {
    const Graph g = path_graph(40);
    const Oracle o = build_oracle(g, {0}, {});
    const auto node = o.targets[39].sigma.find(0);
    for (Vertex u = 0; u < 39; ++u) CHECK(find_int(o, 0, u, 39) == node);
}

TEST_CASE("R2 intervals are closed") {
    // Every stored interval must answer at both of its ends.
    const Graph g = fx::er(60, 6, 3);
    const Oracle o = build_oracle(g, sample_sources(g.vertex_count(), 6, 3), {});
    std::size_t checked = 0;
    for (Vertex t = 0; t < g.vertex_count(); ++t) {
        const auto& ts = o.targets[t];
        for (std::uint32_t x = 1; x < ts.sigma.nodes.size(); ++x)
            for (const R2Entry& e : ts.r2_of(x)) {
                CHECK(e.lo <= e.hi);
                CHECK(e.hi <= ts.sigma.nodes[x].depth);
                CHECK(e.lo > ts.sigma.nodes[ts.sigma.nodes[x].parent].depth);
                ++checked;
            }
    }
    CHECK(checked > 0);
}

TEST_CASE("exhaustive agreement with brute force") {
    struct Case {
        const char* name;
        Graph g;
        std::vector<Vertex> sources;
    };
    std::vector<Case> cases;
    cases.push_back({"P3", fx::p3(), {0}});
    cases.push_back({"K3", fx::k3(), {0, 1, 2}});
    cases.push_back({"C4", fx::c4(), {0}});
    cases.push_back({"C9", cycle_graph(9), {0, 4}});
    cases.push_back({"grid", grid_graph(5, 6), {0, 14, 29}});
    cases.push_back({"tree", random_tree(30, 2), {0, 5, 11}});
    cases.push_back({"disconnected", load_graph("7 6\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n"), {0, 3}});
    {
        const Graph g = fx::er(60, 6, 11);
        const auto s = sample_sources(g.vertex_count(), 8, 11);
        cases.push_back({"er60", g, s});
    }
    for (const auto& c : cases) {
        CAPTURE(c.name);
        const Oracle o = build_oracle(c.g, c.sources, {});
        const VerifyReport r = exhaustive_check(o, Execution::parallel);
        CHECK(r.queries == c.sources.size() * c.g.vertex_count() * c.g.edge_count());
        CHECK(r.mismatch_count == 0);
        CHECK(r.invariant_violations == 0);
        CHECK(r.fallback_count == 0);
        const double lg = std::log2(static_cast<double>(c.g.vertex_count()));
        CHECK(static_cast<double>(r.max_probes) <= 50 * lg * lg + 50);
    }
}

TEST_CASE("exhaustive check counts and tree graphs") {
    const Oracle p3 = build_oracle(fx::p3(), {0}, {});
    CHECK(exhaustive_check(p3, Execution::serial).queries == 6);
    const Oracle k3 = build_oracle(fx::k3(), {0, 1, 2}, {});
    const auto r = exhaustive_check(k3, Execution::serial);
    CHECK(r.queries == 27);
    CHECK(r.clean());

    const Graph tree = random_tree(25, 3);
    const Oracle o = build_oracle(tree, {0, 7}, {});
    for (std::size_t t = 0; t < tree.vertex_count(); ++t) {
        CHECK(o.targets[t].r2.empty());
        CHECK(o.targets[t].r1_count() == 0);
    }
    CHECK(exhaustive_check(o, Execution::serial).clean());
}

TEST_CASE("a corrupted table is caught") {
    Oracle o = build_oracle(cycle_graph(8), {0}, {});
    const auto row = o.roots.roots.row(0);
    o.roots.dist[std::size_t{row} * o.roots.n + 4].hops += 1;
    const auto r = exhaustive_check(o, Execution::serial);
    CHECK(r.mismatch_count > 0);
    CHECK_FALSE(r.clean());
    CHECK_FALSE(r.mismatches.empty());
}

TEST_CASE("lemma statistics") {
    const Graph c = cycle_graph(30);
    BuildReport rep;
    const Oracle o = build_oracle(c, {0}, {}, &rep);
    const LemmaStats ls = lemma_stats(c, o, rep);
    CHECK(ls.violations().empty());
    REQUIRE(ls.unique_shortest_paths.has_value());
    CHECK(*ls.unique_shortest_paths);
    for (std::size_t t = 0; t < c.vertex_count(); ++t) CHECK(o.targets[t].r2.size() + o.targets[t].r1_count() <= 2);

    const Graph tree = random_tree(20, 1);
    BuildReport trep;
    const Oracle to = build_oracle(tree, {0, 3}, {}, &trep);
    CHECK(trep.r2_good + trep.r2_bad == 0);
    CHECK(to.sizes().tables.at("r2") == 0);
    CHECK(lemma_stats(tree, to, trep).r2_constant == 0.0);
}

TEST_CASE("fit_slope") {
    CHECK(*fit_slope({1, 2, 3}, {2, 4, 6}) == doctest::Approx(2.0));
    CHECK_FALSE(fit_slope({1}, {1}).has_value());
    CHECK_FALSE(fit_slope({2, 2}, {1, 3}).has_value());
}
