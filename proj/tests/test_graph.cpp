#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "ftdo/perturbation.hpp"
#include "ftdo/sp_tree.hpp"

using namespace ftdo;

TEST_CASE("load_graph parses the edge-list format") {
    const Graph p3 = load_graph("3 2\n0 1\n1 2");
    CHECK(p3.vertex_count() == 3);
    REQUIRE(p3.edge_count() == 2);
    CHECK(p3.edge(0).u == 0);
    CHECK(p3.edge(0).v == 1);
    CHECK(p3.edge(1).u == 1);
    CHECK(p3.edge(1).v == 2);

    const Graph k3 = load_graph("3 3\n0 1\n1 2\n0 2");
    CHECK(k3.edge_count() == 3);
    CHECK(k3.find_edge(2, 0) == EdgeId{2});
    CHECK(!load_graph("# comment\n2 0\n").find_edge(0, 1));
}

TEST_CASE("load_graph rejects bad input with the line number") {
    auto fails = [](const char* text, GraphParseError::Kind kind, std::size_t line) {
        try {
            load_graph(text);
            FAIL("accepted: " << text);
        } catch (const GraphParseError& e) {
            CHECK(e.kind() == kind);
            CHECK(e.line() == line);
        }
    };
    fails("2 1\n0 0", GraphParseError::Kind::self_loop, 2);
    fails("3 2\n0 1\n1 0", GraphParseError::Kind::duplicate_edge, 3);
    fails("3 1\n0 3", GraphParseError::Kind::out_of_range, 2);
    fails("3 1\n0 x", GraphParseError::Kind::malformed, 2);
    fails("3 2\n0 1", GraphParseError::Kind::edge_count, 2);
    fails("banana", GraphParseError::Kind::malformed, 1);
}

TEST_CASE("to_text round-trips") {
    const Graph g = fx::er(40, 5, 3);
    const Graph h = load_graph(to_text(g));
    CHECK(to_text(h) == to_text(g));
}

TEST_CASE("perturb is deterministic and in range") {
    const Graph g = fx::er(50, 6, 1);
    const Perturbation a = perturb(g, 9), b = perturb(g, 9), c = perturb(g, 10);
    CHECK(a.r == b.r);
    CHECK(a.r != c.r);
    const std::uint64_t n = g.vertex_count();
    CHECK(a.scale / (n + 1) >= n * n * n * n);
    std::uint64_t biggest = 0;
    for (auto r : a.r) {
        CHECK(r >= 1);
        CHECK(r < a.scale / (n + 1));
        biggest = std::max(biggest, r);
    }
    // A simple path has at most n - 1 edges, so its frac sum stays below M.
    CHECK(biggest * (n - 1) < a.scale);
}

TEST_CASE("sssp distances") {
    const Graph p3 = fx::p3(), k3 = fx::k3(), c4 = fx::c4();
    auto hops = [](const SpTree& t) {
        std::vector<Hops> d;
        for (std::size_t v = 0; v < t.size(); ++v) d.push_back(t.dist(static_cast<Vertex>(v)));
        return d;
    };
    CHECK(hops(sssp(p3, perturb(p3, 1), 0)) == std::vector<Hops>{0, 1, 2});
    CHECK(hops(sssp(k3, perturb(k3, 1), 0)) == std::vector<Hops>{0, 1, 1});
    const Perturbation p = perturb(c4, 1);
    const SpTree t = sssp(c4, p, 0);
    CHECK(hops(t) == std::vector<Hops>{0, 1, 2, 1});
    const std::uint64_t via1 = p.r[0] + p.r[1], via3 = p.r[3] + p.r[2];
    CHECK(t.parent[2] == (via1 < via3 ? 1u : 3u));
    CHECK(t.tie_events == 0);

    const Graph split = load_graph("4 1\n0 1\n");
    const SpTree s = sssp(split, perturb(split, 1), 0);
    CHECK(!s.reachable(2));
    CHECK(s.dist(2) == kInfinity);
}

TEST_CASE("sssp counts ties under symmetric weights") {
    const Graph c4 = fx::c4();
    Perturbation p = perturb(c4, 1);
    p.r.assign(4, 1);
    CHECK(sssp(c4, p, 0).tie_events == 1);
}

TEST_CASE("tree_path") {
    const Graph p3 = fx::p3();
    const SpTree t = sssp(p3, perturb(p3, 1), 0);
    CHECK(tree_path(t, 2) == std::vector<Vertex>{0, 1, 2});
    CHECK(tree_path(t, 0) == std::vector<Vertex>{0});
    CHECK(tree_path_edges(t, 2) == std::vector<EdgeId>{0, 1});

    const Graph c4 = fx::c4();
    const SpTree c = sssp(c4, perturb(c4, 1), 0);
    const auto path = tree_path(c, 2);
    REQUIRE(path.size() == 3);
    CHECK(path[1] == c.parent[2]);

    const Graph split = load_graph("3 1\n0 1\n");
    CHECK_THROWS_AS(tree_path(sssp(split, perturb(split, 1), 0), 2), UnreachableVertex);
}

TEST_CASE("verify_unique_shortest_paths") {
    const Graph p3 = fx::p3();
    CHECK(verify_unique_shortest_paths(p3, perturb(p3, 5)));

    const Graph c4 = fx::c4();
    Perturbation flat = perturb(c4, 1);
    flat.r.assign(4, 1);
    CHECK_FALSE(verify_unique_shortest_paths(c4, flat));
    CHECK(verify_unique_shortest_paths(c4, perturb(c4, 1)));

    const Graph k4 = complete_graph(4);
    CHECK(verify_unique_shortest_paths(k4, perturb(k4, 1)));
    const Graph g = fx::er(40, 6, 2);
    CHECK(verify_unique_shortest_paths(g, perturb(g, 1)));
}

TEST_CASE("generators") {
    CHECK(to_text(generate("path", 3, 0, 1)) == to_text(fx::p3()));
    const Graph c4 = generate("cycle", 4, 0, 1);
    CHECK(c4.edge_count() == 4);
    CHECK(generate("complete", 5, 0, 1).edge_count() == 10);
    CHECK(generate("grid", 12, 4, 1).edge_count() == 17);
    CHECK(generate("random-tree", 30, 0, 4).edge_count() == 29);
    CHECK(to_text(generate("erdos-renyi", 100, 0.08, 7)) == to_text(generate("erdos-renyi", 100, 0.08, 7)));
    CHECK(to_text(generate("erdos-renyi", 100, 0.08, 7)) != to_text(generate("erdos-renyi", 100, 0.08, 8)));
    CHECK_THROWS_AS(generate("cycle", 2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate("erdos-renyi", 10, 1.5, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate("grid", 10, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate("hypercube", 8, 0, 1), std::invalid_argument);

    const Graph lcc = largest_component(load_graph("5 2\n0 1\n3 4\n"));
    CHECK(lcc.vertex_count() == 2);
}

TEST_CASE("terminal sampling") {
    const TerminalSet all = sample_terminals(20, 20, 3, 1);
    CHECK(all.list.size() == 20);
    const TerminalSet one = sample_terminals(1, 1, 3, 1);
    CHECK(one.list == std::vector<Vertex>{0});
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto t = sample_terminals(10000, 1, 3, seed);
        CHECK(t.list.size() >= 20);
        CHECK(t.list.size() <= 500);
    }
    CHECK(sample_terminals(500, 4, 3, 3).list == sample_terminals(500, 4, 3, 3).list);
    const auto s = sample_sources(50, 7, 2);
    CHECK(s.size() == 7);
    CHECK(std::set<Vertex>(s.begin(), s.end()).size() == 7);
}
