#include "ftdo/query.hpp"

#include <algorithm>

namespace ftdo {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::off_path: return "edge-off-path";
        case Provenance::near: return "near";
        case Provenance::through_terminal: return "through-terminal";
        case Provenance::r1: return "r1";
        case Provenance::r2: return "r2";
        case Provenance::fallback: return "fallback";
    }
    return "?";
}

namespace {

struct Probe {
    QueryStats* stats;
    void operator()(std::uint64_t k = 1) const {
        if (stats) stats->probes += k;
    }
};

void validate(const Oracle& o, Vertex s, Vertex t, EdgeId e) {
    const std::size_t n = o.graph.vertex_count();
    if (s >= n) throw QueryError(QueryError::Kind::bad_vertex, "vertex " + std::to_string(s) + " out of range");
    if (t >= n) throw QueryError(QueryError::Kind::bad_vertex, "vertex " + std::to_string(t) + " out of range");
    if (e >= o.graph.edge_count()) throw QueryError(QueryError::Kind::bad_edge, "no edge with id " + std::to_string(e));
    if (!o.sources.contains(s)) throw QueryError(QueryError::Kind::not_a_source, "vertex " + std::to_string(s) + " is not a source");
}

bool on_path_through(const Oracle& o, Vertex s, Vertex a, Vertex mid, Probe& probe) {
    probe(3);
    return o.roots.dist_p(s, a) + o.roots.dist_p(a, mid) == o.roots.dist_p(s, mid);
}

}  // namespace

EdgeLocation edge_on_path(const Oracle& o, Vertex s, Vertex t, EdgeId e, QueryStats* stats) {
    validate(o, s, t, e);
    Probe probe{stats};
    EdgeLocation loc;
    const Edge& ed = o.graph.edge(e);
    probe(3);
    const PerturbedLength st = o.roots.dist_p(s, t);
    if (st.is_infinite() || s == t) return loc;
    const Hops da = o.roots.hops(s, ed.u);
    const Hops db = o.roots.hops(s, ed.v);
    loc.u = da < db ? ed.u : ed.v;
    loc.v = da < db ? ed.v : ed.u;

    const std::uint32_t row = o.sources.row(s);
    probe();
    loc.t_s = o.b1.at(row, t);
    probe();
    if (auto h = o.near.find(row, t, e)) {
        loc.position = EdgePosition::near;
        loc.near_hops = *h;
        return loc;
    }
    if (loc.t_s == kNoVertex) return loc;
    probe(3);
    if (o.roots.dist_p(s, loc.t_s) + o.roots.dist_p(loc.t_s, t) != st) return loc;
    if (on_path_through(o, s, loc.u, loc.t_s, probe) && on_path_through(o, s, loc.v, loc.t_s, probe))
        loc.position = EdgePosition::far;
    return loc;
}

Hops query_through_terminal(const Oracle& o, Vertex s, Vertex t_s, Vertex t, Vertex u, Vertex v, QueryStats* stats) {
    Probe probe{stats};
    const std::uint32_t srow = o.sources.row(s);
    const std::uint32_t trow = o.terminal_index.row(t_s);
    probe(3);
    const Hops tail = o.roots.hops(t_s, t);
    const Hops sv = o.roots.hops(s, v);
    const Hops tu = o.roots.hops(t_s, u);

    probe();
    if (is_power_of_two(sv)) return add_hops(o.b3.at(trow, s, floor_log2(sv)), tail);

    probe(2);
    const Vertex ul = o.roots.b2(s, v);
    const Vertex ur = o.roots.b2(t_s, u);
    probe(4);
    const Hops cand1 = add_hops(o.roots.hops(s, ul), o.b3.at(trow, ul, floor_log2(sv)));
    const Hops cand2 = add_hops(o.b4.at(srow, ur, floor_log2(tu)), o.roots.hops(ur, t_s));
    Hops best = std::min(cand1, cand2);
    if (!is_power_of_two(tu)) {
        // Otherwise ur == t_s and cand2 already avoids exactly e.
        probe();
        best = std::min(best, o.b5.at(srow, trow, floor_log2(sv), floor_log2(tu)));
    }
    return add_hops(best, tail);
}

std::uint32_t find_int(const Oracle& o, Vertex s, Vertex u, Vertex t, QueryStats* stats) {
    Probe probe{stats};
    const TargetStore& ts = o.targets[t];
    probe();
    if (auto node = TargetStore::lookup(ts.i1, u); node != kNoNode) return node;
    probe();
    const Vertex us = o.b1.at(o.sources.row(s), u);
    if (us == kNoVertex) return kNoNode;
    probe(2);
    const Hops gap = o.roots.hops(s, u) - o.roots.hops(s, us);
    if (static_cast<double>(gap) > o.reach) return kNoNode;
    probe();
    return TargetStore::lookup(ts.i2, us);
}

Hops query_r1(const Oracle& o, Vertex s, Vertex t, std::uint32_t int_node, QueryStats* stats) {
    Probe probe{stats};
    const TargetStore& ts = o.targets[t];
    const auto& nodes = ts.sigma.nodes;
    const Hops dx = nodes[int_node].depth;
    probe();
    const Hops st = o.roots.hops(s, t);
    std::uint64_t best = SparseTableMin::kNone;
    for (const RouteItem& item : o.route(o.sources.row(s), t)) {
        probe();
        const SigmaNode& r = nodes[item.node];
        if (r.depth <= dx) continue;
        if (item.kind == RouteKind::light) {
            probe();
            if (ts.r1[item.node] != kInfinity) best = std::min<std::uint64_t>(best, ts.r1[item.node] + st - r.depth);
            continue;
        }
        // Only segments strictly above Int(u, t) on this chain qualify.
        const auto chain = ts.sigma.chain(item.chain);
        probe();
        const auto lo = std::upper_bound(chain.begin(), chain.begin() + r.chain_pos + 1, dx,
                                         [&](Hops d, std::uint32_t node) { return d < nodes[node].depth; }) -
                        chain.begin();
        probe();
        const std::uint64_t m = ts.chain_rmq[item.chain].min(static_cast<std::size_t>(lo), r.chain_pos);
        if (m == SparseTableMin::kNone) continue;
        const Hops top = nodes[chain.back()].depth;
        best = std::min(best, m - (top - r.depth) + (st - r.depth));
    }
    return best >= kInfinity ? kInfinity : static_cast<Hops>(best);
}

Hops query_r2(const Oracle& o, Vertex s, Vertex t, Vertex u, std::uint32_t int_node, QueryStats* stats) {
    Probe probe{stats};
    const TargetStore& ts = o.targets[t];
    probe(2);
    const Hops st = o.roots.hops(s, t);
    const Hops du = st - o.roots.hops(s, u);
    probe();
    const auto entries = ts.r2_of(int_node);
    auto it = std::upper_bound(entries.begin(), entries.end(), du, [](Hops d, const R2Entry& e) { return d < e.lo; });
    if (it == entries.begin()) return kInfinity;
    --it;
    if (du > it->hi) return kInfinity;
    return add_hops(it->length, st - ts.sigma.nodes[int_node].depth);
}

QueryAnswer query(const Oracle& o, Vertex s, Vertex t, EdgeId e, QueryStats* stats) {
    const EdgeLocation loc = edge_on_path(o, s, t, e, stats);
    QueryAnswer ans;
    switch (loc.position) {
        case EdgePosition::off:
            ans.distance = o.roots.hops(s, t);
            ans.tag = Provenance::off_path;
            return ans;
        case EdgePosition::near:
            ans.distance = loc.near_hops;
            ans.tag = Provenance::near;
            return ans;
        case EdgePosition::far:
            break;
    }
    ans.distance = query_through_terminal(o, s, loc.t_s, t, loc.u, loc.v, stats);
    ans.tag = Provenance::through_terminal;
    const std::uint32_t x = find_int(o, s, loc.u, t, stats);
    if (x == kNoNode) {
        BfsWorkspace ws(o.graph);
        ans.distance = ws.run(s, e)[t];
        ans.tag = Provenance::fallback;
        ans.fallback = true;
        return ans;
    }
    if (const Hops r1 = query_r1(o, s, t, x, stats); r1 < ans.distance) {
        ans.distance = r1;
        ans.tag = Provenance::r1;
    }
    if (const Hops r2 = query_r2(o, s, t, loc.u, x, stats); r2 < ans.distance) {
        ans.distance = r2;
        ans.tag = Provenance::r2;
    }
    return ans;
}

}  // namespace ftdo
