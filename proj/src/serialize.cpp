#include "ftdo/serialize.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <type_traits>

namespace ftdo {

namespace {

constexpr char kMagic[8] = {'F', 'T', 'D', 'O', 'R', 'A', 'C', 'L'};

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    template <class T>
    void pod(const T& v) {
        static_assert(std::is_arithmetic_v<T>);
        out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
    }
    template <class T>
    void vec(const std::vector<T>& v) {
        pod<std::uint64_t>(v.size());
        if constexpr (std::is_arithmetic_v<T>) {
            out_.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
        } else {
            for (const auto& x : v) item(x);
        }
    }

    void item(const PerturbedLength& x) { pod(x.hops), pod(x.frac); }
    void item(const NearEntry& x) { pod(x.edge), pod(x.hops); }
    void item(const SigmaNode& x) {
        pod(x.vertex), pod(x.depth), pod(x.parent), pod(x.heavy), pod(x.subtree), pod(x.chain), pod(x.chain_pos);
    }
    void item(const R2Entry& x) { pod(x.lo), pod(x.hi), pod(x.length); }
    void item(const IntEntry& x) { pod(x.vertex), pod(x.node); }
    void item(const RouteItem& x) { pod(static_cast<std::uint8_t>(x.kind)), pod(x.chain), pod(x.node); }
    void item(const Edge& x) { pod(x.u), pod(x.v); }

private:
    std::ostream& out_;
};

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    template <class T>
    T pod() {
        T v{};
        in_.read(reinterpret_cast<char*>(&v), sizeof(T));
        if (!in_) throw SerializeError("truncated oracle file");
        return v;
    }
    template <class T>
    std::vector<T> vec() {
        const auto size = pod<std::uint64_t>();
        if (size > (std::uint64_t{1} << 36)) throw SerializeError("corrupt oracle file: implausible array length");
        std::vector<T> v;
        if constexpr (std::is_arithmetic_v<T>) {
            v.resize(size);
            in_.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(size * sizeof(T)));
            if (!in_) throw SerializeError("truncated oracle file");
        } else {
            v.reserve(size);
            for (std::uint64_t i = 0; i < size; ++i) v.push_back(item(static_cast<T*>(nullptr)));
        }
        return v;
    }

    PerturbedLength item(PerturbedLength*) {
        PerturbedLength x;
        x.hops = pod<Hops>();
        x.frac = pod<std::uint64_t>();
        return x;
    }
    NearEntry item(NearEntry*) {
        NearEntry x{};
        x.edge = pod<EdgeId>();
        x.hops = pod<Hops>();
        return x;
    }
    SigmaNode item(SigmaNode*) {
        SigmaNode x;
        x.vertex = pod<Vertex>();
        x.depth = pod<Hops>();
        x.parent = pod<std::uint32_t>();
        x.heavy = pod<std::uint32_t>();
        x.subtree = pod<std::uint32_t>();
        x.chain = pod<std::uint32_t>();
        x.chain_pos = pod<std::uint32_t>();
        return x;
    }
    R2Entry item(R2Entry*) {
        R2Entry x;
        x.lo = pod<Hops>();
        x.hi = pod<Hops>();
        x.length = pod<Hops>();
        return x;
    }
    IntEntry item(IntEntry*) {
        IntEntry x;
        x.vertex = pod<Vertex>();
        x.node = pod<std::uint32_t>();
        return x;
    }
    RouteItem item(RouteItem*) {
        RouteItem x;
        const auto kind = pod<std::uint8_t>();
        if (kind > 1) throw SerializeError("corrupt oracle file: bad route item");
        x.kind = static_cast<RouteKind>(kind);
        x.chain = pod<std::uint32_t>();
        x.node = pod<std::uint32_t>();
        return x;
    }
    Edge item(Edge*) {
        Edge x{};
        x.u = pod<Vertex>();
        x.v = pod<Vertex>();
        return x;
    }

private:
    std::istream& in_;
};

void write_index(Writer& w, const VertexIndex& idx) {
    w.vec(idx.vertices);
    w.vec(idx.row_of);
}

VertexIndex read_index(Reader& r) {
    VertexIndex idx;
    idx.vertices = r.vec<Vertex>();
    idx.row_of = r.vec<std::uint32_t>();
    return idx;
}

void write_ladder(Writer& w, const LadderTable& t) {
    w.pod<std::uint64_t>(t.n);
    w.vec(t.offsets);
    w.vec(t.values);
}

LadderTable read_ladder(Reader& r) {
    LadderTable t;
    t.n = r.pod<std::uint64_t>();
    t.offsets = r.vec<std::uint64_t>();
    t.values = r.vec<Hops>();
    return t;
}

}  // namespace

void save_oracle(const Oracle& o, std::ostream& out) {
    Writer w(out);
    out.write(kMagic, sizeof kMagic);
    w.pod(kOracleFormatVersion);

    // Header: n, m, sigma, seeds, c.
    w.pod<std::uint64_t>(o.graph.vertex_count());
    w.pod<std::uint64_t>(o.graph.edge_count());
    w.pod<std::uint64_t>(o.sources.size());
    w.pod(o.perturbation.seed);
    w.pod(o.terminals.seed);
    w.pod(o.c);
    w.pod(o.reach);

    w.vec(std::vector<Edge>(o.graph.edges().begin(), o.graph.edges().end()));
    w.vec(o.perturbation.r);
    w.pod(o.perturbation.scale);
    write_index(w, o.sources);
    write_index(w, o.terminal_index);
    w.vec(o.terminals.member);
    w.pod<std::uint64_t>(o.terminals.sigma);

    w.pod<std::uint64_t>(o.roots.n);
    write_index(w, o.roots.roots);
    w.vec(o.roots.dist);
    w.vec(o.roots.power_vertex);
    w.pod<std::uint64_t>(o.b1.n);
    w.vec(o.b1.table);
    w.pod<std::uint64_t>(o.near.n);
    w.vec(o.near.offsets);
    w.vec(o.near.entries);
    write_ladder(w, o.b3);
    write_ladder(w, o.b4);
    w.pod<std::uint64_t>(o.b5.terminal_count);
    w.vec(o.b5.offsets);
    w.vec(o.b5.side);
    w.vec(o.b5.values);
    w.pod<std::uint64_t>(o.b5.valid_entries);

    w.pod<std::uint64_t>(o.targets.size());
    for (const auto& ts : o.targets) {
        w.pod(ts.sigma.target);
        w.vec(ts.sigma.nodes);
        w.vec(ts.sigma.chain_offsets);
        w.vec(ts.sigma.chain_nodes);
        w.vec(ts.r1);
        w.vec(ts.r2_offsets);
        w.vec(ts.r2);
        w.pod<std::uint64_t>(ts.chain_rmq.size());
        for (const auto& rmq : ts.chain_rmq) w.vec(rmq.values());
        w.vec(ts.i1);
        w.vec(ts.i2);
    }
    w.vec(o.route_offsets);
    w.vec(o.routes);
    if (!out) throw SerializeError("write failed");
}

Oracle load_oracle(std::istream& in) {
    char magic[sizeof kMagic];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw SerializeError("not an oracle file");
    Reader r(in);
    const auto version = r.pod<std::uint32_t>();
    if (version != kOracleFormatVersion)
        throw SerializeError("unsupported oracle format version " + std::to_string(version));

    Oracle o;
    const auto n = r.pod<std::uint64_t>();
    const auto m = r.pod<std::uint64_t>();
    r.pod<std::uint64_t>();  // sigma, recovered from the source index
    o.perturbation.seed = r.pod<std::uint64_t>();
    o.terminals.seed = r.pod<std::uint64_t>();
    o.c = r.pod<double>();
    o.reach = r.pod<double>();
    o.terminals.c = o.c;

    const auto edges = r.vec<Edge>();
    if (edges.size() != m) throw SerializeError("corrupt oracle file: edge count");
    o.graph = Graph(n);
    try {
        for (const Edge& e : edges) o.graph.add_edge(e.u, e.v);
    } catch (const std::invalid_argument& ex) {
        throw SerializeError(std::string("corrupt oracle file: ") + ex.what());
    }
    o.perturbation.r = r.vec<std::uint64_t>();
    o.perturbation.scale = r.pod<std::uint64_t>();
    o.sources = read_index(r);
    o.terminal_index = read_index(r);
    o.terminals.member = r.vec<char>();
    o.terminals.sigma = r.pod<std::uint64_t>();
    o.terminals.list = o.terminal_index.vertices;

    o.roots.n = r.pod<std::uint64_t>();
    o.roots.roots = read_index(r);
    o.roots.dist = r.vec<PerturbedLength>();
    o.roots.power_vertex = r.vec<Vertex>();
    o.b1.n = r.pod<std::uint64_t>();
    o.b1.table = r.vec<Vertex>();
    o.near.n = r.pod<std::uint64_t>();
    o.near.offsets = r.vec<std::uint64_t>();
    o.near.entries = r.vec<NearEntry>();
    o.b3 = read_ladder(r);
    o.b4 = read_ladder(r);
    o.b5.terminal_count = r.pod<std::uint64_t>();
    o.b5.offsets = r.vec<std::uint64_t>();
    o.b5.side = r.vec<std::uint8_t>();
    o.b5.values = r.vec<Hops>();
    o.b5.valid_entries = r.pod<std::uint64_t>();

    const auto target_count = r.pod<std::uint64_t>();
    if (target_count != n) throw SerializeError("corrupt oracle file: target count");
    o.targets.resize(target_count);
    for (auto& ts : o.targets) {
        ts.sigma.target = r.pod<Vertex>();
        ts.sigma.nodes = r.vec<SigmaNode>();
        ts.sigma.chain_offsets = r.vec<std::uint32_t>();
        ts.sigma.chain_nodes = r.vec<std::uint32_t>();
        ts.r1 = r.vec<Hops>();
        ts.r2_offsets = r.vec<std::uint32_t>();
        ts.r2 = r.vec<R2Entry>();
        const auto chains = r.pod<std::uint64_t>();
        if (chains != ts.sigma.chain_count()) throw SerializeError("corrupt oracle file: chain count");
        for (std::uint64_t c = 0; c < chains; ++c) ts.chain_rmq.emplace_back(r.vec<std::uint64_t>());
        ts.i1 = r.vec<IntEntry>();
        ts.i2 = r.vec<IntEntry>();
    }
    o.route_offsets = r.vec<std::uint64_t>();
    o.routes = r.vec<RouteItem>();
    if (o.route_offsets.size() != o.sources.size() * n + 1 || o.b1.table.size() != o.sources.size() * n)
        throw SerializeError("corrupt oracle file: table shapes");
    return o;
}

void save_oracle_file(const Oracle& o, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SerializeError("cannot open " + path + " for writing");
    save_oracle(o, out);
    out.flush();
    if (!out) throw SerializeError("write to " + path + " failed");
}

Oracle load_oracle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SerializeError("cannot open " + path);
    return load_oracle(in);
}

}  // namespace ftdo
