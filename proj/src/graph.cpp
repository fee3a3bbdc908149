#include "ftdo/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>

namespace ftdo {

EdgeId Graph::add_edge(Vertex u, Vertex v) {
    const auto n = vertex_count();
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    if (find_edge(u, v)) throw std::invalid_argument("duplicate edge");
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({u, v});
    adjacency_[u].push_back({v, id});
    adjacency_[v].push_back({u, id});
    return id;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
    if (u >= vertex_count() || v >= vertex_count()) return std::nullopt;
    const auto& a = adjacency_[u].size() <= adjacency_[v].size() ? adjacency_[u] : adjacency_[v];
    const Vertex target = &a == &adjacency_[u] ? v : u;
    for (const Arc& arc : a)
        if (arc.to == target) return arc.edge;
    return std::nullopt;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool parse_uint(std::string_view tok, std::uint64_t& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

Graph load_graph(std::string_view text) {
    using Kind = GraphParseError::Kind;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::optional<Graph> g;
    std::size_t expected_edges = 0;
    std::size_t last_line = 0;

    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        const auto toks = split_ws(line);
        if (toks.empty() || toks.front().front() == '#') {
            if (eol == text.size()) break;
            continue;
        }
        last_line = line_no;
        if (toks.size() != 2) throw GraphParseError(Kind::malformed, line_no, "expected two integers");
        std::uint64_t a = 0, b = 0;
        if (!parse_uint(toks[0], a) || !parse_uint(toks[1], b))
            throw GraphParseError(Kind::malformed, line_no, "expected two non-negative integers");
        if (!g) {
            if (a > std::numeric_limits<Vertex>::max() - 1)
                throw GraphParseError(Kind::out_of_range, line_no, "vertex count too large");
            g.emplace(static_cast<std::size_t>(a));
            expected_edges = static_cast<std::size_t>(b);
        } else {
            if (g->edge_count() == expected_edges)
                throw GraphParseError(Kind::edge_count, line_no, "more edge lines than declared");
            if (a >= g->vertex_count() || b >= g->vertex_count())
                throw GraphParseError(Kind::out_of_range, line_no, "vertex out of range");
            if (a == b) throw GraphParseError(Kind::self_loop, line_no, "self-loop");
            if (g->find_edge(static_cast<Vertex>(a), static_cast<Vertex>(b)))
                throw GraphParseError(Kind::duplicate_edge, line_no, "duplicate edge");
            g->add_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
        }
        if (eol == text.size()) break;
    }
    if (!g) throw GraphParseError(Kind::malformed, line_no, "missing header");
    if (g->edge_count() != expected_edges)
        throw GraphParseError(Kind::edge_count, last_line,
                              "declared " + std::to_string(expected_edges) + " edges, found " +
                                  std::to_string(g->edge_count()));
    return std::move(*g);
}

Graph load_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_graph(ss.str());
}

std::string to_text(const Graph& g) {
    std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
    for (const Edge& e : g.edges()) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    return out;
}

void save_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_text(g);
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<Vertex> component_of(const Graph& g, Vertex root) {
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> order{root};
    seen[root] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const Arc& a : g.neighbors(order[i]))
            if (!seen[a.to]) {
                seen[a.to] = 1;
                order.push_back(a.to);
            }
    return order;
}

Graph largest_component(const Graph& g) {
    const auto n = g.vertex_count();
    std::vector<char> assigned(n, 0);
    std::vector<Vertex> best;
    for (Vertex v = 0; v < n; ++v) {
        if (assigned[v]) continue;
        auto comp = component_of(g, v);
        for (Vertex w : comp) assigned[w] = 1;
        if (comp.size() > best.size()) best = std::move(comp);
    }
    std::sort(best.begin(), best.end());
    std::vector<Vertex> relabel(n, kNoVertex);
    for (std::size_t i = 0; i < best.size(); ++i) relabel[best[i]] = static_cast<Vertex>(i);
    Graph out(best.size());
    for (const Edge& e : g.edges())
        if (relabel[e.u] != kNoVertex && relabel[e.v] != kNoVertex) out.add_edge(relabel[e.u], relabel[e.v]);
    return out;
}

bool is_power_of_two(std::uint64_t x) { return std::has_single_bit(x); }

unsigned floor_log2(std::uint64_t x) { return static_cast<unsigned>(std::bit_width(x) - 1); }

}  // namespace ftdo
