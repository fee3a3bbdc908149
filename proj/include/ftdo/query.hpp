#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "ftdo/oracle.hpp"

namespace ftdo {

enum class Provenance : std::uint8_t { off_path, near, through_terminal, r1, r2, fallback };

const char* to_string(Provenance p);

struct QueryAnswer {
    Hops distance = kInfinity;
    Provenance tag = Provenance::off_path;
    bool fallback = false;  // answered by BFS because the intersection lookup missed
};

/// Instrumentation: one probe per table lookup.
struct QueryStats {
    std::uint64_t probes = 0;
};

class QueryError : public std::invalid_argument {
public:
    enum class Kind { not_a_source, bad_vertex, bad_edge };
    QueryError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

enum class EdgePosition : std::uint8_t { off, near, far };

/// Where e sits relative to the s->t path; u is the endpoint closer to s.
struct EdgeLocation {
    EdgePosition position = EdgePosition::off;
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
    Vertex t_s = kNoVertex;
    Hops near_hops = kInfinity;  // valid for the near case
};

EdgeLocation edge_on_path(const Oracle& o, Vertex s, Vertex t, EdgeId e, QueryStats* stats = nullptr);

/// Shortest s->t path avoiding (u, v) that passes through t_s.
Hops query_through_terminal(const Oracle& o, Vertex s, Vertex t_s, Vertex t, Vertex u, Vertex v,
                            QueryStats* stats = nullptr);

/// Node index of Int(u, t) in the target's contracted tree; kNoNode when the
/// indexes cannot resolve it.
std::uint32_t find_int(const Oracle& o, Vertex s, Vertex u, Vertex t, QueryStats* stats = nullptr);

Hops query_r1(const Oracle& o, Vertex s, Vertex t, std::uint32_t int_node, QueryStats* stats = nullptr);
Hops query_r2(const Oracle& o, Vertex s, Vertex t, Vertex u, std::uint32_t int_node, QueryStats* stats = nullptr);

/// Distance from s to t in G minus e. Throws QueryError on invalid arguments.
QueryAnswer query(const Oracle& o, Vertex s, Vertex t, EdgeId e, QueryStats* stats = nullptr);

}  // namespace ftdo
