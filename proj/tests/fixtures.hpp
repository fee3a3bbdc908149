#pragma once

#include "ftdo/generators.hpp"
#include "ftdo/graph.hpp"
#include "ftdo/terminals.hpp"

namespace fx {

inline ftdo::Graph p3() { return ftdo::load_graph("3 2\n0 1\n1 2\n"); }
inline ftdo::Graph k3() { return ftdo::load_graph("3 3\n0 1\n1 2\n0 2\n"); }
// Edge ids: 0:(0,1) 1:(1,2) 2:(2,3) 3:(3,0)
inline ftdo::Graph c4() { return ftdo::cycle_graph(4); }

inline ftdo::TerminalSet terminals(std::size_t n, std::initializer_list<ftdo::Vertex> members) {
    ftdo::TerminalSet t;
    t.member.assign(n, 0);
    for (auto v : members) {
        t.member[v] = 1;
        t.list.push_back(v);
    }
    std::sort(t.list.begin(), t.list.end());
    return t;
}

inline ftdo::Graph er(std::size_t n, double degree, std::uint64_t seed) {
    return ftdo::largest_component(ftdo::erdos_renyi(n, degree / static_cast<double>(n), seed));
}

}  // namespace fx
