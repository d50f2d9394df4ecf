#pragma once

#include "circa/word.hpp"

#include <sstream>
#include <string>

namespace fixtures {

inline circa::Graph graph_from(const std::string& text) {
    std::istringstream in(text);
    return circa::read_graph(in);
}

inline circa::Graph path(int n) {
    circa::Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline circa::Graph cycle(int n) {
    circa::Graph g = path(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline circa::Graph star(int leaves) {
    circa::Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

/// C6 as arcs v1..v6 (ids 0..5), each overlapping its two neighbours.
inline circa::ArcModel c6_model() {
    circa::ArcModel psi;
    psi.size = 12;
    psi.arcs = {{10, 1}, {0, 3}, {2, 5}, {4, 7}, {6, 9}, {8, 11}};
    return psi;
}

inline std::string vname(int v) { return "v" + std::to_string(v + 1); }

inline int vid(const std::string& s) { return std::stoi(s.substr(1)) - 1; }

}  // namespace fixtures
