#include "circa/intersection.hpp"

#include <ostream>

namespace circa {

const char* pair_name(PairType t) {
    switch (t) {
    case PairType::DI: return "di";
    case PairType::CS: return "cs";
    case PairType::CD: return "cd";
    case PairType::CC: return "cc";
    case PairType::OV: return "ov";
    }
    return "?";
}

namespace {

bool proper_subset(const Bits& a, const Bits& b) { return a.is_subset_of(b) && a != b; }

PairType classify(const Graph& g, const std::vector<Bits>& nb, int v, int u) {
    if (!g.has_edge(v, u)) return PairType::DI;
    if (proper_subset(nb[u], nb[v])) return PairType::CS;
    if (proper_subset(nb[v], nb[u])) return PairType::CD;
    if ((nb[v] | nb[u]).all()) {
        bool ok = true;
        Bits only_v = nb[v] - nb[u];
        for (auto w = only_v.find_first(); ok && w != Bits::npos; w = only_v.find_next(w))
            ok = proper_subset(nb[w], nb[v]);
        Bits only_u = nb[u] - nb[v];
        for (auto w = only_u.find_first(); ok && w != Bits::npos; w = only_u.find_next(w))
            ok = proper_subset(nb[w], nb[u]);
        if (ok) return PairType::CC;
    }
    return PairType::OV;
}

}  // namespace

PairType classify_pair(const Graph& g, int v, int u) {
    g.check_vertex(v);
    g.check_vertex(u);
    if (v == u) fail(Errc::InvalidVertex, "classify_pair needs distinct vertices");
    std::vector<Bits> nb;
    for (int w = 0; w < g.n; ++w) nb.push_back(closed_neighborhood(g, w));
    return classify(g, nb, v, u);
}

Structure build_matrix(const Graph& g) {
    for (int v = 0; v < g.n; ++v)
        if (is_universal(g, v)) fail(Errc::UniversalPresent, "vertex " + g.name(v) + " is universal");
    if (has_twins(g)) fail(Errc::TwinsPresent, "graph has twin vertices");
    Structure s;
    s.n = g.n;
    s.m.n = g.n;
    s.m.cells.assign(static_cast<size_t>(g.n) * g.n, PairType::DI);
    s.sides.left.assign(g.n, Bits(g.n));
    s.sides.right.assign(g.n, Bits(g.n));
    s.ov = Graph(g.n);
    s.ov.labels = g.labels;
    s.mult.assign(g.n, 1);
    std::vector<Bits> nb;
    for (int w = 0; w < g.n; ++w) nb.push_back(closed_neighborhood(g, w));
    for (int v = 0; v < g.n; ++v)
        for (int u = 0; u < g.n; ++u) {
            if (u == v) continue;
            PairType t = classify(g, nb, v, u);
            s.m.at(v, u) = t;
            if (t == PairType::CS || t == PairType::CC) s.sides.left[v].set(u);
            if (t == PairType::DI || t == PairType::CD) s.sides.right[v].set(u);
            if (t == PairType::OV && u > v) s.ov.add_edge(v, u);
        }
    return s;
}

Structure build_matrix(const MultiGraph& g) {
    Structure s = build_matrix(g.base);
    s.mult = g.mult;
    return s;
}

void print_matrix(std::ostream& out, const Graph& g, const Structure& s) {
    size_t w = 2;
    for (int v = 0; v < g.n; ++v) w = std::max(w, g.name(v).size());
    auto pad = [&](const std::string& t) { return t + std::string(w + 1 - t.size(), ' '); };
    out << pad("");
    for (int u = 0; u < g.n; ++u) out << pad(g.name(u));
    out << '\n';
    for (int v = 0; v < g.n; ++v) {
        out << pad(g.name(v));
        for (int u = 0; u < g.n; ++u) out << pad(u == v ? "--" : pair_name(s.m(v, u)));
        out << '\n';
    }
    for (int v = 0; v < g.n; ++v) {
        out << "left(" << g.name(v) << ") = {";
        bool first = true;
        for (int u : to_list(s.sides.left[v])) out << (first ? "" : ",") << g.name(u), first = false;
        out << "}  right(" << g.name(v) << ") = {";
        first = true;
        for (int u : to_list(s.sides.right[v])) out << (first ? "" : ",") << g.name(u), first = false;
        out << "}\n";
    }
}

}  // namespace circa
