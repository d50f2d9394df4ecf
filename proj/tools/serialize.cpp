#include "serialize.hpp"

namespace circa::io {

namespace {

json names(const Bits& b, const Graph& g) {
    json out = json::array();
    for (int v : to_list(b)) out.push_back(g.name(v));
    return out;
}

std::string lower_kind(ModKind k) {
    std::string s = kind_name(k);
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

ModKind kind_from(const std::string& s) {
    for (ModKind k : {ModKind::Leaf, ModKind::Serial, ModKind::Parallel, ModKind::Prime})
        if (lower_kind(k) == s) return k;
    fail(Errc::Malformed, "unknown module kind '" + s + "'");
}

}  // namespace

json to_json(const Graph& g) {
    json labels = json::array(), edges = json::array();
    for (int v = 0; v < g.n; ++v) labels.push_back(g.name(v));
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.has_edge(u, v)) edges.push_back({u, v});
    return {{"n", g.n}, {"labels", labels}, {"edges", edges}};
}

Graph graph_from_json(const json& j) {
    Graph g(j.at("n").get<int>());
    g.labels = j.at("labels").get<std::vector<std::string>>();
    if (static_cast<int>(g.labels.size()) != g.n) fail(Errc::Malformed, "graph record: label count differs from n");
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
    return g;
}

json to_json(const ArcModel& psi, const std::function<std::string(int)>& name) {
    json arcs = json::array();
    for (size_t v = 0; v < psi.arcs.size(); ++v)
        arcs.push_back({{"name", name(static_cast<int>(v))}, {"start", psi.arcs[v].first}, {"end", psi.arcs[v].second}});
    return {{"circle", psi.size}, {"arcs", arcs}};
}

ArcModel arc_model_from_json(const json& j, std::vector<std::string>* names) {
    ArcModel psi;
    psi.size = j.at("circle").get<int>();
    for (const auto& a : j.at("arcs")) {
        psi.arcs.emplace_back(a.at("start").get<int>(), a.at("end").get<int>());
        if (names) names->push_back(a.at("name").get<std::string>());
    }
    return psi;
}

json to_json(const Word& w, const std::function<std::string(int)>& name) {
    json out = json::array();
    for (const Letter& l : w) out.push_back(letter_string(l, name));
    return out;
}

Word word_from_json(const json& j, const std::function<int(const std::string&)>& id_of) {
    std::string text;
    for (const auto& tok : j) text += tok.get<std::string>() + " ";
    return parse_word(text, id_of);
}

json to_json(const Structure& s, const Graph& g) {
    json vertices = json::array(), rows = json::array(), left = json::array(), right = json::array();
    for (int v = 0; v < s.n; ++v) {
        vertices.push_back(g.name(v));
        json row = json::array();
        for (int u = 0; u < s.n; ++u) row.push_back(u == v ? "--" : pair_name(s.m(v, u)));
        rows.push_back(row);
        left.push_back(names(s.sides.left[v], g));
        right.push_back(names(s.sides.right[v], g));
    }
    return {{"type", "matrix"}, {"vertices", vertices}, {"rows", rows}, {"left", left}, {"right", right}};
}

json to_json(const MDTree& t, const Graph& g) {
    json nodes = json::array();
    for (const MDNode& nd : t.nodes)
        nodes.push_back({{"kind", lower_kind(nd.kind)}, {"set", names(nd.set, g)}, {"parent", nd.parent}, {"children", nd.children}});
    return {{"type", "mdtree"}, {"nodes", nodes}};
}

MDTree md_tree_from_json(const json& j, const std::function<int(const std::string&)>& id_of, int n) {
    MDTree t;
    t.leaf_of.assign(n, -1);
    for (const auto& r : j.at("nodes")) {
        MDNode nd;
        nd.kind = kind_from(r.at("kind").get<std::string>());
        nd.set = Bits(n);
        for (const auto& v : r.at("set")) nd.set.set(id_of(v.get<std::string>()));
        nd.parent = r.at("parent").get<int>();
        nd.children = r.at("children").get<std::vector<int>>();
        if (nd.kind == ModKind::Leaf) t.leaf_of[nd.least()] = static_cast<int>(t.nodes.size());
        t.nodes.push_back(std::move(nd));
    }
    return t;
}

json to_json(const SlotOrder& so, const Graph& g) {
    json classes = json::array(), pi = json::array();
    for (const Metaedge& me : so.classes) {
        json first = json::array(), second = json::array();
        for (int v : me.verts) {
            first.push_back(letter_string(me.letter(v, 0), [&](int x) { return g.name(x); }));
            second.push_back(letter_string(me.letter(v, 1), [&](int x) { return g.name(x); }));
        }
        classes.push_back({{"first", first}, {"second", second}});
    }
    for (int m = 0; m < 2; ++m) {
        json seq = json::array();
        for (auto [c, j] : so.pi[m]) seq.push_back({c, j});
        pi.push_back(seq);
    }
    return {{"type", "slots"}, {"classes", classes}, {"pi", pi}};
}

json to_json(const TNMTree& t, const Graph& g) {
    json modules = json::array(), nodes = json::array();
    for (const TModule& m : t.modules) modules.push_back({{"kind", lower_kind(m.kind)}, {"set", names(m.set, g)}, {"nodes", m.nodes}});
    for (size_t j = 0; j < t.nodes.size(); ++j)
        nodes.push_back({{"name", t.node_name(static_cast<int>(j))}, {"modules", t.nodes[j].modules}});
    return {{"type", "tnm"}, {"modules", modules}, {"nodes", nodes}};
}

json to_json(const IsoResult& r, const Graph& g, const Graph& h) {
    json out = {{"type", "iso"}, {"isomorphic", r.isomorphic}, {"reason", r.reason}};
    if (r.isomorphic) {
        json w = json::object();
        for (size_t v = 0; v < r.witness.size(); ++v) w[g.name(static_cast<int>(v))] = h.name(r.witness[v]);
        out["witness"] = w;
    }
    return out;
}

}  // namespace circa::io
