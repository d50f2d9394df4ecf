#include "circa/tnm.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/bron_kerbosch_all_cliques.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace circa {

std::string TNMTree::node_name(int node) const {
    std::string out = "N[";
    for (size_t i = 0; i < nodes[node].modules.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(modules[nodes[node].modules[i]].least());
    }
    return out + "]";
}

bool separates(const Structure& s, int v, const Bits& a, const Bits& b) {
    if (a[v] || b[v]) fail(Errc::Malformed, "separates: vertex belongs to one of the sets");
    const Bits& l = s.sides.left[v];
    const Bits& r = s.sides.right[v];
    return (a.is_subset_of(l) && b.is_subset_of(r)) || (a.is_subset_of(r) && b.is_subset_of(l));
}

namespace {

using UGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

struct CliqueCollector {
    std::vector<std::vector<int>>* out;
    template <typename Clique, typename G>
    void clique(const Clique& c, const G&) const {
        std::vector<int> members(c.begin(), c.end());
        std::sort(members.begin(), members.end());
        out->push_back(members);
    }
};

}  // namespace

Bits subtree_vertices(const TNMTree& t, bool module_del, int del, int keep) {
    int k = static_cast<int>(t.modules.size());
    int n = static_cast<int>(t.module_of.size());
    // Tree vertices: modules 0..k-1, nodes k..
    int start = module_del ? k + keep : keep;
    int banned = module_del ? del : k + del;
    const auto& adjacent = module_del ? t.modules[del].nodes : t.nodes[del].modules;
    if (std::find(adjacent.begin(), adjacent.end(), keep) == adjacent.end())
        fail(Errc::Malformed, "subtree_vertices: arguments are not adjacent");
    std::vector<char> seen(k + t.nodes.size(), 0);
    seen[banned] = seen[start] = 1;
    std::vector<int> stack{start};
    Bits out(n);
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        auto push = [&](int y) {
            if (!seen[y]) seen[y] = 1, stack.push_back(y);
        };
        if (x < k) {
            out |= t.modules[x].set;
            for (int nd : t.modules[x].nodes) push(k + nd);
        } else {
            for (int m : t.nodes[x - k].modules) push(m);
        }
    }
    return out;
}

bool node_left_of(const Structure& s, const TNMTree& t, int module, int node, int v) {
    for (int other : t.nodes[node].modules)
        if (other != module) return s.left_of(v, t.modules[other].least());
    fail(Errc::Internal, "node with a single module");
}

std::vector<int> inside_nodes(const Structure& s, const TNMTree& t, int module, const Metaedge& me) {
    std::vector<int> out;
    for (int nd : t.modules[module].nodes) {
        bool left = true, right = true;
        for (size_t i = 0; i < me.verts.size(); ++i) {
            bool l = node_left_of(s, t, module, nd, me.verts[i]);
            if (l != (me.orient[i] == 0)) left = false;
            if (l != (me.orient[i] == 1)) right = false;
        }
        if (!left && !right) out.push_back(nd);
    }
    return out;
}

namespace {

std::vector<int> outside_key(const Structure& s, const Bits& outside, int v) {
    auto l = to_list(s.sides.left[v] & outside);
    auto r = to_list(s.sides.right[v] & outside);
    if (r < l) std::swap(l, r);
    l.push_back(-1);
    l.insert(l.end(), r.begin(), r.end());
    return l;
}

}  // namespace

std::vector<std::vector<int>> serial_decomposition(const Structure& s, const TNMTree& t, int module) {
    const Bits& m = t.modules[module].set;
    if (m.count() == 1) return {to_list(m)};
    MDTree md = md_tree(s.ov, m);
    if (md.root().kind != ModKind::Serial) fail(Errc::Internal, "serial_decomposition needs a serial module");
    Bits outside = ~m;
    std::vector<std::vector<int>> classes;
    std::map<std::vector<int>, std::vector<int>> groups;
    for (int c : md.root().children) {
        const Bits& child = md.nodes[c].set;
        Metaedge me = metaedge(s, child);
        if (!inside_nodes(s, t, module, me).empty()) {
            classes.push_back(to_list(child));
            continue;
        }
        for (int v : to_list(child)) groups[outside_key(s, outside, v)].push_back(v);
    }
    for (auto& [key, vs] : groups) {
        std::sort(vs.begin(), vs.end());
        classes.push_back(vs);
    }
    std::sort(classes.begin(), classes.end());
    // Every class must be a union of children.
    for (int c : md.root().children) {
        const Bits& child = md.nodes[c].set;
        int owner = -1;
        for (size_t i = 0; i < classes.size(); ++i)
            if (child.intersects(to_bits(s.n, classes[i]))) {
                if (owner != -1 || !child.is_subset_of(to_bits(s.n, classes[i])))
                    fail(Errc::NotCircularArc, "serial module: a child is split between consistent classes");
                owner = static_cast<int>(i);
            }
    }
    return classes;
}

SlotOrder serial_slot_order(const Structure& s, const TNMTree& t, int module, int bound) {
    const Bits& m = t.modules[module].set;
    auto classes = serial_decomposition(s, t, module);
    Bits outside = ~m;
    SlotOrder so;
    so.class_of.assign(s.n, -1);
    int k = static_cast<int>(classes.size());
    MDTree md = md_tree(s.ov, m);
    for (int i = 0; i < k; ++i) {
        const auto& cls = classes[i];
        int si = cls.front();
        so.skeleton.push_back(si);
        for (int v : cls) so.class_of[v] = i;
        std::vector<int> orient;
        // A class that is exactly one child keeps the child's metaedge orientation.
        bool single_child = false;
        if (m.count() > 1)
            for (int c : md.root().children)
                if (md.nodes[c].set == to_bits(s.n, cls)) single_child = true;
        if (single_child && cls.size() > 1) {
            orient = metaedge(s, to_bits(s.n, cls), si).orient;
        } else {
            auto ref = to_list(s.sides.left[si] & outside);
            for (int v : cls) orient.push_back(to_list(s.sides.left[v] & outside) == ref ? 0 : 1);
        }
        so.classes.push_back(metaedge_with_orientation(s, cls, orient, si));
    }
    if (k == 1) {
        so.pi[0] = so.pi[1] = {{0, 0}, {0, 1}};
        return so;
    }
    SearchSpec spec;
    spec.s = &s;
    spec.chords = so.skeleton;
    // A node inside a class sits next to a letter of the class's skeleton chord, on either side of it.
    std::vector<std::vector<int>> inside(k);
    for (int i = 0; i < k; ++i) inside[i] = inside_nodes(s, t, module, so.classes[i]);
    for (int nd : t.modules[module].nodes) {
        Bits p(s.n);
        int anchor = -1;
        for (int i = 0; i < k; ++i) {
            int v = so.skeleton[i];
            if (node_left_of(s, t, module, nd, v)) p.set(v);
            if (std::find(inside[i].begin(), inside[i].end(), nd) != inside[i].end()) anchor = v;
        }
        spec.points.push_back(p);
        spec.point_anchors.push_back(anchor);
    }
    spec.all = k <= bound;
    auto res = conformal_search(spec);
    if (res.empty()) fail(Errc::NoConformal, "serial module: skeleton has no model compatible with the nodes");
    Word a = res.front();
    Word b = canonical(reflect(a));
    if (spec.all && (res.size() != 2 || !std::binary_search(res.begin(), res.end(), b)))
        fail(Errc::Internal, "serial module: skeleton does not have exactly two mutually reflected models");
    if (b < a) std::swap(a, b);
    for (int mm = 0; mm < 2; ++mm)
        for (const Letter& l : mm == 0 ? a : b) so.pi[mm].push_back(so.slot_of(l));
    return so;
}

namespace {

std::vector<Letter> slot_letters(const SlotOrder& so, std::pair<int, int> sl) {
    std::vector<Letter> out;
    const Metaedge& me = so.classes[sl.first];
    for (int v : me.verts) out.push_back(me.letter(v, sl.second));
    std::sort(out.begin(), out.end());
    return out;
}

/// Position of every vertex letter's slot in pi.
std::vector<std::array<int, 2>> slot_positions(const SlotOrder& so, const std::vector<std::pair<int, int>>& pi, int n) {
    std::vector<std::array<int, 2>> pos(n, {-1, -1});
    for (size_t k = 0; k < pi.size(); ++k)
        for (const Letter& l : slot_letters(so, pi[k])) pos[l.v][l.e] = static_cast<int>(k);
    return pos;
}

bool circ_between_open(int a, int x, int c, int L) {
    // x strictly inside the clockwise stretch a -> c
    int dx = ((x - a) % L + L) % L, dc = ((c - a) % L + L) % L;
    return dx > 0 && dx < dc;
}

}  // namespace

SlotPatterns module_patterns(const Structure& s, const TNMTree& t, int module, int m) {
    const TModule& mod = t.modules[module];
    const SlotOrder& so = mod.so;
    const auto& pi = so.pi[m];
    int L = static_cast<int>(pi.size());
    SlotPatterns out;
    out.slot.resize(2 * so.classes.size());
    for (int k = 0; k < L; ++k) out.slot[2 * pi[k].first + pi[k].second].parts = {slot_letters(so, pi[k])};
    out.gap.assign(L, -1);
    auto pos = slot_positions(so, pi, s.n);
    std::vector<int> members = to_list(mod.set);
    for (int nd : mod.nodes) {
        std::vector<char> req(s.n, 0);
        for (int v : members) req[v] = node_left_of(s, t, module, nd, v);
        // The node lies inside slot k when the letters of k split into those before and after it,
        // and every chord without a letter in k has it on the required side.
        int inside = -1;
        std::vector<Letter> s1;
        for (int k = 0; k < L; ++k) {
            auto letters = slot_letters(so, pi[k]);
            std::vector<Letter> before;
            for (const Letter& l : letters)
                if ((l.e == 0) == static_cast<bool>(req[l.v])) before.push_back(l);
            if (before.empty() || before.size() == letters.size()) continue;
            bool ok = true;
            for (int v : members) {
                if (pos[v][0] == k || pos[v][1] == k) continue;
                if (circ_between_open(pos[v][0], k, pos[v][1], L) != static_cast<bool>(req[v])) ok = false;
            }
            if (!ok) continue;
            if (inside != -1) fail(Errc::Internal, "node fits inside two slots");
            inside = k;
            s1 = before;
        }
        if (inside != -1) {
            Pattern& p = out.slot[2 * pi[inside].first + pi[inside].second];
            std::set<Letter> in1(s1.begin(), s1.end());
            int mixed = -1;
            int state = 0;  // 0: parts inside S1, 1: after the mixed part
            for (size_t i = 0; i < p.parts.size(); ++i) {
                size_t cnt = 0;
                for (const Letter& l : p.parts[i]) cnt += in1.count(l);
                bool full = cnt == p.parts[i].size(), none = cnt == 0;
                if (full && state == 0) continue;
                if (none && state == 1) continue;
                if (!full && !none && state == 0) {
                    mixed = static_cast<int>(i);
                    state = 1;
                    continue;
                }
                if (none && state == 0) fail(Errc::NotCircularArc, "two nodes occupy the same place in a slot");
                fail(Errc::NotCircularArc, "node sides are not consistent with the slot pattern");
            }
            if (mixed == -1) fail(Errc::NotCircularArc, "two nodes occupy the same place in a slot");
            std::vector<Letter> a, b;
            for (const Letter& l : p.parts[mixed]) (in1.count(l) ? a : b).push_back(l);
            p.parts[mixed] = a;
            p.parts.insert(p.parts.begin() + mixed + 1, b);
            p.nodes.insert(p.nodes.begin() + mixed, nd);
            continue;
        }
        int found = -1;
        for (int b = 0; b < L && found < 0; ++b) {
            bool ok = true;
            for (int v : members) {
                // boundary b (after slot b) lies in v's stretch iff b in [pos0, pos1) circularly
                int a = pos[v][0], c = pos[v][1];
                bool in = ((b - a + L) % L) < ((c - a + L) % L);
                if (in != static_cast<bool>(req[v])) {
                    ok = false;
                    break;
                }
            }
            if (ok) found = b;
        }
        if (found < 0) fail(Errc::NotCircularArc, "node fits no gap of the slot order");
        if (out.gap[found] != -1) fail(Errc::NotCircularArc, "two nodes share a gap between slots");
        out.gap[found] = nd;
    }
    return out;
}

TNMTree build_tnm(const Structure& s, bool slots, int bound) {
    Bits all(s.n);
    all.set();
    MDTree md = md_tree(s.ov, all);
    if (md.root().kind != ModKind::Parallel) fail(Errc::Malformed, "build_tnm needs a disconnected overlap graph");
    TNMTree t;
    t.module_of.assign(s.n, -1);
    for (int c : md.root().children) {
        TModule mod;
        mod.set = md.nodes[c].set;
        mod.kind = md.nodes[c].kind;
        for (int v : to_list(mod.set)) t.module_of[v] = static_cast<int>(t.modules.size());
        t.modules.push_back(std::move(mod));
    }
    int k = static_cast<int>(t.modules.size());
    UGraph h(k);
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            bool sep = false;
            Bits rest = ~(t.modules[a].set | t.modules[b].set);
            for (int v : to_list(rest))
                if (separates(s, v, t.modules[a].set, t.modules[b].set)) {
                    sep = true;
                    break;
                }
            if (!sep) boost::add_edge(a, b, h);
        }
    std::vector<std::vector<int>> cliques;
    boost::bron_kerbosch_all_cliques(h, CliqueCollector{&cliques}, 2);
    std::sort(cliques.begin(), cliques.end());
    size_t edges = 0;
    for (auto& c : cliques) {
        int id = static_cast<int>(t.nodes.size());
        for (int m : c) t.modules[m].nodes.push_back(id);
        edges += c.size();
        t.nodes.push_back({c});
    }
    if (edges + 1 != t.modules.size() + t.nodes.size()) fail(Errc::NotCircularArc, "module/node graph is not a tree");
    {
        Bits reach(s.n);
        for (int m : t.nodes[0].modules) reach |= t.modules[m].set | subtree_vertices(t, false, 0, m);
        if (reach.count() != static_cast<size_t>(s.n)) fail(Errc::NotCircularArc, "module/node graph is not connected");
    }
    if (!slots) return t;
    for (int i = 0; i < k; ++i) {
        TModule& mod = t.modules[i];
        mod.so = mod.kind == ModKind::Prime ? slot_order(s, mod.set, bound) : serial_slot_order(s, t, i, bound);
    }
    for (int i = 0; i < k; ++i)
        for (int m = 0; m < 2; ++m) t.modules[i].pat[m] = module_patterns(s, t, i, m);
    return t;
}

namespace {

/// Circularly collapses runs of equal tokens; tokens >= 0 are collapsible ids, letters stay.
struct Token {
    Letter l;
    bool collapsible;
};

std::vector<Token> collapse(const std::vector<Token>& in) {
    std::vector<Token> out;
    for (const Token& t : in)
        if (!(t.collapsible && !out.empty() && out.back().collapsible && out.back().l.v == t.l.v)) out.push_back(t);
    while (out.size() > 1 && out.front().collapsible && out.back().collapsible && out.front().l.v == out.back().l.v) out.pop_back();
    return out;
}

}  // namespace

std::optional<Word> restrict_to_module(const Word& phi, const TNMTree& t, int module) {
    const TModule& mod = t.modules[module];
    std::vector<int> owner(t.module_of.size(), -1);
    for (int nd : mod.nodes)
        for (int v : to_list(subtree_vertices(t, true, module, nd))) owner[v] = nd;
    std::vector<Token> toks;
    for (const Letter& l : phi) {
        if (mod.set[l.v])
            toks.push_back({l, false});
        else
            toks.push_back({{owner[l.v], 2}, true});
    }
    auto col = collapse(toks);
    Word w;
    std::map<int, int> count;
    for (const Token& t2 : col) {
        w.push_back(t2.l);
        if (t2.collapsible) ++count[t2.l.v];
    }
    for (auto& [nd, c] : count)
        if (c != 1) return std::nullopt;
    return w;
}

std::optional<std::vector<int>> restrict_to_node(const Word& phi, const TNMTree& t, int node) {
    std::vector<int> owner(t.module_of.size(), -1);
    for (int m : t.nodes[node].modules)
        for (int v : to_list(subtree_vertices(t, false, node, m))) owner[v] = m;
    std::vector<Token> toks;
    for (const Letter& l : phi) toks.push_back({{owner[l.v], 2}, true});
    auto col = collapse(toks);
    std::vector<int> out;
    std::set<int> seen;
    for (const Token& t2 : col) {
        if (!seen.insert(t2.l.v).second) return std::nullopt;
        out.push_back(t2.l.v);
    }
    return out;
}

std::optional<SlotPatterns> patterns_of_word(const Word& w, const TNMTree& t, int module, int m) {
    const TModule& mod = t.modules[module];
    const SlotOrder& so = mod.so;
    const auto& pi = so.pi[m];
    int L = static_cast<int>(pi.size());
    Word core;
    for (const Letter& l : w)
        if (l.e != 2) core.push_back(l);
    auto seq = slot_sequence(core, so);
    if (!seq || !same_circular(*seq, pi)) return std::nullopt;
    // Rotate to start at the first letter of a slot run.
    int n = static_cast<int>(w.size());
    int start = -1;
    for (int i = 0; i < n && start < 0; ++i) {
        if (w[i].e == 2) continue;
        int j = (i - 1 + n) % n;
        while (w[j].e == 2) j = (j - 1 + n) % n;
        if (so.slot_of(w[j]) != so.slot_of(w[i])) start = i;
    }
    if (start < 0) return std::nullopt;
    SlotPatterns out;
    out.slot.resize(2 * so.classes.size());
    std::vector<std::pair<int, int>> order;
    std::vector<std::vector<int>> gaps;
    std::vector<int> pending;
    for (int k = 0; k < n; ++k) {
        const Letter& l = w[(start + k) % n];
        if (l.e == 2) {
            pending.push_back(l.v);
            continue;
        }
        auto sl = so.slot_of(l);
        if (order.empty() || order.back() != sl) {
            if (!order.empty()) gaps.push_back(pending);
            pending.clear();
            order.push_back(sl);
            out.slot[2 * sl.first + sl.second].parts.push_back({});
        }
        Pattern& p = out.slot[2 * sl.first + sl.second];
        for (int nd : pending) {
            p.nodes.push_back(nd);
            p.parts.push_back({});
        }
        pending.clear();
        p.parts.back().push_back(l);
    }
    gaps.push_back(pending);
    for (auto& p : out.slot)
        for (auto& part : p.parts) std::sort(part.begin(), part.end());
    int rot = -1;
    for (int r = 0; r < L && rot < 0; ++r) {
        bool ok = true;
        for (int k = 0; k < L && ok; ++k) ok = order[k] == pi[(k + r) % L];
        if (ok) rot = r;
    }
    if (rot < 0 || static_cast<int>(gaps.size()) != L) return std::nullopt;
    out.gap.assign(L, -1);
    for (int k = 0; k < L; ++k) {
        if (gaps[k].size() > 1) return std::nullopt;
        if (gaps[k].size() == 1) out.gap[(k + rot) % L] = gaps[k][0];
    }
    return out;
}

bool is_extended_admissible(const Word& w, const Structure& s, const TNMTree& t, int module, int m) {
    const TModule& mod = t.modules[module];
    std::multiset<int> nodes;
    Word core;
    for (const Letter& l : w) {
        if (l.e == 2)
            nodes.insert(l.v);
        else
            core.push_back(l);
    }
    if (nodes != std::multiset<int>(mod.nodes.begin(), mod.nodes.end())) return false;
    if (core.size() != 2 * mod.set.count()) return false;
    for (const Letter& l : core)
        if (l.v < 0 || l.v >= s.n || !mod.set[l.v]) return false;
    if (!is_admissible_for_slot_order(core, s, mod.so, m)) return false;
    auto p = patterns_of_word(w, t, module, m);
    return p && *p == mod.pat[m];
}

namespace {

struct Composer {
    const TNMTree& t;
    const std::vector<Word>& words;
    const std::vector<std::vector<int>>& orders;

    Word module_word(int a, int parent) const {
        Word w = words[a];
        if (parent >= 0) {
            auto it = std::find(w.begin(), w.end(), Letter{parent, 2});
            if (it == w.end()) fail(Errc::Malformed, "compose_full: module word lacks its parent node");
            std::rotate(w.begin(), it + 1, w.end());
            w.pop_back();
        }
        Word out;
        for (const Letter& l : w) {
            if (l.e != 2) {
                out.push_back(l);
                continue;
            }
            Word sub = node_word(l.v, a);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }

    Word node_word(int nd, int parent) const {
        std::vector<int> ord = orders[nd];
        auto it = std::find(ord.begin(), ord.end(), parent);
        if (it == ord.end()) fail(Errc::Malformed, "compose_full: node order lacks its parent module");
        std::rotate(ord.begin(), it, ord.end());
        Word out;
        for (size_t i = 1; i < ord.size(); ++i) {
            Word sub = module_word(ord[i], nd);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
};

}  // namespace

Word compose_full(const TNMTree& t, int root, const std::vector<Word>& module_words, const std::vector<std::vector<int>>& node_orders) {
    if (module_words.size() != t.modules.size() || node_orders.size() != t.nodes.size())
        fail(Errc::Malformed, "compose_full: one word per module and one order per node expected");
    Composer c{t, module_words, node_orders};
    return c.module_word(root, -1);
}

std::string tnm_dot(const TNMTree& t, const Graph& g) {
    std::ostringstream out;
    out << "graph tnm {\n";
    for (size_t i = 0; i < t.modules.size(); ++i) {
        out << "  m" << i << " [shape=box,label=\"" << kind_name(t.modules[i].kind) << " {";
        bool first = true;
        for (int v : to_list(t.modules[i].set)) {
            out << (first ? "" : ",") << g.name(v);
            first = false;
        }
        out << "}\"];\n";
    }
    for (size_t j = 0; j < t.nodes.size(); ++j) {
        out << "  n" << j << " [shape=ellipse,label=\"" << t.node_name(static_cast<int>(j)) << "\"];\n";
        for (int m : t.nodes[j].modules) out << "  m" << m << " -- n" << j << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace circa
