#include "circa/isomorphism.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

namespace circa {

std::vector<int> bipartite_matching(int left, int right, const std::vector<std::pair<int, int>>& edges) {
    using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    G g(left + right);
    for (auto [a, b] : edges) {
        if (a < 0 || a >= left || b < 0 || b >= right) fail(Errc::Malformed, "bipartite_matching: edge out of range");
        boost::add_edge(a, left + b, g);
    }
    std::vector<boost::graph_traits<G>::vertex_descriptor> mate(left + right);
    boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
    std::vector<int> out(left, -1);
    const auto none = boost::graph_traits<G>::null_vertex();
    for (int a = 0; a < left; ++a)
        if (mate[a] != none) out[a] = static_cast<int>(mate[a]) - left;
    return out;
}

std::optional<std::vector<int>> perfect_matching(int left, int right, const std::vector<std::pair<int, int>>& edges) {
    if (left != right) return std::nullopt;
    auto m = bipartite_matching(left, right, edges);
    for (int x : m)
        if (x < 0) return std::nullopt;
    return m;
}

namespace {

std::vector<int> node_heights(const MDTree& t) {
    std::vector<int> h(t.nodes.size(), 0);
    for (int x : t.postorder())
        for (int c : t.nodes[x].children) h[x] = std::max(h[x], h[c] + 1);
    return h;
}

/// Per child of an md node and per half: least and greatest part index of its members.
struct Span {
    std::array<int, 2> lo{INT32_MAX, INT32_MAX}, hi{-1, -1};
};

std::vector<Span> child_spans(const LocalView& v, int node, const std::vector<int>& idx) {
    std::vector<Span> out;
    for (int c : v.md.nodes[node].children) {
        Span sp;
        for (int u : to_list(v.md.nodes[c].set))
            for (int h = 0; h < 2; ++h) {
                sp.lo[h] = std::min(sp.lo[h], v.pos[idx[u]][h]);
                sp.hi[h] = std::max(sp.hi[h], v.pos[idx[u]][h]);
            }
        out.push_back(sp);
    }
    return out;
}

std::vector<int> index_of(const std::vector<int>& verts, int n) {
    std::vector<int> idx(n, -1);
    for (size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = static_cast<int>(i);
    return idx;
}

/// Some member of child i is before some member of child j in one of the two patterns.
bool some_before(const Span& i, const Span& j) { return i.lo[0] < j.hi[0] || i.lo[1] < j.hi[1]; }

std::vector<int> weak_order_heights(const LocalView& v, int node, const std::vector<int>& idx) {
    auto sp = child_spans(v, node, idx);
    int k = static_cast<int>(sp.size());
    std::vector<std::vector<char>> lt(k, std::vector<char>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) lt[i][j] = some_before(sp[i], sp[j]);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (lt[i][j] && lt[j][i]) fail(Errc::Internal, "serial module: children ordered both ways by the patterns");
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l) {
                if (!lt[j][l] || i == j || i == l) continue;
                bool inc_j = !lt[i][j] && !lt[j][i], inc_l = !lt[i][l] && !lt[l][i];
                if (inc_j && inc_l) fail(Errc::Internal, "serial module: pattern order is not a weak order");
            }
    std::vector<int> h(k, 0);
    std::function<int(int)> height = [&](int i) {
        if (h[i]) return h[i];
        int best = 1;
        for (int j = 0; j < k; ++j)
            if (lt[j][i]) best = std::max(best, height(j) + 1);
        return h[i] = best;
    };
    for (int i = 0; i < k; ++i) height(i);
    return h;
}

}  // namespace

std::vector<std::vector<int>> admissible_orders(const Structure& s, const LocalView& v, int md_node) {
    const MDNode& nd = v.md.nodes[md_node];
    auto idx = index_of(v.verts, s.n);
    auto sp = child_spans(v, md_node, idx);
    int k = static_cast<int>(nd.children.size());
    std::vector<int> reps;
    for (int c : nd.children) reps.push_back(v.md.nodes[c].least());
    auto [o0, o1] = prime_orientations(s.ov, reps);
    std::vector<std::vector<int>> out;
    for (const Orientation* o : {&o0, &o1}) {
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            for (int j = 0; j < k && ok; ++j)
                if (o->before(i, j) && some_before(sp[j], sp[i])) ok = false;
        if (!ok) continue;
        auto first = [&](int i, int j) {
            if (s.crosses(reps[i], reps[j])) return o->before(i, j);
            return v.lt.before(idx[reps[i]], idx[reps[j]]);
        };
        std::vector<int> order(k);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), first);
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                if (!first(order[a], order[b])) fail(Errc::Internal, "prime module: child order is not linear");
        out.push_back(order);
    }
    if (out.empty()) fail(Errc::Internal, "prime module: no admissible orientation");
    return out;
}

LocalView local_view(const Structure& s, const std::vector<int>& mult, const Metaedge& me, int first, const Pattern& p_first,
                     const Pattern& p_second) {
    LocalView v;
    v.verts = me.verts;
    int k = static_cast<int>(v.verts.size());
    v.lt = first ? me.lt.reversed() : me.lt;
    auto part_of = [](const Pattern& p) {
        std::map<Letter, int> out;
        for (size_t i = 0; i < p.parts.size(); ++i)
            for (const Letter& l : p.parts[i]) out[l] = static_cast<int>(i);
        return out;
    };
    auto pf = part_of(p_first), ps = part_of(p_second);
    for (int i = 0; i < k; ++i) {
        int u = v.verts[i];
        v.orient.push_back(me.orient[i] ^ first);
        auto a = pf.find(me.letter(u, first)), b = ps.find(me.letter(u, 1 - first));
        if (a == pf.end() || b == ps.end()) fail(Errc::Internal, "local_view: pattern does not cover the class");
        v.pos.push_back({a->second, b->second});
        v.mult.push_back(mult[u]);
    }
    v.nodes[0] = p_first.nodes;
    v.nodes[1] = p_second.nodes;
    v.md = md_tree(s.ov, to_bits(s.n, v.verts));
    v.height = node_heights(v.md);
    auto idx = index_of(v.verts, s.n);
    v.orders.resize(v.md.nodes.size());
    v.wo_height.resize(v.md.nodes.size());
    for (size_t x = 0; x < v.md.nodes.size(); ++x) {
        const MDNode& nd = v.md.nodes[x];
        if (nd.kind == ModKind::Parallel) {
            std::vector<int> order(nd.children.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int i, int j) {
                return v.lt.before(idx[v.md.nodes[nd.children[i]].least()], idx[v.md.nodes[nd.children[j]].least()]);
            });
            v.orders[x] = {order};
        } else if (nd.kind == ModKind::Prime) {
            v.orders[x] = admissible_orders(s, v, static_cast<int>(x));
        } else if (nd.kind == ModKind::Serial) {
            v.wo_height[x] = weak_order_heights(v, static_cast<int>(x), idx);
        }
    }
    return v;
}

std::optional<std::map<int, int>> locally_isomorphic(const LocalView& a, const LocalView& b) {
    if (a.verts.size() != b.verts.size() || a.nodes[0].size() != b.nodes[0].size() || a.nodes[1].size() != b.nodes[1].size())
        return std::nullopt;
    int na = static_cast<int>(a.md.nodes.size()), nb = static_cast<int>(b.md.nodes.size());
    // pairing[x][y]: for accepted pairs, the B child matched to each A child (by child position).
    std::vector<std::vector<std::optional<std::vector<int>>>> pairing(na, std::vector<std::optional<std::vector<int>>>(nb));
    int top = std::max(*std::max_element(a.height.begin(), a.height.end()), *std::max_element(b.height.begin(), b.height.end()));
    std::vector<std::vector<int>> by_h_a(top + 1), by_h_b(top + 1);
    for (int x = 0; x < na; ++x) by_h_a[a.height[x]].push_back(x);
    for (int y = 0; y < nb; ++y) by_h_b[b.height[y]].push_back(y);
    auto ok = [&](int x, int y) { return pairing[x][y].has_value(); };
    auto ia = a.md.leaf_of, ib = b.md.leaf_of;
    std::vector<int> idx_a(ia.size(), -1), idx_b(ib.size(), -1);
    for (size_t i = 0; i < a.verts.size(); ++i) idx_a[a.verts[i]] = static_cast<int>(i);
    for (size_t i = 0; i < b.verts.size(); ++i) idx_b[b.verts[i]] = static_cast<int>(i);
    for (int h = 0; h <= top; ++h)
        for (int x : by_h_a[h])
            for (int y : by_h_b[h]) {
                const MDNode& A = a.md.nodes[x];
                const MDNode& B = b.md.nodes[y];
                if (A.kind != B.kind || A.children.size() != B.children.size() || A.set.count() != B.set.count()) continue;
                int k = static_cast<int>(A.children.size());
                switch (A.kind) {
                case ModKind::Leaf: {
                    int u = idx_a[A.least()], w = idx_b[B.least()];
                    if (a.mult[u] == b.mult[w] && a.orient[u] == b.orient[w] && a.pos[u] == b.pos[w]) pairing[x][y] = std::vector<int>{};
                    break;
                }
                case ModKind::Parallel:
                case ModKind::Prime: {
                    const auto& oa = a.orders[x].front();
                    for (const auto& ob : b.orders[y]) {
                        std::vector<int> p(k);
                        bool all = true;
                        for (int i = 0; i < k && all; ++i) {
                            p[oa[i]] = B.children[ob[i]];
                            all = ok(A.children[oa[i]], B.children[ob[i]]);
                        }
                        if (all) {
                            pairing[x][y] = p;
                            break;
                        }
                    }
                    break;
                }
                case ModKind::Serial: {
                    std::vector<std::pair<int, int>> edges;
                    for (int i = 0; i < k; ++i)
                        for (int j = 0; j < k; ++j)
                            if (ok(A.children[i], B.children[j]) && a.wo_height[x][i] == b.wo_height[y][j]) edges.emplace_back(i, j);
                    if (auto m = perfect_matching(k, k, edges)) {
                        std::vector<int> p(k);
                        for (int i = 0; i < k; ++i) p[i] = B.children[(*m)[i]];
                        pairing[x][y] = p;
                    }
                    break;
                }
                }
            }
    if (!ok(0, 0)) return std::nullopt;
    std::map<int, int> out;
    std::function<void(int, int)> build = [&](int x, int y) {
        const MDNode& A = a.md.nodes[x];
        if (A.kind == ModKind::Leaf) {
            out[A.least()] = b.md.nodes[y].least();
            return;
        }
        const auto& p = *pairing[x][y];
        for (size_t i = 0; i < A.children.size(); ++i) build(A.children[i], p[i]);
    };
    build(0, 0);
    return out;
}

SlotPatterns trivial_patterns(const SlotOrder& so, int m) {
    SlotPatterns p;
    p.slot.resize(2 * so.classes.size());
    for (size_t c = 0; c < so.classes.size(); ++c)
        for (int j = 0; j < 2; ++j) {
            const Metaedge& me = so.classes[c];
            std::vector<Letter> part;
            for (int v : me.verts) part.push_back(me.letter(v, j));
            std::sort(part.begin(), part.end());
            p.slot[2 * c + j].parts = {part};
        }
    p.gap.assign(so.pi[m].size(), -1);
    return p;
}

SlotSide slot_side(const Structure& s, const std::vector<int>& mult, const SlotOrder& so, const SlotPatterns* pats) {
    SlotSide side;
    side.s = &s;
    side.so = &so;
    for (int m = 0; m < 2; ++m) {
        side.pat[m] = pats ? pats[m] : trivial_patterns(so, m);
        for (size_t c = 0; c < so.classes.size(); ++c) {
            int ci = static_cast<int>(c);
            side.views[m].push_back({local_view(s, mult, so.classes[c], 0, side.pat[m].of({ci, 0}), side.pat[m].of({ci, 1})),
                                     local_view(s, mult, so.classes[c], 1, side.pat[m].of({ci, 1}), side.pat[m].of({ci, 0}))});
        }
    }
    return side;
}

std::optional<PinnedWitness> pinned_slot_iso(const SlotSide& a, int ma, int k, const SlotSide& b, int mb, int l) {
    const auto& pa = a.so->pi[ma];
    const auto& pb = b.so->pi[mb];
    int L = static_cast<int>(pa.size());
    if (L != static_cast<int>(pb.size()) || a.so->classes.size() != b.so->classes.size()) return std::nullopt;
    int nc = static_cast<int>(a.so->classes.size());
    std::vector<int> cmap(nc, -1), used(nc, 0), flip(nc, 0);
    PinnedWitness w;
    std::map<int, int> node_back;
    auto map_node = [&](int x, int y) {
        auto [it, fresh] = w.node.emplace(x, y);
        auto [jt, fresh2] = node_back.emplace(y, x);
        return it->second == y && jt->second == x;
    };
    for (int i = 0; i < L; ++i) {
        auto [ca, ha] = pa[(k + i) % L];
        auto [cb, hb] = pb[(l + i) % L];
        if (cmap[ca] == -1) {
            if (used[cb]) return std::nullopt;
            auto loc = locally_isomorphic(a.views[ma][ca][ha], b.views[mb][cb][hb]);
            if (!loc) return std::nullopt;
            cmap[ca] = cb;
            used[cb] = 1;
            flip[ca] = ha ^ hb;
            w.vertex.insert(loc->begin(), loc->end());
        } else if (cmap[ca] != cb || (ha ^ hb) != flip[ca]) {
            return std::nullopt;
        }
        const auto& na = a.pat[ma].of({ca, ha}).nodes;
        const auto& nb = b.pat[mb].of({cb, hb}).nodes;
        if (na.size() != nb.size()) return std::nullopt;
        for (size_t j = 0; j < na.size(); ++j)
            if (!map_node(na[j], nb[j])) return std::nullopt;
        int ga = a.pat[ma].gap[(k + i) % L], gb = b.pat[mb].gap[(l + i) % L];
        if ((ga < 0) != (gb < 0)) return std::nullopt;
        if (ga >= 0 && !map_node(ga, gb)) return std::nullopt;
    }
    return w;
}

namespace {

struct Side {
    const MultiGraph* mg;
    Structure s;
};

std::vector<int> to_witness(const std::map<int, int>& m, int n) {
    std::vector<int> out(n, -1);
    for (auto [u, v] : m) out[u] = v;
    return out;
}

IsoResult no(std::string why) { return {false, {}, std::move(why)}; }

IsoResult serial_case(const Side& g, const Side& h, const MDTree& tg, const MDTree& th) {
    const auto& cg = tg.root().children;
    const auto& ch = th.root().children;
    if (cg.size() != ch.size()) return no("serial: different numbers of children");
    int k = static_cast<int>(cg.size());
    auto view = [](const Side& side, const Bits& set, int first) {
        Metaedge me = metaedge(side.s, set);
        Pattern p0, p1;
        std::vector<Letter> h0, h1;
        for (int v : me.verts) h0.push_back(me.letter(v, 0)), h1.push_back(me.letter(v, 1));
        std::sort(h0.begin(), h0.end());
        std::sort(h1.begin(), h1.end());
        p0.parts = {h0};
        p1.parts = {h1};
        return first == 0 ? local_view(side.s, side.mg->mult, me, 0, p0, p1) : local_view(side.s, side.mg->mult, me, 1, p1, p0);
    };
    std::vector<LocalView> vg;
    std::vector<std::array<LocalView, 2>> vh;
    for (int c : cg) vg.push_back(view(g, tg.nodes[c].set, 0));
    for (int c : ch) vh.push_back({view(h, th.nodes[c].set, 0), view(h, th.nodes[c].set, 1)});
    std::map<std::pair<int, int>, std::map<int, int>> loc;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int f = 0; f < 2; ++f)
                if (auto w = locally_isomorphic(vg[i], vh[j][f])) {
                    loc[{i, j}] = *w;
                    edges.emplace_back(i, j);
                    break;
                }
    auto m = perfect_matching(k, k, edges);
    if (!m) return no("serial: no perfect matching of locally isomorphic children");
    std::map<int, int> all;
    for (int i = 0; i < k; ++i) {
        const auto& w = loc[{i, (*m)[i]}];
        all.insert(w.begin(), w.end());
    }
    return {true, to_witness(all, g.s.n), "serial"};
}

IsoResult prime_case(const Side& g, const Side& h, const IsoOptions& opt) {
    Bits allg(g.s.n), allh(h.s.n);
    allg.set();
    allh.set();
    SlotOrder sg = slot_order(g.s, allg, opt.bound);
    SlotOrder sh = slot_order(h.s, allh, opt.bound);
    if (sg.pi[0].size() != sh.pi[0].size()) return no("prime: different numbers of slots");
    SlotSide ag = slot_side(g.s, g.mg->mult, sg, nullptr);
    SlotSide ah = slot_side(h.s, h.mg->mult, sh, nullptr);
    int L = static_cast<int>(sg.pi[0].size());
    auto decide = [&](int ma, int k) -> std::optional<PinnedWitness> {
        for (int mb = 0; mb < 2; ++mb)
            for (int l = 0; l < L; ++l)
                if (auto w = pinned_slot_iso(ag, ma, k, ah, mb, l)) return w;
        return std::nullopt;
    };
    auto w = decide(0, 0);
    if (opt.paranoid)
        for (int ma = 0; ma < 2; ++ma)
            for (int k = 0; k < L; ++k)
                if (decide(ma, k).has_value() != w.has_value()) fail(Errc::Internal, "prime: verdict depends on the pinned slot");
    if (!w) return no("prime: no pinned slot isomorphism");
    return {true, to_witness(w->vertex, g.s.n), "prime"};
}

/// Rooted T_NM isomorphism with memoisation keyed by (A, parent of A, B, parent of B).
struct TreeIso {
    const Side& g;
    const Side& h;
    const TNMTree& tg;
    const TNMTree& th;
    std::vector<SlotSide> sg, sh;
    std::map<std::tuple<int, int, int, int>, std::optional<PinnedWitness>> modules;
    std::map<std::tuple<int, int, int, int>, std::optional<std::vector<std::pair<int, int>>>> nodes;

    TreeIso(const Side& g_, const Side& h_, const TNMTree& tg_, const TNMTree& th_) : g(g_), h(h_), tg(tg_), th(th_) {
        for (const auto& m : tg.modules) sg.push_back(slot_side(g.s, g.mg->mult, m.so, m.pat));
        for (const auto& m : th.modules) sh.push_back(slot_side(h.s, h.mg->mult, m.so, m.pat));
    }

    static int slot_of_node(const TModule& mod, int m, int nd) {
        const auto& pi = mod.so.pi[m];
        for (size_t k = 0; k < pi.size(); ++k) {
            const auto& p = mod.pat[m].of(pi[k]);
            if (mod.pat[m].gap[k] == nd || std::find(p.nodes.begin(), p.nodes.end(), nd) != p.nodes.end()) return static_cast<int>(k);
        }
        fail(Errc::Internal, "node missing from the patterns of its module");
    }

    bool module_iso(int a, int pa, int b, int pb) {
        auto key = std::make_tuple(a, pa, b, pb);
        if (auto it = modules.find(key); it != modules.end()) return it->second.has_value();
        modules[key] = std::nullopt;
        const TModule& ma = tg.modules[a];
        const TModule& mb = th.modules[b];
        if (ma.set.count() != mb.set.count() || ma.nodes.size() != mb.nodes.size() || ma.so.pi[0].size() != mb.so.pi[0].size())
            return false;
        int anchor_a = pa >= 0 ? pa : ma.nodes.front();
        int anchor_b = pb >= 0 ? pb : mb.nodes.front();
        int k = slot_of_node(ma, 0, anchor_a);
        for (int m = 0; m < 2; ++m) {
            int l = slot_of_node(mb, m, anchor_b);
            auto w = pinned_slot_iso(sg[a], 0, k, sh[b], m, l);
            if (!w || w->node.at(anchor_a) != anchor_b) continue;
            bool all = true;
            for (int nd : ma.nodes)
                if (nd != pa && !node_iso(nd, a, w->node.at(nd), b)) {
                    all = false;
                    break;
                }
            if (all) {
                modules[key] = std::move(*w);
                return true;
            }
        }
        return false;
    }

    bool node_iso(int n, int pa, int m, int pb) {
        auto key = std::make_tuple(n, pa, m, pb);
        if (auto it = nodes.find(key); it != nodes.end()) return it->second.has_value();
        nodes[key] = std::nullopt;
        std::vector<int> ca, cb;
        for (int x : tg.nodes[n].modules)
            if (x != pa) ca.push_back(x);
        for (int y : th.nodes[m].modules)
            if (y != pb) cb.push_back(y);
        if (ca.size() != cb.size()) return false;
        std::vector<std::pair<int, int>> edges;
        for (size_t i = 0; i < ca.size(); ++i)
            for (size_t j = 0; j < cb.size(); ++j)
                if (module_iso(ca[i], n, cb[j], m)) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
        int k = static_cast<int>(ca.size());
        auto match = perfect_matching(k, k, edges);
        if (!match) return false;
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < k; ++i) pairs.emplace_back(ca[i], cb[(*match)[i]]);
        nodes[key] = pairs;
        return true;
    }

    void assemble_module(int a, int pa, int b, int pb, std::vector<int>& alpha) {
        const auto& w = *modules.at({a, pa, b, pb});
        for (auto [u, v] : w.vertex) alpha[u] = v;
        for (int nd : tg.modules[a].nodes)
            if (nd != pa) assemble_node(nd, a, w.node.at(nd), b, alpha);
    }

    void assemble_node(int n, int pa, int m, int pb, std::vector<int>& alpha) {
        for (auto [x, y] : *nodes.at({n, pa, m, pb})) assemble_module(x, n, y, m, alpha);
    }

    std::optional<std::vector<int>> rooted_at(int root) {
        for (size_t r = 0; r < th.modules.size(); ++r) {
            if (th.modules[r].nodes.size() != 1) continue;
            if (module_iso(root, -1, static_cast<int>(r), -1)) {
                std::vector<int> alpha(g.s.n, -1);
                assemble_module(root, -1, static_cast<int>(r), -1, alpha);
                return alpha;
            }
        }
        return std::nullopt;
    }
};

IsoResult parallel_case(const Side& g, const Side& h, const IsoOptions& opt) {
    TNMTree tg = build_tnm(g.s, true, opt.bound);
    TNMTree th = build_tnm(h.s, true, opt.bound);
    if (tg.modules.size() != th.modules.size() || tg.nodes.size() != th.nodes.size()) return no("parallel: trees of different sizes");
    TreeIso iso(g, h, tg, th);
    std::vector<int> leaves;
    for (size_t r = 0; r < tg.modules.size(); ++r)
        if (tg.modules[r].nodes.size() == 1) leaves.push_back(static_cast<int>(r));
    auto w = iso.rooted_at(leaves.front());
    if (opt.paranoid)
        for (int r : leaves)
            if (iso.rooted_at(r).has_value() != w.has_value()) fail(Errc::Internal, "parallel: verdict depends on the root of T_G");
    if (!w) return no("parallel: no rooted tree isomorphism");
    return {true, *w, "parallel"};
}

}  // namespace

bool preserves_sides(const MultiGraph& g, const MultiGraph& h, const std::vector<int>& alpha) {
    int n = g.base.n;
    if (h.base.n != n || static_cast<int>(alpha.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int v : alpha) {
        if (v < 0 || v >= n || hit[v]) return false;
        hit[v] = 1;
    }
    if (n == 0) return true;
    Structure sg = build_matrix(g), sh = build_matrix(h);
    for (int u = 0; u < n; ++u) {
        if (g.mult[u] != h.mult[alpha[u]]) return false;
        for (int v = 0; v < n; ++v) {
            if (sg.sides.left[v][u] != sh.sides.left[alpha[v]][alpha[u]]) return false;
            if (sg.sides.right[v][u] != sh.sides.right[alpha[v]][alpha[u]]) return false;
        }
    }
    return true;
}

bool is_graph_isomorphism(const Graph& g, const Graph& h, const std::vector<int>& alpha) {
    int n = g.n;
    if (h.n != n || static_cast<int>(alpha.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int v : alpha) {
        if (v < 0 || v >= n || hit[v]) return false;
        hit[v] = 1;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.has_edge(u, v) != h.has_edge(alpha[u], alpha[v])) return false;
    return true;
}

IsoResult isomorphic(const MultiGraph& g, const MultiGraph& h, const IsoOptions& opt) {
    int n = g.base.n;
    if (n != h.base.n) return no("different numbers of vertices");
    {
        auto mg = g.mult, mh = h.mult;
        std::sort(mg.begin(), mg.end());
        std::sort(mh.begin(), mh.end());
        if (mg != mh) return no("different multiplicities");
    }
    if (n == 0) return {true, {}, "empty"};
    if (n == 1) return {g.mult[0] == h.mult[0], {0}, "single vertex"};
    if (g.base.edge_count() != h.base.edge_count()) return no("different numbers of edges");
    Side sg{&g, build_matrix(g)}, sh{&h, build_matrix(h)};
    Bits allg(n), allh(n);
    allg.set();
    allh.set();
    MDTree tg = md_tree(sg.s.ov, allg);
    MDTree th = md_tree(sh.s.ov, allh);
    if (tg.root().kind != th.root().kind) return no("overlap graphs decompose differently at the root");
    IsoResult r;
    switch (tg.root().kind) {
    case ModKind::Serial: r = serial_case(sg, sh, tg, th); break;
    case ModKind::Prime: r = prime_case(sg, sh, opt); break;
    case ModKind::Parallel: r = parallel_case(sg, sh, opt); break;
    case ModKind::Leaf: fail(Errc::Internal, "leaf root with more than one vertex");
    }
    if (r.isomorphic && !preserves_sides(g, h, r.witness)) fail(Errc::Internal, "witness does not preserve the side sets");
    return r;
}

IsoResult isomorphic(const Graph& g, const Graph& h, const IsoOptions& opt) {
    if (g.n != h.n) return no("different numbers of vertices");
    auto sg = strip_universal(g), sh = strip_universal(h);
    if (sg.removed != sh.removed) return no("different numbers of universal vertices");
    auto [qg, pg] = twin_quotient(sg.graph);
    auto [qh, ph] = twin_quotient(sh.graph);
    IsoResult r = isomorphic(qg, qh, opt);
    if (!r.isomorphic) return r;
    std::vector<int> alpha(g.n, -1);
    for (size_t c = 0; c < pg.classes.size(); ++c) {
        const auto& a = pg.classes[c];
        const auto& b = ph.classes[r.witness[c]];
        for (size_t i = 0; i < a.size(); ++i) alpha[sg.kept[a[i]]] = sh.kept[b[i]];
    }
    std::vector<char> kept_g(g.n, 0), kept_h(h.n, 0);
    for (int v : sg.kept) kept_g[v] = 1;
    for (int v : sh.kept) kept_h[v] = 1;
    std::vector<int> ug, uh;
    for (int v = 0; v < g.n; ++v) {
        if (!kept_g[v]) ug.push_back(v);
        if (!kept_h[v]) uh.push_back(v);
    }
    for (size_t i = 0; i < ug.size(); ++i) alpha[ug[i]] = uh[i];
    if (!is_graph_isomorphism(g, h, alpha)) fail(Errc::Internal, "lifted witness is not a graph isomorphism");
    r.witness = alpha;
    return r;
}

}  // namespace circa
