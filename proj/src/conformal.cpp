#include "circa/conformal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace circa {

namespace {

/// Toy model u,v inside one metaedge: first^{o} second^{o} X second^{1-o} first^{1-o} Y.
/// Returns whether its left/right relations agree with the structure.
bool toy_matches(const Structure& s, int u, int ou, int v, int ov, bool u_first) {
    auto pos = [&](int w, int e) {
        bool first = (w == u) == u_first;
        int o = w == u ? ou : ov;
        if (first) return e == o ? 0 : 4;
        return e == o ? 1 : 3;
    };
    bool v_left_of_u = in_stretch(pos(u, 0), pos(u, 1), pos(v, 0));
    bool u_left_of_v = in_stretch(pos(v, 0), pos(v, 1), pos(u, 0));
    return v_left_of_u == s.left_of(u, v) && u_left_of_v == s.left_of(v, u);
}

}  // namespace

bool metaedge_precedes(const Structure& s, int u, int ou, int v, int ov) {
    bool a = toy_matches(s, u, ou, v, ov, true);
    bool b = toy_matches(s, u, ou, v, ov, false);
    if (a == b) fail(Errc::NotCircularArc, "metaedge: pair " + std::to_string(u) + "," + std::to_string(v) + " has no consistent order");
    return a;
}

Metaedge metaedge_with_orientation(const Structure& s, const std::vector<int>& verts, const std::vector<int>& orient, int rep) {
    Metaedge me;
    me.verts = verts;
    me.orient = orient;
    me.rep = rep;
    me.lt = Orientation(verts);
    int k = static_cast<int>(verts.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (s.crosses(verts[i], verts[j])) continue;
            if (metaedge_precedes(s, verts[i], orient[i], verts[j], orient[j]))
                me.lt.set(i, j);
            else
                me.lt.set(j, i);
        }
    if (!is_transitive(me.lt)) fail(Errc::NotCircularArc, "metaedge: order of non-crossing pairs is not transitive");
    return me;
}

Metaedge metaedge(const Structure& s, const Bits& m, int r) {
    std::vector<int> verts = to_list(m);
    if (verts.empty()) fail(Errc::Malformed, "metaedge of an empty set");
    if (r < 0) r = verts.front();
    bool proper = false;
    for (int x = 0; x < s.n && !proper; ++x)
        if (!m[x] && m.is_subset_of(s.ov.adj[x])) proper = true;
    if (!proper) fail(Errc::NotProper, "metaedge needs a proper module");
    int k = static_cast<int>(verts.size());
    auto idx = [&](int v) { return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()); };
    std::vector<int> orient(k, -1);
    orient[idx(r)] = 0;
    std::vector<int> queue{r};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (int v : verts) {
            if (v == u || s.crosses(u, v) || orient[idx(v)] != -1) continue;
            int found = -1;
            for (int ov = 0; ov < 2; ++ov)
                for (int first = 0; first < 2; ++first)
                    if (toy_matches(s, u, orient[idx(u)], v, ov, first)) {
                        if (found != -1 && found != ov) fail(Errc::NotCircularArc, "metaedge: ambiguous orientation");
                        found = ov;
                    }
            if (found == -1) fail(Errc::NotCircularArc, "metaedge: no orientation fits the side sets");
            orient[idx(v)] = found;
            queue.push_back(v);
        }
    }
    if (static_cast<int>(queue.size()) != k) fail(Errc::Internal, "metaedge: (M, ||) is disconnected");
    return metaedge_with_orientation(s, verts, orient, r);
}

std::optional<Metaedge> metaedge_from_model(const Word& phi, const Structure& s, const Bits& m, int r, const Bits& context) {
    Word w = restrict_vertices(phi, context | m);
    auto segs = restrict_segments(w, [&](const Letter& l) { return m[l.v]; });
    if (segs.size() != 2) return std::nullopt;
    std::vector<int> verts = to_list(m);
    if (r < 0) r = verts.front();
    const Word& b0 = std::find(segs[0].begin(), segs[0].end(), Letter{r, 0}) != segs[0].end() ? segs[0] : segs[1];
    if (b0.size() != verts.size()) return std::nullopt;
    std::vector<int> orient(verts.size(), -1);
    Orientation lt(verts);
    for (const Letter& l : b0) {
        int i = lt.index(l.v);
        if (orient[i] != -1) return std::nullopt;
        orient[i] = l.e;
    }
    for (size_t a = 0; a < b0.size(); ++a)
        for (size_t b = a + 1; b < b0.size(); ++b)
            if (!s.crosses(b0[a].v, b0[b].v)) lt.set(lt.index(b0[a].v), lt.index(b0[b].v));
    Metaedge me;
    me.verts = verts;
    me.orient = orient;
    me.lt = lt;
    me.rep = r;
    return me;
}

bool is_admissible(const Word& tau0, const Word& tau1, const Structure& s, const Metaedge& me) {
    int k = static_cast<int>(me.verts.size());
    if (static_cast<int>(tau0.size()) != k || static_cast<int>(tau1.size()) != k) return false;
    std::vector<int> p0(k, -1), p1(k, -1);
    for (int t = 0; t < 2; ++t) {
        const Word& tau = t == 0 ? tau0 : tau1;
        auto& p = t == 0 ? p0 : p1;
        for (int i = 0; i < k; ++i) {
            int x = me.index(tau[i].v);
            if (x < 0 || p[x] != -1 || tau[i].e > 1 || me.half(tau[i]) != t) return false;
            p[x] = i;
        }
    }
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            bool same = (p0[a] < p0[b]) == (p1[a] < p1[b]);
            if (same != s.crosses(me.verts[a], me.verts[b])) return false;
            if (!same && (p0[a] < p0[b]) != me.lt.before(a, b)) return false;
        }
    return true;
}

Orientation transitive_orientation(const Graph& g, const Bits& m) {
    std::vector<int> verts = to_list(m);
    Orientation o(verts);
    MDTree t = md_tree(g, m);
    for (size_t node = 0; node < t.nodes.size(); ++node) {
        const MDNode& nd = t.nodes[node];
        if (nd.kind != ModKind::Serial && nd.kind != ModKind::Prime) continue;
        int c = static_cast<int>(nd.children.size());
        std::vector<std::vector<char>> before(c, std::vector<char>(c, 0));
        if (nd.kind == ModKind::Serial) {
            for (int a = 0; a < c; ++a)
                for (int b = a + 1; b < c; ++b) before[a][b] = 1;
        } else {
            auto q = prime_orientations(g, t, static_cast<int>(node)).first;
            for (int a = 0; a < c; ++a)
                for (int b = 0; b < c; ++b) before[a][b] = q.before(a, b);
        }
        for (int a = 0; a < c; ++a)
            for (int b = 0; b < c; ++b) {
                if (!before[a][b]) continue;
                for (int u : to_list(t.nodes[nd.children[a]].set))
                    for (int v : to_list(t.nodes[nd.children[b]].set))
                        if (g.has_edge(u, v)) o.set(o.index(u), o.index(v));
            }
    }
    return o;
}

std::pair<Word, Word> canonical_admissible(const Structure& s, const Metaedge& me) {
    Orientation prec = transitive_orientation(s.ov, to_bits(s.n, me.verts));
    PermutationModel pm = perm_model_from_orients(me.lt, prec);
    Word t0, t1;
    for (int v : pm.tau0) t0.push_back(me.letter(v, 0));
    for (int v : pm.tau1) t1.push_back(me.letter(v, 1));
    return {t0, t1};
}

// ---------------------------------------------------------------------------------------------
// Backtracking search for conformal models.

namespace {

struct Search {
    const SearchSpec& spec;
    const Structure& s;
    int n;
    std::vector<Bits> in_left_of;  // in_left_of[v] = {a : v in left(a)}
    Word word;
    Bits placed;
    std::vector<Word> found;
    long nodes = 0;

    explicit Search(const SearchSpec& sp) : spec(sp), s(*sp.s), n(sp.s->n), in_left_of(n, Bits(n)), placed(n) {
        for (int a : spec.chords)
            for (int v : spec.chords)
                if (a != v && s.left_of(a, v)) in_left_of[v].set(a);
    }

    std::vector<Bits> signatures() const {
        int L = static_cast<int>(word.size());
        std::vector<Bits> sig(std::max(L, 1), Bits(n));
        auto pos = positions(word, n);
        for (int a : to_list(placed)) {
            int p0 = pos[a][0], p1 = pos[a][1];
            // gap g sits just before index g; it is inside a's stretch iff p0 < g <= p1 (circularly)
            for (int g = (p0 + 1) % L; g != (p1 + 1) % L; g = (g + 1) % L) sig[g].set(a);
        }
        return sig;
    }

    struct Cand {
        int g0, g1;
        bool wrap;  // g0 == g1 with v^1 before v^0, i.e. the stretch covers everything
    };

    std::vector<Cand> candidates(int v, const std::vector<Bits>& sig) const {
        int L = static_cast<int>(word.size());
        std::vector<Cand> out;
        if (L == 0) {
            out.push_back({0, 0, false});
            return out;
        }
        Bits nc = placed - s.ov.adj[v];
        Bits x = placed & s.ov.adj[v];
        Bits req = in_left_of[v] & nc;
        Bits want_inside = s.sides.left[v] & nc;
        std::vector<int> ok;
        for (int g = 0; g < L; ++g)
            if ((sig[g] & nc) == req) ok.push_back(g);
        for (int g0 : ok)
            for (int g1 : ok) {
                if (((sig[g0] ^ sig[g1]) & x) != x) continue;
                for (int wrap = 0; wrap < (g0 == g1 ? 2 : 1); ++wrap) {
                    if (g0 == g1 && x.any()) continue;
                    Bits inside(n);
                    if (g0 == g1) {
                        if (wrap)
                            for (const Letter& l : word) inside.set(l.v);
                    } else {
                        for (int i = g0; i != g1; i = (i + 1) % L) inside.set(word[i].v);
                    }
                    if ((inside & nc) != want_inside) continue;
                    out.push_back({g0, g1, wrap == 1});
                }
            }
        return out;
    }

    bool points_ok(const std::vector<Bits>& sig) const {
        if (word.empty()) return true;
        int L = static_cast<int>(word.size());
        for (size_t i = 0; i < spec.points.size(); ++i) {
            int anchor = spec.point_anchors.empty() ? -1 : spec.point_anchors[i];
            Bits care = placed;
            std::vector<int> gaps;
            if (anchor >= 0) {
                care.reset(anchor);
                if (placed[anchor])
                    for (int p = 0; p < L; ++p)
                        if (word[p].v == anchor) gaps.push_back(p), gaps.push_back((p + 1) % L);
            }
            if (gaps.empty())
                for (int g = 0; g < static_cast<int>(sig.size()); ++g) gaps.push_back(g);
            Bits want = spec.points[i] & care;
            bool any = false;
            for (int g : gaps)
                if ((sig[g] & care) == want) {
                    any = true;
                    break;
                }
            if (!any) return false;
        }
        return true;
    }

    Word insert(int v, const Cand& c) const {
        Word out;
        for (int i = 0; i < static_cast<int>(word.size()); ++i) {
            if (i == c.g0 && c.g0 == c.g1) {
                out.push_back({v, c.wrap ? 1 : 0});
                out.push_back({v, c.wrap ? 0 : 1});
            } else if (i == c.g0) {
                out.push_back({v, 0});
            } else if (i == c.g1) {
                out.push_back({v, 1});
            }
            out.push_back(word[i]);
        }
        if (word.empty()) out = {{v, 0}, {v, 1}};
        return out;
    }

    bool rec() {
        ++nodes;
        auto sig = signatures();
        if (!points_ok(sig)) return false;
        if (static_cast<int>(placed.count()) == static_cast<int>(spec.chords.size())) {
            found.push_back(canonical(word));
            return !spec.all;
        }
        // Pick the unplaced chord with fewest placements, preferring chords that cross placed ones.
        int best = -1;
        std::vector<Cand> best_c;
        bool frontier = false;
        for (int v : spec.chords)
            if (!placed[v] && s.ov.adj[v].intersects(placed)) frontier = true;
        for (int v : spec.chords) {
            if (placed[v]) continue;
            if (frontier && !s.ov.adj[v].intersects(placed)) continue;
            auto c = candidates(v, sig);
            if (best == -1 || c.size() < best_c.size()) {
                best = v;
                best_c = std::move(c);
                if (best_c.empty()) return false;
            }
            if (!frontier) break;
        }
        for (const Cand& c : best_c) {
            Word saved = word;
            word = insert(best, c);
            placed.set(best);
            bool stop = rec();
            placed.reset(best);
            word = std::move(saved);
            if (stop) return true;
        }
        return false;
    }
};

}  // namespace

std::vector<Word> conformal_search(const SearchSpec& spec) {
    counters().search_calls++;
    Search search(spec);
    if (spec.chords.empty()) return {Word{}};
    search.rec();
    counters().search_nodes += search.nodes;
    int k = static_cast<int>(spec.chords.size());
    auto& mx = counters().max_search_core;
    for (int cur = mx.load(); k > cur && !mx.compare_exchange_weak(cur, k);) {}
    if (spec.all) {
        counters().search_enumerations++;
        auto& me = counters().max_enumerated_core;
        for (int cur = me.load(); k > cur && !me.compare_exchange_weak(cur, k);) {}
    }
    auto out = search.found;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::pair<Word, Word> prime_conformal_pair(const Structure& s, const Bits& u, int bound) {
    SearchSpec spec;
    spec.s = &s;
    spec.chords = to_list(u);
    spec.all = static_cast<int>(spec.chords.size()) <= bound;
    auto res = conformal_search(spec);
    if (res.empty()) fail(Errc::NoConformal, "no conformal model exists for the core");
    Word a = res.front();
    Word b = canonical(reflect(a));
    if (spec.all && (res.size() != 2 || !std::binary_search(res.begin(), res.end(), b)))
        fail(Errc::Internal, "core does not have exactly two mutually reflected conformal models");
    if (b < a) std::swap(a, b);
    return {a, b};
}

// ---------------------------------------------------------------------------------------------
// Serial modules.

std::vector<Word> serial_words(const std::vector<SerialChild>& children) {
    int k = static_cast<int>(children.size());
    std::set<Word> out;
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    do {
        for (int mask = 0; mask < (1 << k); ++mask) {
            Word first, second;
            for (int i : order) {
                bool sw = (mask >> i) & 1;
                const Word& mu = sw ? children[i].model.second : children[i].model.first;
                const Word& mu2 = sw ? children[i].model.first : children[i].model.second;
                first.insert(first.end(), mu.begin(), mu.end());
                second.insert(second.end(), mu2.begin(), mu2.end());
            }
            first.insert(first.end(), second.begin(), second.end());
            out.insert(canonical(first));
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return {out.begin(), out.end()};
}

std::vector<Metaedge> serial_children(const Structure& s, const MDTree& t, int node) {
    std::vector<Metaedge> out;
    for (int c : t.nodes[node].children) out.push_back(metaedge(s, t.nodes[c].set));
    return out;
}

namespace {

/// Circular runs of a word by a key; the first run starts at a run boundary.
std::vector<Word> runs_by(const Word& w, const std::function<int(const Letter&)>& key) {
    std::vector<Word> out;
    size_t n = w.size();
    if (n == 0) return out;
    size_t start = 0;
    while (start < n && key(w[start]) == key(w[(start + n - 1) % n])) ++start;
    if (start == n) return {w};
    for (size_t i = 0; i < n; ++i) {
        const Letter& l = w[(start + i) % n];
        if (out.empty() || key(out.back().back()) != key(l)) out.emplace_back();
        out.back().push_back(l);
    }
    return out;
}

}  // namespace

bool is_serial_model(const Word& phi, const Structure& s, const std::vector<Metaedge>& children) {
    int k = static_cast<int>(children.size());
    std::vector<int> child_of(s.n, -1);
    for (int i = 0; i < k; ++i)
        for (int v : children[i].verts) child_of[v] = i;
    for (const Letter& l : phi)
        if (l.v < 0 || l.v >= s.n || child_of[l.v] < 0) return false;
    auto runs = runs_by(phi, [&](const Letter& l) { return child_of[l.v]; });
    if (static_cast<int>(runs.size()) != 2 * k) return false;
    std::vector<char> seen(k, 0);
    for (int i = 0; i < k; ++i) {
        int c = child_of[runs[i].front().v];
        if (seen[c] || child_of[runs[i + k].front().v] != c) return false;
        seen[c] = 1;
        const Metaedge& me = children[c];
        if (!is_admissible(runs[i], runs[i + k], s, me) && !is_admissible(runs[i + k], runs[i], s, me)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------------------------
// Probes.

bool is_probe(const Graph& g, const Bits& u, const Probe& p) {
    int n = g.n;
    if (p.x < 0 || p.y < 0 || p.x == p.y || p.X.none() || p.alphaX.none()) return false;
    if (p.X.intersects(p.alphaX) || p.X[p.x] || p.X[p.y] || p.alphaX[p.x] || p.alphaX[p.y]) return false;
    Bits xa = p.X | p.alphaX;
    Bits P = xa;
    P.set(p.x);
    P.set(p.y);
    if (!P.is_subset_of(u) || P == u) return false;
    if (!g.has_edge(p.x, p.y) || g.adj[p.y].intersects(xa)) return false;
    if (!p.X.is_subset_of(g.adj[p.x]) || g.adj[p.x].intersects(p.alphaX)) return false;
    if (components(g, P).size() != 1) return false;
    for (int z : to_list(u - P)) {
        bool none = !g.adj[z].intersects(xa);
        bool x_only = p.X.is_subset_of(g.adj[z]) && !g.adj[z].intersects(p.alphaX);
        bool all = xa.is_subset_of(g.adj[z]);
        if (!none && !x_only && !all) return false;
    }
    (void)n;
    return true;
}

std::optional<Probe> find_probe(const Graph& g, const Bits& u, const Bits& X, const Bits& alphaX) {
    Bits rest = u - X - alphaX;
    for (int x : to_list(rest))
        for (int y : to_list(rest)) {
            Probe p{y, x, X, alphaX};
            if (is_probe(g, u, p)) return p;
        }
    return std::nullopt;
}

// ---------------------------------------------------------------------------------------------
// Improper prime modules: consistent decomposition and slots.

std::vector<std::vector<int>> consistent_decomposition(const Structure& s, const Bits& m) {
    MDTree t = md_tree(s.ov, m);
    if (t.root().kind != ModKind::Prime) fail(Errc::Internal, "consistent_decomposition needs an improper prime module");
    Bits U(s.n);
    for (int c : t.root().children) U.set(t.nodes[c].least());
    std::vector<std::vector<int>> classes;
    for (int c : t.root().children) {
        const MDNode& child = t.nodes[c];
        std::vector<int> members = to_list(child.set);
        if (child.kind == ModKind::Leaf || child.kind == ModKind::Prime) {
            classes.push_back(members);
            continue;
        }
        Bits outside = U - child.set;
        std::map<std::vector<int>, std::vector<int>> groups;
        for (int v : members) {
            std::vector<int> key;
            if (child.kind == ModKind::Parallel) {
                for (int u : to_list(outside))
                    if (!s.ov.adj[u].intersects(child.set)) key.push_back(s.left_of(u, v) ? u : -u - 1);
            } else {
                auto l = to_list(s.sides.left[v] & outside);
                auto r = to_list(s.sides.right[v] & outside);
                if (r < l) std::swap(l, r);
                key = l;
                key.push_back(-1);
                key.insert(key.end(), r.begin(), r.end());
            }
            groups[key].push_back(v);
        }
        for (auto& [key, vs] : groups) classes.push_back(vs);
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

SlotOrder slot_order(const Structure& s, const Bits& m, int bound) {
    SlotOrder so;
    auto classes = consistent_decomposition(s, m);
    int k = static_cast<int>(classes.size());
    so.class_of.assign(s.n, -1);
    Bits S(s.n);
    for (int i = 0; i < k; ++i) {
        so.skeleton.push_back(classes[i].front());
        S.set(classes[i].front());
        for (int v : classes[i]) so.class_of[v] = i;
    }
    for (int i = 0; i < k; ++i) {
        Bits ki = to_bits(s.n, classes[i]);
        int si = so.skeleton[i];
        int witness = -1;
        for (int sj : so.skeleton)
            if (!s.ov.adj[sj].intersects(ki) && !ki[sj]) {
                witness = sj;
                break;
            }
        if (witness < 0) fail(Errc::Internal, "slot_order: no skeleton vertex independent of a class");
        std::vector<int> orient;
        for (int v : classes[i]) orient.push_back(s.left_of(v, witness) == s.left_of(si, witness) ? 0 : 1);
        so.classes.push_back(metaedge_with_orientation(s, classes[i], orient, si));
    }
    auto [phi0, phi1] = prime_conformal_pair(s, S, bound);
    for (int mm = 0; mm < 2; ++mm)
        for (const Letter& l : mm == 0 ? phi0 : phi1) so.pi[mm].push_back(so.slot_of(l));
    return so;
}

std::optional<std::vector<std::pair<int, int>>> slot_sequence(const Word& w, const SlotOrder& so) {
    for (const Letter& l : w)
        if (l.v < 0 || l.v >= static_cast<int>(so.class_of.size()) || so.class_of[l.v] < 0 || l.e > 1) return std::nullopt;
    auto key = [&](const Letter& l) {
        auto [c, j] = so.slot_of(l);
        return 2 * c + j;
    };
    auto runs = runs_by(w, key);
    std::vector<std::pair<int, int>> seq;
    std::set<int> seen;
    for (const Word& r : runs) {
        if (!seen.insert(key(r.front())).second) return std::nullopt;
        seq.push_back(so.slot_of(r.front()));
    }
    return seq;
}

bool same_circular(const std::vector<std::pair<int, int>>& a, const std::vector<std::pair<int, int>>& b) {
    if (a.size() != b.size()) return false;
    size_t n = a.size();
    if (n == 0) return true;
    for (size_t r = 0; r < n; ++r) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = a[(i + r) % n] == b[i];
        if (ok) return true;
    }
    return false;
}

bool is_admissible_for_slot_order(const Word& w, const Structure& s, const SlotOrder& so, int m) {
    auto seq = slot_sequence(w, so);
    if (!seq || !same_circular(*seq, so.pi[m])) return false;
    for (size_t i = 0; i < so.classes.size(); ++i) {
        Word halves[2];
        for (int j = 0; j < 2; ++j) {
            auto segs = restrict_segments(w, [&](const Letter& l) { return so.slot_of(l) == std::make_pair(static_cast<int>(i), j); });
            if (segs.size() != 1) return false;
            halves[j] = segs.front();
        }
        if (!is_admissible(halves[0], halves[1], s, so.classes[i])) return false;
    }
    return true;
}

Word slot_model(const Structure& s, const SlotOrder& so, int m) {
    std::vector<std::pair<Word, Word>> adm;
    for (const Metaedge& me : so.classes) adm.push_back(canonical_admissible(s, me));
    Word out;
    for (auto [c, j] : so.pi[m]) {
        const Word& part = j == 0 ? adm[c].first : adm[c].second;
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace circa
