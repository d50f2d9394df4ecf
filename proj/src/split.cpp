#include "circa/split.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace circa {

namespace {

Bits nbhd_union(const Graph& g, const Bits& s) {
    Bits out(g.n);
    for (int v : to_list(s)) out |= g.adj[v];
    return out;
}

bool complete_to(const Graph& g, int v, const Bits& s) { return s.is_subset_of(g.adj[v]); }
bool anticomplete_to(const Graph& g, int v, const Bits& s) { return !g.adj[v].intersects(s); }

}  // namespace

bool is_split(const Graph& g, const Split& s) {
    Bits all(g.n);
    all.set();
    if ((s.A | s.alphaA | s.B | s.alphaB) != all) return false;
    if (s.A.count() + s.alphaA.count() + s.B.count() + s.alphaB.count() != static_cast<size_t>(g.n)) return false;
    if (s.A.none() || s.B.none()) return false;
    for (int v : to_list(s.A))
        if (!complete_to(g, v, s.B)) return false;
    for (int v : to_list(s.alphaA))
        if (!anticomplete_to(g, v, s.B | s.alphaB)) return false;
    for (int v : to_list(s.alphaB))
        if (!anticomplete_to(g, v, s.A | s.alphaA)) return false;
    return true;
}

bool is_maximal_split(const Graph& g, const Split& s) {
    auto extendable = [&](const Bits& alpha, const Bits& side) {
        for (const auto& c : components(g, alpha)) {
            bool ok = true;
            for (int u : c) ok = ok && (complete_to(g, u, side) || anticomplete_to(g, u, side));
            if (ok) return true;
        }
        return false;
    };
    return !extendable(s.alphaA, s.A) && !extendable(s.alphaB, s.B);
}

std::optional<Split> split_from_sides(const Graph& g, const Bits& side1) {
    Bits side2 = ~side1;
    if (side1.none() || side2.none()) return std::nullopt;
    Split s;
    s.A = side1 & nbhd_union(g, side2);
    s.B = side2 & nbhd_union(g, side1);
    s.alphaA = side1 - s.A;
    s.alphaB = side2 - s.B;
    if (!is_split(g, s)) return std::nullopt;
    return s;
}

std::optional<Split> find_split(const Graph& g) {
    int n = g.n;
    if (n < 4) return std::nullopt;
    // With u in A and w in B fixed, v in side 1 and v' in side 2 are compatible iff
    // adj(v,v') == adj(v,w) && adj(v',u). Incompatible placements become implications
    // "z1 on side 1 => z2 on side 1"; the least closed side containing u and a seed works.
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w) {
            if (!g.has_edge(u, w)) continue;
            std::vector<Bits> imp(n, Bits(n));
            for (int z1 = 0; z1 < n; ++z1)
                for (int z2 = 0; z2 < n; ++z2) {
                    if (z1 == z2 || z1 == u || z1 == w || z2 == u || z2 == w) continue;
                    if (g.has_edge(z1, z2) != (g.has_edge(z1, w) && g.has_edge(z2, u))) imp[z1].set(z2);
                }
            for (int x = 0; x < n; ++x) {
                if (x == u || x == w) continue;
                Bits side(n);
                std::vector<int> stack{u, x};
                while (!stack.empty()) {
                    int z = stack.back();
                    stack.pop_back();
                    if (side[z]) continue;
                    side.set(z);
                    for (int y : to_list(imp[z]))
                        if (!side[y]) stack.push_back(y);
                }
                if (side[w] || static_cast<int>(side.count()) > n - 2) continue;
                if (auto s = split_from_sides(g, side)) return s;
                fail(Errc::Internal, "find_split: closure is not a split");
            }
        }
    return std::nullopt;
}

std::optional<int> articulation(const Graph& g) {
    for (int a = 0; a < g.n; ++a) {
        Bits rest(g.n);
        rest.set();
        rest.reset(a);
        if (g.n > 2 && components(g, rest).size() > 1) return a;
    }
    return std::nullopt;
}

std::optional<Split> maximal_split(const Graph& g) {
    if (g.n == 0 || !is_connected(g)) fail(Errc::Disconnected, "maximal_split needs a connected graph");
    auto start = find_split(g);
    if (!start) {
        auto a = articulation(g);
        if (!a) return std::nullopt;
        Bits side(g.n);
        side.set(*a);
        return split_from_sides(g, side);
    }
    Split s = *start;
    while (true) {
        bool moved = false;
        auto grow = [&](Bits& side, Bits& alpha, Bits& other, Bits& other_alpha) {
            auto comps = components(g, alpha);
            std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
                return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
            });
            for (const auto& c : comps) {
                bool ok = true;
                for (int u : c) ok = ok && (complete_to(g, u, side) || anticomplete_to(g, u, side));
                if (!ok) continue;
                for (int u : c) {
                    alpha.reset(u);
                    (complete_to(g, u, side) ? other : other_alpha).set(u);
                }
                return true;
            }
            return false;
        };
        moved = grow(s.A, s.alphaA, s.B, s.alphaB) || grow(s.B, s.alphaB, s.A, s.alphaA);
        if (!moved) break;
        if (!is_split(g, s)) fail(Errc::Internal, "maximal_split: extension broke the split");
    }
    return s;
}

SplitComponents split_components(const Graph& g, const Split& s) {
    SplitComponents out;
    int n = g.n;
    if (s.trivial()) {
        out.trivial = true;
        bool a_side = (s.A | s.alphaA).count() == 1;
        out.a = static_cast<int>((a_side ? s.A : s.B).find_first());
        Bits rest(n);
        rest.set();
        rest.reset(out.a);
        for (const auto& d : components(g, rest)) {
            Bits db = to_bits(n, d);
            out.C.push_back(db & g.adj[out.a]);
            out.alpha.push_back(db - g.adj[out.a]);
        }
        if (out.C.size() < 2) fail(Errc::Internal, "split_components: trivial split without articulation");
        return out;
    }
    Bits c = s.A | s.B;
    Bits alpha = s.alphaA | s.alphaB;
    // Union-find over C for the diamond relation.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
    auto cl = to_list(c);
    for (int u : cl)
        for (int v : cl)
            if (u < v && !g.has_edge(u, v)) unite(u, v);
    auto acomps = components(g, alpha);
    for (const auto& comp : acomps) {
        Bits cb = to_bits(n, comp);
        Bits touch = nbhd_union(g, cb) & c;
        auto t = to_list(touch);
        for (size_t i = 1; i < t.size(); ++i) unite(t[0], t[i]);
    }
    // Paths through alpha may also connect two C vertices directly adjacent to each other: covered above.
    std::vector<int> roots;
    for (int u : cl)
        if (std::find(roots.begin(), roots.end(), find(u)) == roots.end()) roots.push_back(find(u));
    for (int r : roots) {
        Bits ci(n);
        for (int u : cl)
            if (find(u) == r) ci.set(u);
        Bits ai(n);
        for (const auto& comp : acomps) {
            Bits cb = to_bits(n, comp);
            if (nbhd_union(g, cb).intersects(ci)) ai |= cb;
        }
        out.C.push_back(ci);
        out.alpha.push_back(ai);
    }
    if (out.C.size() < 2) fail(Errc::Internal, "split_components: fewer than two classes");
    return out;
}

ChordWord compose(const std::vector<std::pair<ChordWord, ChordWord>>& parts, const std::vector<int>& order,
                  const std::vector<bool>& swaps, int articulation) {
    ChordWord first, second;
    for (int i : order) {
        const auto& [t, t2] = parts[i];
        const ChordWord& mu = swaps[i] ? t2 : t;
        first.insert(first.end(), mu.begin(), mu.end());
    }
    if (articulation < 0) {
        for (int i : order) {
            const auto& [t, t2] = parts[i];
            const ChordWord& mu = swaps[i] ? t : t2;
            second.insert(second.end(), mu.begin(), mu.end());
        }
        first.insert(first.end(), second.begin(), second.end());
        return first;
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const auto& [t, t2] = parts[*it];
        const ChordWord& mu = swaps[*it] ? t : t2;
        second.insert(second.end(), mu.begin(), mu.end());
    }
    ChordWord w{articulation};
    w.insert(w.end(), first.begin(), first.end());
    w.push_back(articulation);
    w.insert(w.end(), second.begin(), second.end());
    return w;
}

bool is_chord_model(const Graph& g, const ChordWord& w) {
    if (static_cast<int>(w.size()) != 2 * g.n) return false;
    std::vector<std::array<int, 2>> pos(g.n, {-1, -1});
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
        int v = w[i];
        if (v < 0 || v >= g.n) return false;
        if (pos[v][0] < 0)
            pos[v][0] = i;
        else if (pos[v][1] < 0)
            pos[v][1] = i;
        else
            return false;
    }
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (chords_cross(pos[u], pos[v]) != g.has_edge(u, v)) return false;
    return true;
}

namespace {

/// Base case: insert chords one at a time into a linear word (rotation fixed by the first chord).
std::vector<ChordWord> insertion_search(const Graph& g, bool all) {
    int n = g.n;
    std::vector<int> order;
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<int> queue{s};
        seen[s] = 1;
        for (size_t i = 0; i < queue.size(); ++i) {
            order.push_back(queue[i]);
            for (int u : to_list(g.adj[queue[i]]))
                if (!seen[u]) seen[u] = 1, queue.push_back(u);
        }
    }
    std::set<ChordWord> found;
    ChordWord cur;
    std::function<bool(int)> rec = [&](int i) {
        if (i == n) {
            found.insert(canonical_chord(cur));
            return !all;
        }
        int v = order[i];
        int len = static_cast<int>(cur.size());
        for (int p = 0; p <= len; ++p)
            for (int q = p; q <= len; ++q) {
                // v occupies positions p and q+1 after insertion; a placed vertex u crosses v iff
                // exactly one of its occurrences lies strictly between.
                bool ok = true;
                std::vector<int> inside(n, 0);
                for (int j = p; j < q; ++j) inside[cur[j]]++;
                for (int k = 0; k < i && ok; ++k) {
                    int u = order[k];
                    ok = (inside[u] == 1) == g.has_edge(u, v);
                }
                if (!ok) continue;
                ChordWord next(cur.begin(), cur.begin() + p);
                next.push_back(v);
                next.insert(next.end(), cur.begin() + p, cur.begin() + q);
                next.push_back(v);
                next.insert(next.end(), cur.begin() + q, cur.end());
                std::swap(cur, next);
                bool stop = rec(i + 1);
                std::swap(cur, next);
                if (stop) return true;
            }
        return false;
    };
    rec(0);
    return {found.begin(), found.end()};
}

/// Word with `marker` rotated first, returning the two halves between its occurrences.
std::pair<ChordWord, ChordWord> halves(const ChordWord& w, int marker) {
    size_t i = std::find(w.begin(), w.end(), marker) - w.begin();
    ChordWord r(w.begin() + i, w.end());
    r.insert(r.end(), w.begin(), w.begin() + i);
    size_t j = std::find(r.begin() + 1, r.end(), marker) - r.begin();
    return {ChordWord(r.begin() + 1, r.begin() + j), ChordWord(r.begin() + j + 1, r.end())};
}

std::vector<ChordWord> models_rec(const Graph& g, bool all) {
    if (g.n == 1) return {ChordWord{0, 0}};
    auto split = maximal_split(g);
    if (!split) {
        auto res = insertion_search(g, all);
        if (res.empty()) fail(Errc::NotCircle, "graph is not a circle graph");
        return res;
    }
    auto comps = split_components(g, *split);
    int k = static_cast<int>(comps.C.size());
    // Sub-models per component, as halves mapped back to g's ids.
    std::vector<std::vector<std::pair<ChordWord, ChordWord>>> sub(k);
    for (int i = 0; i < k; ++i) {
        std::vector<int> verts = to_list(comps.C[i] | comps.alpha[i]);
        int m = static_cast<int>(verts.size());
        Graph h = induced(g, verts);
        Graph gi(m + 1);
        for (int x = 0; x < m; ++x)
            for (int y = x + 1; y < m; ++y)
                if (h.has_edge(x, y)) gi.add_edge(x, y);
        // Marker: the contracted rest for non-trivial splits, the articulation itself otherwise.
        for (int x = 0; x < m; ++x) {
            bool adj = comps.trivial ? g.has_edge(comps.a, verts[x]) : comps.C[i][verts[x]];
            if (adj) gi.add_edge(x, m);
        }
        for (const ChordWord& w : models_rec(gi, all)) {
            auto [t, t2] = halves(w, m);
            for (int& x : t) x = verts[x];
            for (int& x : t2) x = verts[x];
            sub[i].emplace_back(t, t2);
            if (!all) break;
        }
    }
    std::set<ChordWord> found;
    std::vector<int> choice(k, 0);
    std::function<void(int)> pick = [&](int i) {
        if (i == k) {
            std::vector<std::pair<ChordWord, ChordWord>> parts(k);
            for (int j = 0; j < k; ++j) parts[j] = sub[j][choice[j]];
            std::vector<int> order(k);
            std::iota(order.begin(), order.end(), 0);
            do {
                for (int mask = 0; mask < (1 << k); ++mask) {
                    std::vector<bool> swaps(k);
                    for (int j = 0; j < k; ++j) swaps[j] = (mask >> j) & 1;
                    found.insert(canonical_chord(compose(parts, order, swaps, comps.trivial ? comps.a : -1)));
                    if (!all) return;
                }
            } while (std::next_permutation(order.begin(), order.end()));
            return;
        }
        for (choice[i] = 0; choice[i] < static_cast<int>(sub[i].size()); ++choice[i]) {
            pick(i + 1);
            if (!all && !found.empty()) return;
        }
    };
    pick(0);
    return {found.begin(), found.end()};
}

}  // namespace

ChordWord chord_model(const Graph& g) {
    if (g.n == 0) return {};
    if (!is_connected(g)) fail(Errc::Disconnected, "chord_model needs a connected graph");
    auto res = models_rec(g, false);
    if (!is_chord_model(g, res.front())) fail(Errc::Internal, "chord_model: composed word fails the crossing check");
    return res.front();
}

std::vector<ChordWord> all_chord_models(const Graph& g) {
    if (g.n == 0) return {ChordWord{}};
    if (!is_connected(g)) fail(Errc::Disconnected, "all_chord_models needs a connected graph");
    return models_rec(g, true);
}

}  // namespace circa
