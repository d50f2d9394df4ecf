#include "circa/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <map>
#include <set>

namespace circa {

namespace {

struct SplitMix {
    uint64_t s;
    uint64_t next() {
        uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace

ArcModel restrict_model(const ArcModel& psi, const std::vector<int>& keep) {
    std::vector<std::pair<int, int>> ends;  // (slot, vertex*2+e)
    for (size_t i = 0; i < keep.size(); ++i) {
        ends.emplace_back(psi.arcs[keep[i]].first, static_cast<int>(2 * i));
        ends.emplace_back(psi.arcs[keep[i]].second, static_cast<int>(2 * i + 1));
    }
    std::sort(ends.begin(), ends.end());
    ArcModel out;
    out.size = static_cast<int>(ends.size());
    out.arcs.assign(keep.size(), {-1, -1});
    for (size_t p = 0; p < ends.size(); ++p) {
        int id = ends[p].second;
        (id % 2 == 0 ? out.arcs[id / 2].first : out.arcs[id / 2].second) = static_cast<int>(p);
    }
    return out;
}

Instance random_circular_arc(const InstanceSeed& seed) {
    counters().oracle_calls++;
    SplitMix rng{seed.seed * 0x2545F4914F6CDD1DULL + static_cast<uint64_t>(seed.n)};
    int n = seed.n;
    std::vector<std::pair<double, int>> pts;
    for (int v = 0; v < n; ++v) {
        double a = rng.unit();
        double len = std::max(1e-9, seed.max_span * rng.unit());
        double b = a + len;
        if (b >= 1.0) b -= 1.0;
        pts.emplace_back(a, 2 * v);
        pts.emplace_back(b, 2 * v + 1);
    }
    std::sort(pts.begin(), pts.end());
    ArcModel psi;
    psi.size = 2 * n;
    psi.arcs.assign(n, {-1, -1});
    for (int p = 0; p < 2 * n; ++p) {
        int id = pts[p].second;
        (id % 2 == 0 ? psi.arcs[id / 2].first : psi.arcs[id / 2].second) = p;
    }
    Instance inst{arc_graph(psi), psi};
    if (!seed.reduced) return inst;
    std::vector<int> alive(n);
    std::iota(alive.begin(), alive.end(), 0);
    while (true) {
        Graph g = induced(inst.graph, alive);
        std::vector<int> keep;
        std::set<Bits> seen;
        bool changed = false;
        for (int i = 0; i < g.n; ++i) {
            if (is_universal(g, i) || !seen.insert(closed_neighborhood(g, i)).second) {
                changed = true;
                continue;
            }
            keep.push_back(alive[i]);
        }
        alive = keep;
        if (!changed) break;
    }
    Instance out;
    out.model = restrict_model(psi, alive);
    out.graph = arc_graph(out.model);
    return out;
}

std::vector<Word> enumerate_conformal(const Structure& s, const Bits& domain, int bound) {
    counters().oracle_calls++;
    std::vector<int> dom = to_list(domain);
    int k = static_cast<int>(dom.size());
    if (k > bound) fail(Errc::BoundExceeded, "enumerate_conformal: domain of " + std::to_string(k) + " exceeds bound");
    std::vector<Word> out;
    if (k == 0) return {Word{}};
    std::vector<std::array<int, 2>> pos(s.n, {-1, -1});
    std::vector<int> placed(s.n, 0);
    Word cur;
    // Checks all constraints that became decidable when vertex v got its second letter.
    auto consistent = [&](int v) {
        int a = pos[v][0], b = pos[v][1];
        bool future_left = a > b;
        for (int u : dom) {
            if (u == v) continue;
            bool cross = s.crosses(u, v);
            if (placed[u] == 2) {
                bool c = chords_cross(pos[v], pos[u]);
                if (c != cross) return false;
                if (!c) {
                    if (in_stretch(a, b, pos[u][0]) != s.left_of(v, u)) return false;
                    if (in_stretch(pos[u][0], pos[u][1], a) != s.left_of(u, v)) return false;
                }
            } else if (placed[u] == 1) {
                int p = pos[u][0] >= 0 ? pos[u][0] : pos[u][1];
                bool in = in_stretch(a, b, p);
                if ((in != future_left) != cross) return false;
                if (!cross && in != s.left_of(v, u)) return false;
            } else {
                if (cross) return false;
                if (future_left != s.left_of(v, u)) return false;
            }
        }
        return true;
    };
    // A new letter of v must sit on the correct side of every closed chord it does not cross,
    // and of every open chord, whose side so far is fixed by the letter that opened it.
    auto placement_ok = [&](int v, int p) {
        for (int u : dom) {
            if (u == v || s.crosses(u, v)) continue;
            if (placed[u] == 2 && in_stretch(pos[u][0], pos[u][1], p) != s.left_of(u, v)) return false;
            if (placed[u] == 1 && (pos[u][0] >= 0) != s.left_of(u, v)) return false;
        }
        return true;
    };
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == 2 * k) {
            out.push_back(canonical(cur));
            return;
        }
        for (int v : dom)
            for (int e = 0; e < 2; ++e) {
                if (pos[v][e] != -1) continue;
                pos[v][e] = static_cast<int>(cur.size());
                placed[v]++;
                cur.push_back({v, e});
                if (placement_ok(v, pos[v][e]) && (placed[v] < 2 || consistent(v))) rec();
                cur.pop_back();
                placed[v]--;
                pos[v][e] = -1;
            }
    };
    int first = dom[0];
    pos[first][0] = 0;
    placed[first] = 1;
    cur.push_back({first, 0});
    rec();
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// All perfect matchings of 0..2k-1 as chord endpoint pairs, ordered by first endpoint.
void matchings(std::vector<int>& mate, int k, const std::function<void()>& visit) {
    int first = -1;
    for (int i = 0; i < 2 * k; ++i)
        if (mate[i] == -1) {
            first = i;
            break;
        }
    if (first == -1) {
        visit();
        return;
    }
    for (int j = first + 1; j < 2 * k; ++j) {
        if (mate[j] != -1) continue;
        mate[first] = j;
        mate[j] = first;
        matchings(mate, k, visit);
        mate[first] = mate[j] = -1;
    }
}

/// Every assignment of domain vertices to chords whose crossings match `adj`.
void labelings(const std::vector<std::array<int, 2>>& chord, const std::vector<int>& dom,
               const std::function<bool(int, int)>& adj, const std::function<void(const std::vector<int>&)>& visit) {
    int k = static_cast<int>(chord.size());
    std::vector<int> lab(k, -1);
    std::vector<char> used(k, 0);
    std::function<void(int)> rec = [&](int i) {
        if (i == k) {
            visit(lab);
            return;
        }
        for (int x = 0; x < k; ++x) {
            if (used[x]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) ok = chords_cross(chord[i], chord[j]) == adj(dom[x], dom[lab[j]]);
            if (!ok) continue;
            used[x] = 1;
            lab[i] = x;
            rec(i + 1);
            used[x] = 0;
        }
    };
    rec(0);
}

}  // namespace

std::vector<Word> enumerate_conformal_slow(const Structure& s, const Bits& domain, int bound) {
    counters().oracle_calls++;
    std::vector<int> dom = to_list(domain);
    int k = static_cast<int>(dom.size());
    if (k > bound) fail(Errc::BoundExceeded, "enumerate_conformal_slow: domain too large");
    if (k == 0) return {Word{}};
    std::set<Word> found;
    std::vector<int> mate(2 * k, -1);
    matchings(mate, k, [&] {
        std::vector<std::array<int, 2>> chord;
        for (int i = 0; i < 2 * k; ++i)
            if (mate[i] > i) chord.push_back({i, mate[i]});
        labelings(chord, dom, [&](int u, int v) { return s.crosses(u, v); }, [&](const std::vector<int>& lab) {
            for (int mask = 0; mask < (1 << k); ++mask) {
                Word w(2 * k);
                for (int i = 0; i < k; ++i) {
                    int flip = (mask >> i) & 1;
                    w[chord[i][0]] = {dom[lab[i]], flip};
                    w[chord[i][1]] = {dom[lab[i]], 1 - flip};
                }
                if (is_conformal(w, s, domain)) found.insert(canonical(w));
            }
        });
    });
    return {found.begin(), found.end()};
}

std::vector<ChordWord> enumerate_chord_models_brute(const Graph& g, const Bits& domain, int bound) {
    counters().oracle_calls++;
    std::vector<int> dom = to_list(domain);
    int k = static_cast<int>(dom.size());
    if (k > bound) fail(Errc::BoundExceeded, "enumerate_chord_models_brute: domain too large");
    if (k == 0) return {ChordWord{}};
    std::set<ChordWord> found;
    std::vector<int> mate(2 * k, -1);
    matchings(mate, k, [&] {
        std::vector<std::array<int, 2>> chord;
        for (int i = 0; i < 2 * k; ++i)
            if (mate[i] > i) chord.push_back({i, mate[i]});
        labelings(chord, dom, [&](int u, int v) { return g.has_edge(u, v); }, [&](const std::vector<int>& lab) {
            ChordWord w(2 * k);
            for (int i = 0; i < k; ++i) w[chord[i][0]] = w[chord[i][1]] = dom[lab[i]];
            found.insert(canonical_chord(w));
        });
    });
    return {found.begin(), found.end()};
}

std::optional<std::vector<int>> brute_iso(const MultiGraph& g, const MultiGraph& h) {
    counters().oracle_calls++;
    int n = g.base.n;
    if (n != h.base.n || g.base.edge_count() != h.base.edge_count()) return std::nullopt;
    // Colour refinement gives candidate classes; then plain backtracking.
    auto refine = [](const MultiGraph& a, const MultiGraph& b) {
        int n = a.base.n;
        std::vector<long> ca(n), cb(n);
        for (int v = 0; v < n; ++v) {
            ca[v] = a.mult[v] * 1000L + a.base.degree(v);
            cb[v] = b.mult[v] * 1000L + b.base.degree(v);
        }
        for (int round = 0; round < n; ++round) {
            std::map<std::vector<long>, long> ids;
            auto sig = [&](const MultiGraph& x, const std::vector<long>& c, int v) {
                std::vector<long> s{c[v]};
                std::vector<long> nb;
                for (int u : to_list(x.base.adj[v])) nb.push_back(c[u]);
                std::sort(nb.begin(), nb.end());
                s.insert(s.end(), nb.begin(), nb.end());
                return s;
            };
            std::vector<std::vector<long>> sa(n), sb(n);
            for (int v = 0; v < n; ++v) sa[v] = sig(a, ca, v), sb[v] = sig(b, cb, v);
            std::vector<std::vector<long>> all(sa);
            all.insert(all.end(), sb.begin(), sb.end());
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            for (size_t i = 0; i < all.size(); ++i) ids[all[i]] = static_cast<long>(i);
            std::vector<long> na(n), nb2(n);
            for (int v = 0; v < n; ++v) na[v] = ids[sa[v]], nb2[v] = ids[sb[v]];
            bool stable = std::set<long>(na.begin(), na.end()).size() == std::set<long>(ca.begin(), ca.end()).size();
            ca = na;
            cb = nb2;
            if (stable) break;
        }
        return std::make_pair(ca, cb);
    };
    auto [cg, ch] = refine(g, h);
    {
        auto sg = cg, sh = ch;
        std::sort(sg.begin(), sg.end());
        std::sort(sh.begin(), sh.end());
        if (sg != sh) return std::nullopt;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.base.degree(a) > g.base.degree(b); });
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    std::function<bool(int)> rec = [&](int i) {
        if (i == n) return true;
        int v = order[i];
        for (int w = 0; w < n; ++w) {
            if (used[w] || cg[v] != ch[w]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j) {
                int x = order[j];
                ok = g.base.has_edge(v, x) == h.base.has_edge(w, map[x]);
            }
            if (!ok) continue;
            map[v] = w;
            used[w] = 1;
            if (rec(i + 1)) return true;
            used[w] = 0;
            map[v] = -1;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return map;
}

std::optional<std::vector<int>> brute_iso(const Graph& g, const Graph& h) {
    return brute_iso(MultiGraph{g, std::vector<int>(g.n, 1)}, MultiGraph{h, std::vector<int>(h.n, 1)});
}

}  // namespace circa
