#include "doctest.h"
#include "fixtures.hpp"

#include "circa/isomorphism.hpp"
#include "circa/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

using namespace circa;
using namespace fixtures;

namespace {

Bits full(int n) {
    Bits b(n);
    b.set();
    return b;
}

ModKind root_kind(const MultiGraph& q) {
    Structure s = build_matrix(q);
    return md_tree(s.ov, full(s.n)).root().kind;
}

/// Reduced instances whose overlap graph has the given root kind.
std::vector<MultiGraph> reduced_of_kind(ModKind kind, int count, int max_n) {
    std::vector<MultiGraph> out;
    for (uint64_t seed = 1; static_cast<int>(out.size()) < count && seed < 20000; ++seed) {
        Instance a = random_circular_arc({seed, 5 + static_cast<int>(seed % 6), 0.4 + 0.1 * (seed % 6), true});
        MultiGraph q = reduce(a.graph);
        if (q.base.n < 3 || q.base.n > max_n) continue;
        if (root_kind(q) == kind) out.push_back(q);
    }
    return out;
}

std::vector<int> shuffled(int n, std::mt19937_64& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

MultiGraph permuted(const MultiGraph& q, const std::vector<int>& perm) {
    MultiGraph h;
    h.base = circa::permuted(q.base, perm);
    h.mult.assign(q.base.n, 0);
    for (int v = 0; v < q.base.n; ++v) h.mult[perm[v]] = q.mult[v];
    return h;
}

Graph add_twin(const Graph& g, int v) {
    Graph h(g.n + 1);
    for (int a = 0; a < g.n; ++a)
        for (int b = a + 1; b < g.n; ++b)
            if (g.has_edge(a, b)) h.add_edge(a, b);
    for (int a = 0; a < g.n; ++a)
        if (g.has_edge(a, v)) h.add_edge(a, g.n);
    h.add_edge(v, g.n);
    return h;
}

void check_against_brute(const Graph& g, const Graph& h) {
    IsoResult r = isomorphic(g, h, {true, 9});
    CHECK(r.isomorphic == brute_iso(g, h).has_value());
    if (r.isomorphic) CHECK(is_graph_isomorphism(g, h, r.witness));
}

void check_against_brute(const MultiGraph& g, const MultiGraph& h) {
    IsoResult r = isomorphic(g, h, {true, 9});
    CHECK(r.isomorphic == brute_iso(g, h).has_value());
    if (r.isomorphic) CHECK(preserves_sides(g, h, r.witness));
}

}  // namespace

TEST_CASE("bipartite matching") {
    auto m = bipartite_matching(3, 3, {{0, 0}, {0, 1}, {1, 0}, {2, 1}, {2, 2}});
    CHECK(std::count(m.begin(), m.end(), -1) == 0);
    CHECK(perfect_matching(3, 3, {{0, 0}, {1, 0}, {2, 0}, {2, 1}}) == std::nullopt);
    CHECK(perfect_matching(2, 3, {{0, 0}, {1, 1}}) == std::nullopt);
    auto p = perfect_matching(2, 2, {{0, 1}, {1, 0}, {1, 1}});
    REQUIRE(p.has_value());
    CHECK(*p == std::vector<int>{1, 0});
}

TEST_CASE("every class view is locally isomorphic to itself") {
    for (const MultiGraph& q : reduced_of_kind(ModKind::Prime, 15, 10)) {
        Structure s = build_matrix(q);
        SlotOrder so = slot_order(s, full(s.n));
        SlotSide side = slot_side(s, q.mult, so, nullptr);
        for (int m = 0; m < 2; ++m)
            for (const auto& views : side.views[m])
                for (const auto& v : views) {
                    auto w = locally_isomorphic(v, v);
                    REQUIRE(w.has_value());
                    CHECK(w->size() == v.verts.size());
                }
    }
}

TEST_CASE("a prime slot order matches itself when pinned at the same slot") {
    for (const MultiGraph& q : reduced_of_kind(ModKind::Prime, 15, 10)) {
        Structure s = build_matrix(q);
        SlotOrder so = slot_order(s, full(s.n));
        SlotSide side = slot_side(s, q.mult, so, nullptr);
        int L = static_cast<int>(so.pi[0].size());
        for (int m = 0; m < 2; ++m)
            for (int k = 0; k < L; k += 3) {
                auto w = pinned_slot_iso(side, m, k, side, m, k);
                REQUIRE(w.has_value());
                for (auto [u, v] : w->vertex) CHECK(u == v);
            }
    }
}

TEST_CASE("simple verdicts") {
    CHECK(isomorphic(cycle(6), cycle(6)).isomorphic);
    CHECK_FALSE(isomorphic(cycle(6), path(6)).isomorphic);
    CHECK_FALSE(isomorphic(cycle(5), cycle(6)).isomorphic);
    CHECK(isomorphic(star(4), star(4)).isomorphic);
    Graph k4 = graph_from("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    IsoResult r = isomorphic(k4, k4);
    CHECK(r.isomorphic);
    CHECK(is_graph_isomorphism(k4, k4, r.witness));
}

TEST_CASE("permuted copies are isomorphic with verified witnesses") {
    std::mt19937_64 rng(11);
    for (uint64_t seed = 1; seed <= 200; ++seed) {
        Instance a = random_circular_arc({seed, 4 + static_cast<int>(seed % 9), 0.3 + 0.1 * (seed % 6), seed % 3 == 0});
        Graph h = circa::permuted(a.graph, shuffled(a.graph.n, rng));
        IsoResult r = isomorphic(a.graph, h, {true, 9});
        REQUIRE(r.isomorphic);
        CHECK(is_graph_isomorphism(a.graph, h, r.witness));
    }
}

TEST_CASE("verdicts agree with brute force on graphs with equal degree sequences") {
    std::map<std::vector<int>, std::vector<Graph>> groups;
    for (uint64_t seed = 1; seed <= 3000; ++seed) {
        Instance a = random_circular_arc({seed, 5 + static_cast<int>(seed % 4), 0.5 + 0.1 * (seed % 5), false});
        std::vector<int> key{a.graph.n, a.graph.edge_count()};
        for (int v = 0; v < a.graph.n; ++v) key.push_back(a.graph.degree(v));
        std::sort(key.begin() + 2, key.end());
        auto& gr = groups[key];
        if (gr.size() < 4) gr.push_back(a.graph);
    }
    int pairs = 0;
    for (const auto& [key, gr] : groups)
        for (size_t i = 0; i < gr.size(); ++i)
            for (size_t j = i + 1; j < gr.size(); ++j, ++pairs) check_against_brute(gr[i], gr[j]);
    for (const auto& [key, gr] : groups)
        if (gr[0].n <= 7)
            for (int v = 0; v + 1 < gr[0].n && v < 2; ++v, ++pairs) check_against_brute(add_twin(gr[0], v), add_twin(gr[0], v + 1));
    CHECK(pairs > 300);
}

TEST_CASE("verdicts agree with brute force under multiplicity perturbations") {
    std::mt19937_64 rng(5);
    for (ModKind kind : {ModKind::Parallel, ModKind::Prime, ModKind::Serial}) {
        auto qs = reduced_of_kind(kind, 40, 9);
        CHECK(qs.size() >= 10);
        for (size_t i = 0; i < qs.size(); ++i) {
            MultiGraph q = qs[i];
            for (int& m : q.mult) m = 1 + static_cast<int>(rng() % 2);
            MultiGraph h = permuted(q, shuffled(q.base.n, rng));
            if (i % 2) std::swap(h.mult[rng() % h.mult.size()], h.mult[rng() % h.mult.size()]);
            check_against_brute(q, h);
        }
    }
}

TEST_CASE("graphs without a circular-arc model are rejected") {
    Graph chord = cycle(6);
    chord.add_edge(0, 3);
    CHECK_THROWS_AS(isomorphic(chord, chord), Error);
}

namespace {

int brute_matching_size(int left, int right, const std::vector<std::pair<int, int>>& edges) {
    int best = 0;
    for (int mask = 0; mask < (1 << edges.size()); ++mask) {
        std::vector<char> l(left, 0), r(right, 0);
        int size = 0;
        bool ok = true;
        for (size_t i = 0; i < edges.size() && ok; ++i) {
            if (!((mask >> i) & 1)) continue;
            auto [a, b] = edges[i];
            ok = !l[a] && !r[b];
            l[a] = r[b] = 1;
            ++size;
        }
        if (ok) best = std::max(best, size);
    }
    return best;
}

}  // namespace

TEST_CASE("matching size equals the brute-force maximum") {
    std::mt19937 rng(3);
    for (int it = 0; it < 200; ++it) {
        int left = 1 + static_cast<int>(rng() % 4), right = 1 + static_cast<int>(rng() % 4);
        std::vector<std::pair<int, int>> edges;
        for (int a = 0; a < left; ++a)
            for (int b = 0; b < right; ++b)
                if (rng() % 3 == 0) edges.emplace_back(a, b);
        auto m = bipartite_matching(left, right, edges);
        int size = 0;
        std::vector<char> used(right, 0);
        for (int a = 0; a < left; ++a) {
            if (m[a] < 0) continue;
            CHECK(std::find(edges.begin(), edges.end(), std::make_pair(a, m[a])) != edges.end());
            CHECK_FALSE(used[m[a]]);
            used[m[a]] = 1;
            ++size;
        }
        CHECK(size == brute_matching_size(left, right, edges));
        CHECK(perfect_matching(left, right, edges).has_value() == (left == right && size == left));
    }
}

TEST_CASE("local isomorphism is symmetric and sees multiplicities") {
    std::mt19937_64 rng(17);
    int compared = 0, changed = 0;
    for (const MultiGraph& q0 : reduced_of_kind(ModKind::Prime, 15, 10)) {
        MultiGraph q = q0;
        for (int& m : q.mult) m = 1 + static_cast<int>(rng() % 2);
        MultiGraph h = permuted(q, shuffled(q.base.n, rng));
        Structure sq = build_matrix(q), sh = build_matrix(h);
        SlotOrder oq = slot_order(sq, full(sq.n)), oh = slot_order(sh, full(sh.n));
        SlotSide a = slot_side(sq, q.mult, oq, nullptr), b = slot_side(sh, h.mult, oh, nullptr);
        for (const auto& va : a.views[0])
            for (const LocalView& x : va) {
                bool some = false;
                for (int m = 0; m < 2; ++m)
                    for (const auto& vb : b.views[m])
                        for (const LocalView& y : vb) {
                            auto w = locally_isomorphic(x, y);
                            CHECK(w.has_value() == locally_isomorphic(y, x).has_value());
                            if (!w) continue;
                            some = true;
                            ++compared;
                            for (auto [u, v] : *w) CHECK(q.mult[u] == h.mult[v]);
                        }
                CHECK(some);
                LocalView bumped = x;
                bumped.mult[0] += 5;
                CHECK_FALSE(locally_isomorphic(x, bumped).has_value());
                ++changed;
            }
    }
    CHECK(compared > 50);
    CHECK(changed > 50);
}

TEST_CASE("pinned slot witnesses preserve sides and asymmetric orders reject wrong pins") {
    int rejected = 0;
    for (const MultiGraph& q : reduced_of_kind(ModKind::Prime, 20, 10)) {
        Structure s = build_matrix(q);
        SlotOrder so = slot_order(s, full(s.n));
        SlotSide side = slot_side(s, q.mult, so, nullptr);
        int L = static_cast<int>(so.pi[0].size());
        for (int m = 0; m < 2; ++m)
            for (int l = 0; l < L; ++l) {
                auto w = pinned_slot_iso(side, 0, 0, side, m, l);
                if (!w) {
                    ++rejected;
                    continue;
                }
                std::vector<int> alpha(q.base.n, -1);
                for (auto [u, v] : w->vertex) alpha[u] = v;
                CHECK(preserves_sides(q, q, alpha));
            }
    }
    CHECK(rejected > 0);
}
