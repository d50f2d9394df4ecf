#include "doctest.h"
#include "fixtures.hpp"

#include "circa/oracle.hpp"
#include "circa/split.hpp"

#include <algorithm>
#include <random>

using namespace circa;
using namespace fixtures;

namespace {

Graph random_circle_graph(std::mt19937& rng, int n) {
    ChordWord w;
    for (int v = 0; v < n; ++v) w.push_back(v), w.push_back(v);
    std::shuffle(w.begin(), w.end(), rng);
    std::vector<std::array<int, 2>> pos(n, {-1, -1});
    for (int i = 0; i < 2 * n; ++i) (pos[w[i]][0] < 0 ? pos[w[i]][0] : pos[w[i]][1]) = i;
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (chords_cross(pos[u], pos[v])) g.add_edge(u, v);
    return g;
}

bool has_nontrivial_split_brute(const Graph& g) {
    for (int mask = 1; mask < (1 << g.n) - 1; ++mask) {
        Bits side(g.n);
        for (int v = 0; v < g.n; ++v)
            if ((mask >> v) & 1) side.set(v);
        if (side.count() < 2 || static_cast<int>(side.count()) > g.n - 2) continue;
        if (split_from_sides(g, side)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("splits of P4, C5 and the claw") {
    Graph p4 = path(4);  // w=0, x=1, y=2, z=3
    auto s = find_split(p4);
    REQUIRE(s.has_value());
    CHECK(is_split(p4, *s));
    CHECK_FALSE(s->trivial());
    auto fixed = split_from_sides(p4, to_bits(4, {0, 1}));
    REQUIRE(fixed.has_value());
    CHECK(fixed->A == to_bits(4, {1}));
    CHECK(fixed->B == to_bits(4, {2}));
    CHECK(fixed->alphaA == to_bits(4, {0}));
    CHECK(fixed->alphaB == to_bits(4, {3}));
    // That split extends: the maximal one is trivial at an articulation.
    auto m = maximal_split(p4);
    REQUIRE(m.has_value());
    CHECK(is_split(p4, *m));
    CHECK(is_maximal_split(p4, *m));
    auto comps = split_components(p4, *m);
    CHECK(comps.trivial);
    CHECK((comps.a == 1 || comps.a == 2));

    CHECK_FALSE(find_split(cycle(5)).has_value());
    CHECK_FALSE(maximal_split(cycle(5)).has_value());

    auto claw = maximal_split(star(3));
    REQUIRE(claw.has_value());
    CHECK(claw->trivial());
    auto cc = split_components(star(3), *claw);
    CHECK(cc.a == 0);
    CHECK(cc.C.size() == 3);

    CHECK_THROWS_AS(maximal_split(Graph(2)), Error);
}

TEST_CASE("split components of a C4 have empty attachments") {
    Graph c4 = cycle(4);
    auto s = maximal_split(c4);
    REQUIRE(s.has_value());
    auto comps = split_components(c4, *s);
    CHECK_FALSE(comps.trivial);
    CHECK(comps.C.size() == 2);
    for (const auto& a : comps.alpha) CHECK(a.none());
}

TEST_CASE("composition of P4 halves") {
    // P4 w-x-y-z: the articulation x splits into {w} and {y, z}.
    Graph p4 = path(4);
    ChordWord w = chord_model(p4);
    CHECK(is_chord_model(p4, w));
    auto all = all_chord_models(p4);
    CHECK(all == enumerate_chord_models_brute(p4, Bits(4).set()));
    std::vector<std::pair<ChordWord, ChordWord>> parts{{{0}, {0}}, {{2}, {3, 2, 3}}};
    ChordWord c = compose(parts, {0, 1}, {false, false}, 1);
    CHECK(is_chord_model(p4, c));
    ChordWord c2 = compose(parts, {0, 1}, {false, true}, 1);
    CHECK(is_chord_model(p4, c2));
    CHECK(canonical_chord(c) != canonical_chord(c2));
}

TEST_CASE("exact split finder agrees with exhaustive bipartition search") {
    std::mt19937 rng(11);
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        Graph g = random_circle_graph(rng, 4 + it % 5);
        if (!is_connected(g)) continue;
        auto s = find_split(g);
        CHECK(s.has_value() == has_nontrivial_split_brute(g));
        if (s) CHECK(is_split(g, *s));
        auto m = maximal_split(g);
        if (m) {
            CHECK(is_split(g, *m));
            CHECK(is_maximal_split(g, *m));
            auto comps = split_components(g, *m);
            if (!comps.trivial)
            for (size_t i = 0; i < comps.C.size(); ++i)
                for (size_t j = 0; j < comps.C.size(); ++j) {
                    if (i == j) continue;
                    for (int u : to_list(comps.C[i]))
                        CHECK(comps.C[j].is_subset_of(g.adj[u]));
                    for (int u : to_list(comps.alpha[i])) CHECK_FALSE(g.adj[u].intersects(comps.alpha[j] | comps.C[j]));
                }
        }
        ++checked;
    }
    CHECK(checked > 60);
}

TEST_CASE("recursive composition enumerates every chord model") {
    std::mt19937 rng(5);
    int checked = 0, prime = 0;
    for (int it = 0; it < 200 && checked < 60; ++it) {
        Graph g = random_circle_graph(rng, 3 + it % 5);
        if (!is_connected(g)) continue;
        Bits all(g.n);
        all.set();
        auto composed = all_chord_models(g);
        auto brute = enumerate_chord_models_brute(g, all);
        CHECK(composed == brute);
        CHECK(is_chord_model(g, chord_model(g)));
        if (g.n >= 4 && !find_split(g) && !articulation(g)) {
            ++prime;
            REQUIRE(brute.size() <= 2);
            ChordWord r(brute.front().rbegin(), brute.front().rend());
            CHECK(std::find(brute.begin(), brute.end(), canonical_chord(r)) != brute.end());
        }
        ++checked;
    }
    CHECK(checked >= 30);
    CHECK(prime > 0);
}
