#include "doctest.h"
#include "fixtures.hpp"

#include "circa/oracle.hpp"

using namespace circa;
using namespace fixtures;

namespace {

// P4 c-a-b-d with ids a=0, b=1, c=2, d=3.
Graph p4_named() {
    return graph_from("4 3\nc a\na b\nb d\n");
}

}  // namespace

TEST_CASE("closed neighbourhood and pair classification on P4") {
    Graph g = p4_named();
    REQUIRE(g.n == 4);
    const int c = 0, a = 1, b = 2, d = 3;  // names are numbered by first appearance
    CHECK(g.name(a) == "a");
    CHECK(to_list(closed_neighborhood(g, a)) == std::vector<int>{c, a, b});
    CHECK(to_list(closed_neighborhood(Graph(1), 0)) == std::vector<int>{0});
    CHECK(classify_pair(g, c, d) == PairType::DI);
    CHECK(classify_pair(g, a, c) == PairType::CS);
    CHECK(classify_pair(g, c, a) == PairType::CD);
    CHECK(classify_pair(g, a, b) == PairType::CC);
    CHECK_THROWS_AS(classify_pair(g, a, a), Error);
    Structure s = build_matrix(g);
    CHECK(s.ov.edge_count() == 0);
}

TEST_CASE("strip_universal examples") {
    Graph k3 = graph_from("3 3\n0 1\n1 2\n0 2\n");
    auto r = strip_universal(k3);
    CHECK(r.graph.n == 0);
    CHECK(r.removed == 3);
    auto p = strip_universal(path(4));
    CHECK(p.graph.n == 4);
    CHECK(p.removed == 0);
    auto st = strip_universal(star(3));
    CHECK(st.graph.n == 3);
    CHECK(st.graph.edge_count() == 0);
    CHECK(st.removed == 1);
}

TEST_CASE("twin quotient examples") {
    Graph two_k2 = graph_from("4 2\n0 1\n2 3\n");
    auto [q, part] = twin_quotient(two_k2);
    CHECK(q.base.n == 2);
    CHECK(q.mult == std::vector<int>{2, 2});
    auto [q4, part4] = twin_quotient(path(4));
    CHECK(q4.base.n == 4);
    CHECK(q4.base.edge_count() == 3);
    // Closed neighbourhoods of isolated vertices differ, so 3K1 has no twins.
    auto [q3, part3] = twin_quotient(Graph(3));
    CHECK(q3.base.n == 3);
    CHECK(q3.mult == std::vector<int>{1, 1, 1});
}

TEST_CASE("C6 matrix and overlap graph") {
    Graph g = cycle(6);
    Structure s = build_matrix(g);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if (i == j) continue;
            bool adj = (i + 1) % 6 == j || (j + 1) % 6 == i;
            CHECK(s.m(i, j) == (adj ? PairType::OV : PairType::DI));
        }
    CHECK(s.ov.edge_count() == 6);
    Graph k2(2);
    k2.add_edge(0, 1);
    CHECK_THROWS_AS(build_matrix(k2), Error);
}

TEST_CASE("C6 straighten, restriction and bend") {
    Graph g = cycle(6);
    Structure s = build_matrix(g);
    ArcModel psi = c6_model();
    CHECK(arc_graph(psi).adj == g.adj);
    CHECK(is_normalized(psi, s.m));
    Word phi = straighten(psi, s);
    Word expect = parse_word("v2^0 v1^1 v3^0 v2^1 v4^0 v3^1 v5^0 v4^1 v6^0 v5^1 v1^0 v6^1", vid);
    CHECK(equivalent(phi, expect));
    CHECK(word_string(rotate_to(phi, 0), vname) == "v2^0 v1^1 v3^0 v2^1 v4^0 v3^1 v5^0 v4^1 v6^0 v5^1 v1^0 v6^1");
    CHECK(is_conformal(phi, s));

    Bits keep = to_bits(6, {0, 5});
    Word r = restrict_vertices(phi, keep);
    CHECK(equivalent(r, parse_word("v6^0 v1^0 v6^1 v1^1", vid)));
    auto segs = restrict_segments(phi, [&](const Letter& l) { return keep[l.v]; });
    REQUIRE(segs.size() == 3);

    ArcModel back = bend(phi, s);
    CHECK(back.arcs == psi.arcs);

    Word flipped = phi;
    for (auto& l : flipped)
        if (l.v == 0) l.e = 1 - l.e;
    auto bad = conformal_violation(flipped, s, Bits(6).set());
    REQUIRE(bad.has_value());
    CHECK((bad->v == 0 || bad->u == 0));
    CHECK(is_conformal(Word{}, s, Bits(6)));
}

TEST_CASE("reflection") {
    Word w = parse_word("v2^0 v4^1 v1^0 v2^1 v3^0 v1^1 v4^0 v3^1", vid);
    Word r = reflect(w);
    CHECK(equivalent(r, parse_word("v3^0 v4^1 v1^0 v3^1 v2^0 v1^1 v4^0 v2^1", vid)));
    CHECK(equivalent(reflect(r), w));
    Word single{{0, 0}, {0, 1}};
    CHECK(equivalent(reflect(single), single));
}

TEST_CASE("two disjoint arcs straighten to chords on each other's right") {
    Structure s = build_matrix(Graph(3));
    ArcModel psi{6, {{0, 1}, {2, 3}, {4, 5}}};
    Word phi = straighten(psi, s);
    CHECK(is_conformal(phi, s));
    CHECK(s.sides.right[0][1]);
    CHECK(s.sides.right[1][0]);
}

TEST_CASE("normalize repairs hand-made violations") {
    // P4 c-a-b-d drawn with c overlapping a (should be contained) and a, b
    // overlapping (should cover the circle together).
    Graph p = p4_named();
    Structure s = build_matrix(p);
    ArcModel psi{8, {{0, 2}, {1, 4}, {3, 6}, {5, 7}}};
    REQUIRE(arc_graph(psi).adj == p.adj);
    auto v = normalization_violation(psi, s.m);
    REQUIRE(v.has_value());
    ArcModel fixed = normalize(psi, s.m);
    CHECK(arc_graph(fixed).adj == p.adj);
    CHECK(is_normalized(fixed, s.m));
    CHECK(geometric_relation(fixed, 1, 0) == PairType::CS);
    CHECK(geometric_relation(fixed, 1, 2) == PairType::CC);
    CHECK(normalize(fixed, s.m).arcs == fixed.arcs);

    ArcModel wrong{8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}};
    CHECK_THROWS_AS(normalize(wrong, s.m), Error);
}

TEST_CASE("random instances: normalize, straighten, bend round trip") {
    for (uint64_t seed = 1; seed <= 200; ++seed) {
        Instance inst = random_circular_arc({seed, 3 + static_cast<int>(seed % 8), 0.6, true});
        CHECK(arc_graph(inst.model).adj == inst.graph.adj);
        if (inst.graph.n == 0) continue;
        Structure s = build_matrix(inst.graph);
        ArcModel norm = normalize(inst.model, s.m);
        REQUIRE(is_normalized(norm, s.m));
        Word phi = straighten(norm, s);
        CHECK(is_conformal(phi, s));
        CHECK(bend(phi, s).arcs == norm.arcs);
        CHECK(normalize(norm, s.m).arcs == norm.arcs);
    }
}

TEST_CASE("random generator is reproducible") {
    auto a = random_circular_arc({42, 8, 0.5, false});
    auto b = random_circular_arc({42, 8, 0.5, false});
    CHECK(a.model.arcs == b.model.arcs);
    auto one = random_circular_arc({7, 1, 0.5, false});
    CHECK(one.graph.n == 1);
}

TEST_CASE("conformal enumeration agrees with the slow enumerator") {
    int checked = 0;
    for (uint64_t seed = 1; seed <= 60 && checked < 25; ++seed) {
        Instance inst = random_circular_arc({seed, 7, 0.6, true});
        if (inst.graph.n < 2 || inst.graph.n > 6) continue;
        Structure s = build_matrix(inst.graph);
        Bits all(s.n);
        all.set();
        auto fast = enumerate_conformal(s, all);
        auto slow = enumerate_conformal_slow(s, all);
        CHECK(fast == slow);
        CHECK_FALSE(fast.empty());
        for (const Word& w : fast) CHECK(std::binary_search(fast.begin(), fast.end(), canonical(reflect(w))));
        ++checked;
    }
    CHECK(checked >= 10);
}

TEST_CASE("brute isomorphism") {
    Graph c6 = cycle(6);
    Graph two_c3 = graph_from("6 6\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n");
    CHECK_FALSE(brute_iso(c6, two_c3).has_value());
    auto id = brute_iso(c6, c6);
    REQUIRE(id.has_value());
    std::vector<int> perm{3, 0, 5, 1, 2, 4};
    auto m = brute_iso(c6, permuted(c6, perm));
    REQUIRE(m.has_value());
    for (int u = 0; u < 6; ++u)
        for (int v = 0; v < 6; ++v) CHECK(c6.has_edge(u, v) == permuted(c6, perm).has_edge((*m)[u], (*m)[v]));
}
