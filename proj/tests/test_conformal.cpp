#include "doctest.h"
#include "fixtures.hpp"

#include "circa/conformal.hpp"
#include "circa/oracle.hpp"

#include <algorithm>
#include <set>

using namespace circa;
using namespace fixtures;

namespace {

Bits full(int n) {
    Bits b(n);
    b.set();
    return b;
}

Bits neighbourhood_context(const Structure& s, const Bits& m) {
    Bits c = m;
    for (int v : to_list(m)) c |= s.ov.adj[v];
    return c;
}

bool is_proper(const Structure& s, const Bits& m) {
    for (int x = 0; x < s.n; ++x)
        if (!m[x] && m.is_subset_of(s.ov.adj[x])) return true;
    return false;
}

/// Every admissible pair of a metaedge, by brute force over permutations of both halves.
std::vector<std::pair<Word, Word>> all_admissible(const Structure& s, const Metaedge& me) {
    Word h0, h1;
    for (int v : me.verts) {
        h0.push_back(me.letter(v, 0));
        h1.push_back(me.letter(v, 1));
    }
    std::sort(h0.begin(), h0.end());
    std::sort(h1.begin(), h1.end());
    std::vector<std::pair<Word, Word>> out;
    Word a = h0;
    do {
        Word b = h1;
        do {
            if (is_admissible(a, b, s, me)) out.emplace_back(a, b);
        } while (std::next_permutation(b.begin(), b.end()));
    } while (std::next_permutation(a.begin(), a.end()));
    return out;
}

struct Sample {
    Structure s;
    std::vector<Word> models;
};

std::vector<Sample> samples(int count, int max_n, bool models = true) {
    std::vector<Sample> out;
    for (uint64_t seed = 1; static_cast<int>(out.size()) < count && seed < 2000; ++seed) {
        Instance inst = random_circular_arc({seed, 4 + static_cast<int>(seed % 6), 0.6, true});
        if (inst.graph.n < 3 || inst.graph.n > max_n) continue;
        Sample smp{build_matrix(inst.graph), {}};
        if (models) smp.models = enumerate_conformal(smp.s, full(smp.s.n));
        out.push_back(std::move(smp));
    }
    return out;
}

}  // namespace

TEST_CASE("metaedge of a singleton and of a non-crossing pair") {
    // Chords r = 0 and v = 1 nested without crossing, x = 2 crossing both: r0 v0 x0 v1 r1 x1.
    Structure s;
    s.n = 3;
    s.ov = Graph(3);
    s.ov.add_edge(0, 2);
    s.ov.add_edge(1, 2);
    s.sides.left.assign(3, Bits(3));
    s.sides.right.assign(3, Bits(3));
    s.sides.left[0].set(1);
    s.sides.right[1].set(0);
    CHECK(metaedge_precedes(s, 0, 0, 1, 0));
    Metaedge me = metaedge(s, to_bits(3, {0, 1}));
    CHECK(me.orient == std::vector<int>{0, 0});
    CHECK(me.lt.before(0, 1));
    CHECK_FALSE(me.lt.before(1, 0));
    Word phi = parse_word("v1^0 v2^0 v3^0 v2^1 v1^1 v3^1", vid);
    auto got = metaedge_from_model(phi, s, to_bits(3, {0, 1}), 0, to_bits(3, {0, 1, 2}));
    REQUIRE(got.has_value());
    CHECK(*got == me);

    Metaedge one = metaedge(s, to_bits(3, {0}));
    CHECK(one.letter(0, 0) == Letter{0, 0});
    CHECK(one.letter(0, 1) == Letter{0, 1});
    CHECK(one.lt.rel.size() == 1);
    CHECK_THROWS_AS(metaedge(s, to_bits(3, {0, 1, 2})), Error);
}

TEST_CASE("reversing one half of a non-crossing module is not admissible") {
    Structure s;
    s.n = 3;
    s.ov = Graph(3);
    s.ov.add_edge(0, 2);
    s.ov.add_edge(1, 2);
    s.sides.left.assign(3, Bits(3));
    s.sides.right.assign(3, Bits(3));
    s.sides.left[0].set(1);
    s.sides.right[1].set(0);
    Metaedge me = metaedge(s, to_bits(3, {0, 1}));
    auto [t0, t1] = canonical_admissible(s, me);
    CHECK(is_admissible(t0, t1, s, me));
    Word r0(t0.rbegin(), t0.rend());
    CHECK_FALSE(is_admissible(r0, t1, s, me));
}

TEST_CASE("search engine finds exactly the enumerated conformal models") {
    for (const Sample& smp : samples(40, 8)) {
        SearchSpec spec;
        spec.s = &smp.s;
        spec.chords = to_list(full(smp.s.n));
        spec.all = true;
        CHECK(conformal_search(spec) == smp.models);
        spec.all = false;
        auto one = conformal_search(spec);
        REQUIRE(one.size() == 1);
        CHECK(std::binary_search(smp.models.begin(), smp.models.end(), one.front()));
    }
}

TEST_CASE("metaedges are model independent and restrictions are admissible") {
    int modules = 0;
    for (const Sample& smp : samples(40, 8)) {
        const Structure& s = smp.s;
        MDTree t = md_tree(s.ov, full(s.n));
        for (const MDNode& nd : t.nodes) {
            if (nd.kind == ModKind::Serial || !is_proper(s, nd.set)) continue;
            Metaedge me = metaedge(s, nd.set);
            Bits ctx = neighbourhood_context(s, nd.set);
            for (const Word& phi : smp.models) {
                auto got = metaedge_from_model(phi, s, nd.set, -1, ctx);
                REQUIRE(got.has_value());
                CHECK(*got == me);
                auto segs = restrict_segments(restrict_vertices(phi, ctx), [&](const Letter& l) { return nd.set[l.v]; });
                REQUIRE(segs.size() == 2);
                bool first = me.half(segs[0].front()) == 0;
                CHECK(is_admissible(first ? segs[0] : segs[1], first ? segs[1] : segs[0], s, me));
            }
            auto [t0, t1] = canonical_admissible(s, me);
            CHECK(is_admissible(t0, t1, s, me));
            ++modules;
        }
    }
    CHECK(modules > 20);
}

TEST_CASE("serial modules: generated words and parsing of every model") {
    // Two singleton children: 2 orders x 4 swaps, which collapse to 2 words up to rotation.
    Structure s = build_matrix(path(6));
    std::vector<SerialChild> kids;
    for (int v : {1, 2}) {
        Metaedge me = metaedge(s, to_bits(6, {v}));
        kids.push_back({me, canonical_admissible(s, me)});
    }
    auto words = serial_words(kids);
    CHECK(words.size() == 2);
    for (const Word& w : words) CHECK(is_conformal(w, s, to_bits(6, {1, 2})));

    int serial = 0;
    for (const Sample& smp : samples(40, 8)) {
        MDTree t = md_tree(smp.s.ov, full(smp.s.n));
        for (int node = 0; node < static_cast<int>(t.nodes.size()); ++node) {
            if (t.nodes[node].kind != ModKind::Serial) continue;
            const Bits& m = t.nodes[node].set;
            auto children = serial_children(smp.s, t, node);
            for (const Word& phi : smp.models) CHECK(is_serial_model(restrict_vertices(phi, m), smp.s, children));
            std::vector<SerialChild> sc;
            for (const Metaedge& me : children) sc.push_back({me, canonical_admissible(smp.s, me)});
            if (sc.size() <= 4)
                for (const Word& w : serial_words(sc)) CHECK(is_conformal(w, smp.s, m));
            ++serial;
        }
    }
    CHECK(serial > 0);
}

TEST_CASE("prime pair on P4 and against enumeration") {
    Structure s = build_matrix(path(6));
    Bits inner = to_bits(6, {1, 2, 3, 4});
    auto [a, b] = prime_conformal_pair(s, inner);
    CHECK(enumerate_conformal(s, inner) == std::vector<Word>{a, b});
    CHECK(equivalent(reflect(a), b));

    int primes = 0;
    for (const Sample& smp : samples(150, 11, false)) {
        MDTree t = md_tree(smp.s.ov, full(smp.s.n));
        for (const MDNode& nd : t.nodes) {
            if (nd.kind != ModKind::Prime || nd.set.count() > 9) continue;
            bool leaves = std::all_of(nd.children.begin(), nd.children.end(), [&](int c) { return t.nodes[c].kind == ModKind::Leaf; });
            if (!leaves) continue;
            auto pair = prime_conformal_pair(smp.s, nd.set);
            CHECK(enumerate_conformal(smp.s, nd.set) == std::vector<Word>{pair.first, pair.second});
            CHECK(prime_conformal_pair(smp.s, nd.set, 0) == pair);
            ++primes;
        }
    }
    CHECK(primes > 5);
}

TEST_CASE("probes") {
    // P4 y-x-X-aX: a probe needs a vertex outside P, so add a fifth vertex adjacent to all of X and aX.
    Graph g = graph_from("5 5\n0 1\n1 2\n2 3\n4 2\n4 3\n");
    Probe p{0, 1, to_bits(5, {2}), to_bits(5, {3})};
    CHECK(is_probe(g, full(5), p));
    auto found = find_probe(g, full(5), to_bits(5, {2}), to_bits(5, {3}));
    REQUIRE(found.has_value());
    CHECK(is_probe(g, full(5), *found));
    // With P = U nothing qualifies.
    Graph p4 = path(4);
    CHECK_FALSE(find_probe(p4, full(4), to_bits(4, {2}), to_bits(4, {3})).has_value());
}

namespace {

/// Returns whether some consistent submodule has more than one vertex.
bool check_slot_order(const Structure& s, const Bits& all) {
    auto models = enumerate_conformal(s, all);
    SlotOrder so = slot_order(s, all);
    CHECK(so.pi[0].size() == 2 * so.classes.size());
    std::vector<std::pair<int, int>> rev(so.pi[1].rbegin(), so.pi[1].rend());
    for (auto& [c, j] : rev) j ^= 1;
    CHECK(same_circular(rev, so.pi[0]));
    for (const Word& phi : models) {
        for (const Metaedge& k : so.classes) {
            Bits kb = to_bits(s.n, k.verts);
            CHECK(restrict_segments(phi, [&](const Letter& l) { return kb[l.v]; }).size() <= 2);
        }
        auto seq = slot_sequence(phi, so);
        REQUIRE(seq.has_value());
        CHECK((same_circular(*seq, so.pi[0]) || same_circular(*seq, so.pi[1])));
        CHECK((is_admissible_for_slot_order(phi, s, so, 0) || is_admissible_for_slot_order(phi, s, so, 1)));
    }
    for (int m = 0; m < 2; ++m) {
        Word w = slot_model(s, so, m);
        CHECK(is_admissible_for_slot_order(w, s, so, m));
        CHECK(std::binary_search(models.begin(), models.end(), canonical(w)));
    }
    // Every admissible word is conformal: combine all admissible pairs (bounded product).
    std::vector<std::vector<std::pair<Word, Word>>> options;
    long product = 1;
    for (const Metaedge& k : so.classes) {
        options.push_back(all_admissible(s, k));
        product *= static_cast<long>(options.back().size());
    }
    bool wide = std::any_of(so.classes.begin(), so.classes.end(), [](const Metaedge& k) { return k.verts.size() > 1; });
    if (product > 2000) return wide;
    std::set<Word> built;
    for (long it = 0; it < product; ++it) {
        std::vector<size_t> pick(options.size());
        long r = it;
        for (size_t i = 0; i < options.size(); ++i) {
            pick[i] = r % static_cast<long>(options[i].size());
            r /= static_cast<long>(options[i].size());
        }
        for (int m = 0; m < 2; ++m) {
            Word w;
            for (auto [c, j] : so.pi[m]) {
                const auto& pr = options[c][pick[c]];
                const Word& part = j == 0 ? pr.first : pr.second;
                w.insert(w.end(), part.begin(), part.end());
            }
            CHECK(is_conformal(w, s, all));
            built.insert(canonical(w));
        }
    }
    CHECK(std::vector<Word>(built.begin(), built.end()) == models);
    return wide;
}

}  // namespace

TEST_CASE("slot orders: contiguity, slot sequences and admissible-iff-conformal") {
    int primes = 0, wide = 0;
    for (const Sample& smp : samples(150, 11, false)) {
        const Structure& s = smp.s;
        MDTree t = md_tree(s.ov, full(s.n));
        for (const MDNode& nd : t.nodes) {
            if (nd.kind != ModKind::Prime || is_proper(s, nd.set) || nd.set.count() > 9) continue;
            wide += check_slot_order(s, nd.set);
            ++primes;
        }
    }
    CHECK(primes > 5);
    CHECK(wide > 2);
}
