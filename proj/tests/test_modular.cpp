#include "doctest.h"
#include "fixtures.hpp"

#include "circa/modular.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

using namespace circa;
using namespace fixtures;

namespace {

Graph random_graph(std::mt19937& rng, int n, double p) {
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

std::set<std::vector<int>> strong_modules_brute(const Graph& g) {
    int n = g.n;
    Bits all(n);
    all.set();
    std::vector<Bits> mods;
    for (int mask = 1; mask < (1 << n); ++mask) {
        Bits m(n);
        for (int v = 0; v < n; ++v)
            if ((mask >> v) & 1) m.set(v);
        if (is_module(g, all, m)) mods.push_back(m);
    }
    std::set<std::vector<int>> strong;
    for (const Bits& m : mods) {
        bool ok = true;
        for (const Bits& o : mods)
            if (m.intersects(o) && !m.is_subset_of(o) && !o.is_subset_of(m)) ok = false;
        if (ok) strong.insert(to_list(m));
    }
    return strong;
}

/// Number of transitive orientations by brute force.
long count_transitive(const Graph& g) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.has_edge(u, v)) edges.emplace_back(u, v);
    std::vector<int> all(g.n);
    for (int i = 0; i < g.n; ++i) all[i] = i;
    long count = 0;
    for (long mask = 0; mask < (1L << edges.size()); ++mask) {
        Orientation o(all);
        for (size_t e = 0; e < edges.size(); ++e) {
            auto [u, v] = edges[e];
            ((mask >> e) & 1) ? o.set(v, u) : o.set(u, v);
        }
        if (is_transitive(o)) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("md_tree small shapes") {
    Bits all4(4);
    all4.set();
    auto t = md_tree(Graph(4), all4);
    CHECK(t.root().kind == ModKind::Parallel);
    CHECK(t.root().children.size() == 4);
    Graph k4(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
    CHECK(md_tree(k4, all4).root().kind == ModKind::Serial);
    auto p = md_tree(path(4), all4);
    CHECK(p.root().kind == ModKind::Prime);
    CHECK(p.root().children.size() == 4);
}

TEST_CASE("md_tree nodes are exactly the strong modules") {
    std::mt19937 rng(3);
    for (int it = 0; it < 150; ++it) {
        int n = 2 + it % 5;
        Graph g = random_graph(rng, n, 0.2 + 0.1 * (it % 6));
        Bits all(n);
        all.set();
        MDTree t = md_tree(g, all);
        std::set<std::vector<int>> got;
        for (const auto& node : t.nodes) got.insert(to_list(node.set));
        CHECK(got == strong_modules_brute(g));
        for (const auto& node : t.nodes) {
            if (node.kind == ModKind::Parallel) CHECK(components(g, node.set).size() > 1);
            if (node.kind == ModKind::Leaf) CHECK(node.set.count() == 1);
        }
    }
}

TEST_CASE("prime orientations") {
    Graph p4 = path(4);  // w x y z
    auto [o1, o2] = prime_orientations(p4, std::vector<int>{0, 1, 2, 3});
    CHECK(o1.before(0, 1));
    CHECK(o1.before(2, 1));
    CHECK(o1.before(2, 3));
    CHECK(o2 == o1.reversed());
    CHECK(is_transitive(o2));
    CHECK_THROWS_AS(prime_orientations(cycle(5), std::vector<int>{0, 1, 2, 3, 4}), Error);
}

TEST_CASE("transitive orientations factor over the decomposition tree") {
    std::mt19937 rng(8);
    int comparability = 0;
    for (int it = 0; it < 200; ++it) {
        int n = 3 + it % 4;
        Graph g = random_graph(rng, n, 0.5);
        Bits all(n);
        all.set();
        long brute = count_transitive(g);
        MDTree t = md_tree(g, all);
        long predicted = 1;
        bool ok = true;
        for (size_t i = 0; i < t.nodes.size(); ++i) {
            const auto& node = t.nodes[i];
            if (node.kind == ModKind::Serial)
                for (size_t k = 2; k <= node.children.size(); ++k) predicted *= static_cast<long>(k);
            if (node.kind == ModKind::Prime) {
                try {
                    auto [a, b] = prime_orientations(g, t, static_cast<int>(i));
                    CHECK(is_transitive(a));
                    predicted *= 2;
                } catch (const Error& e) {
                    CHECK(e.code == Errc::NotComparability);
                    ok = false;
                }
            }
        }
        if (!ok) {
            CHECK(brute == 0);
            continue;
        }
        ++comparability;
        CHECK(brute == predicted);
    }
    CHECK(comparability > 50);
}

TEST_CASE("permutation models and orientation pairs") {
    Orientation lt({0, 1}), prec({0, 1});
    lt.set(0, 1);
    auto pm = perm_model_from_orients(lt, prec);
    CHECK(pm.tau0 == std::vector<int>{0, 1});
    CHECK(pm.tau1 == std::vector<int>{1, 0});
    Orientation lt2({0, 1}), prec2({0, 1});
    prec2.set(0, 1);
    auto pm2 = perm_model_from_orients(lt2, prec2);
    CHECK(pm2.tau0 == std::vector<int>{0, 1});
    CHECK(pm2.tau1 == std::vector<int>{0, 1});

    std::mt19937 rng(2);
    for (int it = 0; it < 100; ++it) {
        PermutationModel p;
        p.tau0 = {0, 1, 2, 3, 4, 5};
        std::shuffle(p.tau0.begin(), p.tau0.end(), rng);
        p.tau1 = p.tau0;
        std::shuffle(p.tau1.begin(), p.tau1.end(), rng);
        auto [l, r] = orients_from_perm_model(p);
        auto back = perm_model_from_orients(l, r);
        CHECK(back.tau0 == p.tau0);
        CHECK(back.tau1 == p.tau1);
    }
}
