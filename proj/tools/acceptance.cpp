#include "acceptance.hpp"

#include "circa/isomorphism.hpp"
#include "circa/oracle.hpp"
#include "circa/split.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace circa::acceptance {

namespace {

// Pinned limits.
constexpr int kNormalizeInstances = 500;
constexpr double kNormalizeSeconds = 5.0;
constexpr int kPrimeInstances = 50;
constexpr double kPrimeSeconds = 60.0;
constexpr int kCircleInstances = 30;
constexpr int kEquivalenceConnected = 50;
constexpr int kEquivalenceDisconnected = 60;
constexpr int kIsoPairs = 1000;
constexpr double kIsoSeconds = 600.0;
constexpr int kLargeN = 200;
constexpr int kLargeCopies = 3;
constexpr double kLargeSeconds = 10.0;
constexpr int kBound = 9;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Bits full(int n) {
    Bits b(n);
    b.set();
    return b;
}

std::vector<int> shuffled(int n, std::mt19937_64& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

std::vector<std::vector<int>> circular_orders(std::vector<int> items) {
    std::sort(items.begin(), items.end());
    std::vector<std::vector<int>> out;
    std::vector<int> rest(items.begin() + 1, items.end());
    do {
        std::vector<int> o{items.front()};
        o.insert(o.end(), rest.begin(), rest.end());
        out.push_back(o);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

Graph chord_graph(const ChordWord& w, int n) {
    std::vector<std::array<int, 2>> pos(n, {-1, -1});
    for (int i = 0; i < static_cast<int>(w.size()); ++i) (pos[w[i]][0] < 0 ? pos[w[i]][0] : pos[w[i]][1]) = i;
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (chords_cross(pos[u], pos[v])) g.add_edge(u, v);
    return g;
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

std::vector<int> sorted_degrees(const Graph& g) {
    std::vector<int> d;
    for (int v = 0; v < g.n; ++v) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
}

MultiGraph unit(const Graph& g) { return {g, std::vector<int>(g.n, 1)}; }

/// Calls f on every element of the cartesian product of the option lists, returning false when it exceeds limit.
template <class T, class F>
bool for_each_product(const std::vector<std::vector<T>>& options, long limit, F f) {
    long product = 1;
    for (const auto& o : options) {
        product *= static_cast<long>(o.size());
        if (product > limit) return false;
    }
    std::vector<const T*> pick(options.size());
    for (long it = 0; it < product; ++it) {
        long r = it;
        for (size_t i = 0; i < options.size(); ++i) {
            pick[i] = &options[i][r % static_cast<long>(options[i].size())];
            r /= static_cast<long>(options[i].size());
        }
        f(pick);
    }
    return true;
}

// ---------------------------------------------------------------------------------------------

CriterionResult normalization(int max_n, std::vector<Instance>& kept) {
    CriterionResult r{1, "normalization soundness", false, "", 0};
    auto t0 = Clock::now();
    int ok = 0, total = 0, largest = 0;
    long vertices = 0;
    for (uint64_t seed = 1; total < kNormalizeInstances; ++seed) {
        int cap = std::min(max_n, 10);
        Instance inst = random_circular_arc({seed, 2 + static_cast<int>(seed % (cap + 4)), 0.2 + 0.1 * (seed % 6), true});
        if (inst.graph.n > cap) continue;
        ++total;
        vertices += inst.graph.n;
        largest = std::max(largest, inst.graph.n);
        Structure s = build_matrix(inst.graph);
        bool good = true;
        try {
            ArcModel norm = normalize(inst.model, s.m);
            check_arc_model(norm);
            for (int v = 0; v < s.n && good; ++v)
                for (int u = 0; u < s.n && good; ++u)
                    if (u != v && geometric_relation(norm, v, u) != s.m(v, u)) good = false;
            good = good && arc_graph(norm).adj == inst.graph.adj;
            inst.model = norm;
        } catch (const Error&) {
            good = false;
        }
        ok += good;
        if (good) kept.push_back(std::move(inst));
    }
    r.seconds = since(t0);
    r.pass = ok == total && r.seconds < kNormalizeSeconds;
    std::ostringstream o;
    o << ok << "/" << total << " normalized models match the matrix pair by pair (reduced n <= " << largest << ", mean "
      << static_cast<double>(vertices) / total << ")";
    r.detail = o.str();
    return r;
}

CriterionResult straighten_bend(const std::vector<Instance>& normalized) {
    CriterionResult r{2, "straighten/bend bijection", false, "", 0};
    auto t0 = Clock::now();
    int ok = 0;
    for (const Instance& inst : normalized) {
        Structure s = build_matrix(inst.graph);
        Word phi = straighten(inst.model, s);
        ok += is_conformal(phi, s) && bend(phi, s).arcs == inst.model.arcs;
    }
    Graph c6(6);
    for (int i = 0; i < 6; ++i) c6.add_edge(i, (i + 1) % 6);
    ArcModel psi{12, {{10, 1}, {0, 3}, {2, 5}, {4, 7}, {6, 9}, {8, 11}}};
    Structure s6 = build_matrix(c6);
    Word phi = straighten(psi, s6);
    std::string got = word_string(rotate_to(phi, 0), [](int v) { return "v" + std::to_string(v + 1); });
    const std::string expect = "v2^0 v1^1 v3^0 v2^1 v4^0 v3^1 v5^0 v4^1 v6^0 v5^1 v1^0 v6^1";
    r.seconds = since(t0);
    r.pass = ok == static_cast<int>(normalized.size()) && !normalized.empty() && got == expect;
    std::ostringstream o;
    o << ok << "/" << normalized.size() << " round trips exact; C6 word " << (got == expect ? "matches" : "differs: " + got);
    r.detail = o.str();
    return r;
}

CriterionResult prime_cores() {
    CriterionResult r{3, "prime cores have exactly two models", false, "", 0};
    auto t0 = Clock::now();
    int found = 0, ok = 0;
    for (uint64_t seed = 1; found < kPrimeInstances && seed < 100000; ++seed) {
        Instance inst = random_circular_arc({seed, 5 + static_cast<int>(seed % 7), 0.3 + 0.1 * (seed % 5), true});
        if (inst.graph.n < 4) continue;
        Structure s = build_matrix(inst.graph);
        MDTree t = md_tree(s.ov, full(s.n));
        for (const MDNode& nd : t.nodes) {
            if (found >= kPrimeInstances) break;
            if (nd.kind != ModKind::Prime || nd.set.count() < 4 || nd.set.count() > 8) continue;
            bool leaves = std::all_of(nd.children.begin(), nd.children.end(), [&](int c) { return t.nodes[c].kind == ModKind::Leaf; });
            if (!leaves) continue;
            ++found;
            auto models = enumerate_conformal(s, nd.set);
            auto [a, b] = prime_conformal_pair(s, nd.set, kBound);
            ok += models.size() == 2 && equivalent(reflect(models[0]), models[1]) && models == std::vector<Word>{a, b};
        }
    }
    r.seconds = since(t0);
    r.pass = found >= kPrimeInstances && ok == found && r.seconds < kPrimeSeconds;
    std::ostringstream o;
    o << ok << "/" << found << " prime cores (4 <= |U| <= 8): two mutually reflected models equal to the constructed pair";
    r.detail = o.str();
    return r;
}

CriterionResult circle_completeness() {
    CriterionResult r{4, "chord-model composition completeness", false, "", 0};
    auto t0 = Clock::now();
    std::mt19937 rng(2024);
    int checked = 0, ok = 0;
    for (int it = 0; checked < 2 * kCircleInstances && it < 10000; ++it) {
        int n = 3 + it % 5;
        ChordWord w;
        for (int v = 0; v < n; ++v) w.push_back(v), w.push_back(v);
        std::shuffle(w.begin(), w.end(), rng);
        Graph g = chord_graph(w, n);
        if (!is_connected(g)) continue;
        ++checked;
        ok += all_chord_models(g) == enumerate_chord_models_brute(g, full(n));
    }
    r.seconds = since(t0);
    r.pass = checked >= kCircleInstances && ok == checked;
    std::ostringstream o;
    o << ok << "/" << checked << " connected circle graphs (n <= 7): composed set equals the brute-force set";
    r.detail = o.str();
    return r;
}

struct EquivalenceSample {
    Structure s;
    std::vector<Word> models;
    bool connected;
};

std::vector<EquivalenceSample> equivalence_samples(int max_n) {
    std::vector<EquivalenceSample> out;
    int connected = 0, disconnected = 0;
    for (uint64_t seed = 1; (connected < kEquivalenceConnected || disconnected < kEquivalenceDisconnected) && seed < 200000; ++seed) {
        Instance inst = random_circular_arc({seed, 4 + static_cast<int>(seed % 7), 0.3 + 0.1 * (seed % 6), true});
        int n = inst.graph.n;
        if (n < 3) continue;
        Structure s = build_matrix(inst.graph);
        bool conn = md_tree(s.ov, full(n)).root().kind != ModKind::Parallel;
        if (conn && (n > std::min(max_n, 8) || connected >= kEquivalenceConnected)) continue;
        if (!conn && (n > std::min(max_n, 9) || disconnected >= kEquivalenceDisconnected)) continue;
        (conn ? connected : disconnected)++;
        auto models = enumerate_conformal(s, full(n));
        out.push_back({std::move(s), std::move(models), conn});
    }
    return out;
}

CriterionResult equivalence(const std::vector<EquivalenceSample>& smp) {
    CriterionResult r{5, "oracle models equal admissible/composed models", false, "", 0};
    auto t0 = Clock::now();
    int ok = 0, skipped = 0, conn = 0;
    for (const auto& x : smp) {
        auto built = structural_models(x.s);
        if (!built) {
            ++skipped;
            continue;
        }
        conn += x.connected;
        ok += *built == std::set<Word>(x.models.begin(), x.models.end());
    }
    int compared = static_cast<int>(smp.size()) - skipped;
    r.seconds = since(t0);
    r.pass = compared >= 100 && ok == compared;
    std::ostringstream o;
    o << ok << "/" << compared << " instances (" << conn << " connected n <= 8, " << compared - conn
      << " disconnected n <= 9) have equal sets; " << skipped << " skipped as too large to assemble";
    r.detail = o.str();
    return r;
}

CriterionResult invariance(const std::vector<EquivalenceSample>& smp) {
    CriterionResult r{6, "metaedge/slot/pattern invariance", false, "", 0};
    auto t0 = Clock::now();
    long checks = 0, bad = 0;
    auto expect = [&](bool c) {
        ++checks;
        bad += !c;
    };
    for (const auto& x : smp) {
        const Structure& s = x.s;
        MDTree md = md_tree(s.ov, full(s.n));
        for (const MDNode& nd : md.nodes) {
            if (nd.kind == ModKind::Serial || !is_proper(s, nd.set)) continue;
            Metaedge me = metaedge(s, nd.set);
            Bits ctx = neighbourhood_context(s, nd.set);
            for (const Word& phi : x.models) {
                auto got = metaedge_from_model(phi, s, nd.set, -1, ctx);
                expect(got && *got == me);
            }
        }
        auto slot_ok = [&](const Word& w, const SlotOrder& so) -> int {
            auto seq = slot_sequence(w, so);
            if (!seq) return -1;
            for (int m = 0; m < 2; ++m)
                if (same_circular(*seq, so.pi[m])) return m;
            return -1;
        };
        if (md.root().kind == ModKind::Prime) {
            SlotOrder so = slot_order(s, full(s.n), kBound);
            for (const Word& phi : x.models) expect(slot_ok(phi, so) >= 0);
        } else if (md.root().kind == ModKind::Parallel) {
            TNMTree t = build_tnm(s, true, kBound);
            for (int a = 0; a < static_cast<int>(t.modules.size()); ++a)
                for (const Word& phi : x.models) {
                    auto ext = restrict_to_module(phi, t, a);
                    if (!ext) {
                        expect(false);
                        continue;
                    }
                    Word core;
                    for (const Letter& l : *ext)
                        if (l.e != 2) core.push_back(l);
                    int m = slot_ok(core, t.modules[a].so);
                    expect(m >= 0);
                    if (m < 0) continue;
                    auto pat = patterns_of_word(*ext, t, a, m);
                    expect(pat && *pat == t.modules[a].pat[m]);
                }
        } else if (md.root().kind == ModKind::Serial) {
            auto children = serial_children(s, md, 0);
            for (const Word& phi : x.models) expect(is_serial_model(phi, s, children));
        }
    }
    r.seconds = since(t0);
    r.pass = bad == 0 && checks > 0;
    std::ostringstream o;
    o << checks - bad << "/" << checks << " model-derived metaedges, slot orders and patterns equal the model-free ones";
    r.detail = o.str();
    return r;
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

CriterionResult isomorphism_agreement(int max_n) {
    CriterionResult r{7, "isomorphism agrees with brute force", false, "", 0};
    auto t0 = Clock::now();
    int cap = std::min(max_n, 9);
    std::mt19937_64 rng(7);
    int pairs = 0, disagree = 0, bad_witness = 0, yes = 0;
    int kinds[3] = {0, 0, 0};
    auto graph_pair = [&](const Graph& g, const Graph& h, int kind) {
        ++pairs;
        ++kinds[kind];
        IsoResult res = isomorphic(g, h, {true, kBound});
        bool truth = brute_iso(g, h).has_value();
        disagree += res.isomorphic != truth;
        if (res.isomorphic) {
            ++yes;
            bool reduced = !has_twins(g) && !has_universal(g);
            bad_witness += !is_graph_isomorphism(g, h, res.witness) || (reduced && !preserves_sides(unit(g), unit(h), res.witness));
        }
    };
    auto multi_pair = [&](const MultiGraph& g, const MultiGraph& h) {
        ++pairs;
        ++kinds[2];
        IsoResult res = isomorphic(g, h, {true, kBound});
        disagree += res.isomorphic != brute_iso(g, h).has_value();
        if (res.isomorphic) {
            ++yes;
            bad_witness += !preserves_sides(g, h, res.witness);
        }
    };
    auto draw = [&](uint64_t seed, int lo) {
        return random_circular_arc({seed, lo + static_cast<int>(seed % std::max(cap - lo + 1, 1)), 0.3 + 0.1 * (seed % 6), seed % 3 == 0});
    };
    // 40%: permuted copies.
    for (uint64_t seed = 1; kinds[0] < kIsoPairs * 2 / 5; ++seed) {
        Instance a = draw(seed, 4);
        graph_pair(a.graph, permuted(a.graph, shuffled(a.graph.n, rng)), 0);
    }
    // 40%: independent instances with equal vertex and edge counts.
    std::map<std::pair<int, int>, Graph> waiting;
    for (uint64_t seed = 100001; kinds[1] < kIsoPairs * 2 / 5; ++seed) {
        Instance a = draw(seed, 4);
        auto key = std::make_pair(a.graph.n, a.graph.edge_count());
        auto it = waiting.find(key);
        if (it == waiting.end()) {
            waiting.emplace(key, a.graph);
            continue;
        }
        graph_pair(it->second, a.graph, 1);
        waiting.erase(it);
    }
    // 20%: twin and multiplicity perturbations.
    for (uint64_t seed = 200001; kinds[2] < kIsoPairs / 10; ++seed) {
        Instance a = draw(seed, 4);
        if (a.graph.n < 2 || a.graph.n > cap - 1) continue;
        int v = static_cast<int>(rng() % a.graph.n), u = static_cast<int>(rng() % a.graph.n);
        auto perm = shuffled(a.graph.n + 1, rng);
        graph_pair(add_twin(a.graph, v), permuted(add_twin(a.graph, u), perm), 2);
    }
    for (uint64_t seed = 300001; kinds[2] < kIsoPairs / 5; ++seed) {
        Instance a = draw(seed, 4);
        MultiGraph q = reduce(a.graph);
        if (q.base.n < 3) continue;
        for (int& m : q.mult) m = 1 + static_cast<int>(rng() % 2);
        auto perm = shuffled(q.base.n, rng);
        MultiGraph h{permuted(q.base, perm), std::vector<int>(q.base.n, 0)};
        for (int x = 0; x < q.base.n; ++x) h.mult[perm[x]] = q.mult[x];
        if (seed % 2) std::swap(h.mult[rng() % h.mult.size()], h.mult[rng() % h.mult.size()]);
        multi_pair(q, h);
    }
    r.seconds = since(t0);
    r.pass = pairs >= kIsoPairs && disagree == 0 && bad_witness == 0 && r.seconds < kIsoSeconds;
    std::ostringstream o;
    o << pairs << " pairs (" << kinds[0] << " permuted, " << kinds[1] << " independent, " << kinds[2] << " perturbed; n <= " << cap
      << "), " << yes << " isomorphic, " << disagree << " disagreements, " << bad_witness << " rejected witnesses";
    r.detail = o.str();
    return r;
}

CriterionResult counterexample() {
    CriterionResult r{8, "equal overlap graphs, different graphs", false, "", 0};
    auto t0 = Clock::now();
    auto found = find_overlap_twins(7);
    std::ostringstream o;
    if (!found) {
        o << "no pair found on up to 7 vertices";
    } else {
        Structure sg = build_matrix(found->g), sh = build_matrix(found->h);
        bool same_ov = sg.ov.adj == sh.ov.adj;
        bool hsu_blind = unoriented_models(found->g) == unoriented_models(found->h);
        IsoResult res = isomorphic(found->g, found->h);
        bool truth = brute_iso(found->g, found->h).has_value();
        r.pass = same_ov && hsu_blind && !res.isomorphic && !truth;
        o << "n=" << found->g.n << ", " << found->g.edge_count() << " edges each: overlap graphs " << (same_ov ? "identical" : "differ")
          << ", unoriented chord-model sets " << (hsu_blind ? "identical" : "differ") << ", isomorphic() says "
          << (res.isomorphic ? "yes" : "no") << ", brute force says " << (truth ? "yes" : "no");
    }
    r.seconds = since(t0);
    r.detail = o.str();
    return r;
}

CriterionResult large_copies() {
    CriterionResult r{9, "n=200 permuted copies", false, "", 0};
    auto t0 = Clock::now();
    std::mt19937_64 rng(9);
    bool ok = true;
    double worst = 0;
    long worst_nodes = 0;
    int worst_core = 0;
    for (uint64_t seed = 1; seed <= kLargeCopies; ++seed) {
        Instance a = random_circular_arc({seed, kLargeN, 0.3, false});
        Graph h = permuted(a.graph, shuffled(a.graph.n, rng));
        counters().reset();
        auto t1 = Clock::now();
        IsoResult res = isomorphic(a.graph, h);
        double sec = since(t1);
        long n = a.graph.n;
        worst = std::max(worst, sec);
        worst_nodes = std::max(worst_nodes, counters().search_nodes.load());
        worst_core = std::max(worst_core, counters().max_enumerated_core.load());
        ok = ok && res.isomorphic && is_graph_isomorphism(a.graph, h, res.witness) && sec < kLargeSeconds &&
             counters().oracle_calls == 0 && counters().max_enumerated_core <= kBound && counters().search_nodes <= n * n;
    }
    r.seconds = since(t0);
    r.pass = ok;
    std::ostringstream o;
    o << kLargeCopies << " instances, slowest " << worst << " s (< " << kLargeSeconds << "), oracle calls 0 required, largest enumerated core "
      << worst_core << " (<= " << kBound << "), search nodes " << worst_nodes << " (<= n^2)";
    r.detail = o.str();
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------------------------

std::vector<std::pair<Word, Word>> admissible_pairs(const Structure& s, const Metaedge& me) {
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

std::set<Word> slot_order_words(const Structure& s, const SlotOrder& so) {
    std::vector<std::vector<std::pair<Word, Word>>> options;
    for (const Metaedge& k : so.classes) options.push_back(admissible_pairs(s, k));
    std::set<Word> out;
    for_each_product(options, 1L << 40, [&](const std::vector<const std::pair<Word, Word>*>& pick) {
        for (int m = 0; m < 2; ++m) {
            Word w;
            for (auto [c, j] : so.pi[m]) {
                const Word& part = j == 0 ? pick[c]->first : pick[c]->second;
                w.insert(w.end(), part.begin(), part.end());
            }
            out.insert(canonical(w));
        }
    });
    return out;
}

std::set<Word> extended_words(const Structure& s, const TNMTree& t, int module) {
    const TModule& mod = t.modules[module];
    std::set<Word> out;
    for (const Word& base : slot_order_words(s, mod.so)) {
        std::vector<Word> level{base};
        for (int nd : mod.nodes) {
            std::vector<Word> next;
            for (const Word& w : level)
                for (size_t p = 0; p <= w.size(); ++p) {
                    Word x = w;
                    x.insert(x.begin() + static_cast<long>(p), Letter{nd, 2});
                    next.push_back(std::move(x));
                }
            level = std::move(next);
        }
        for (const Word& w : level)
            for (int m = 0; m < 2; ++m)
                if (is_extended_admissible(w, s, t, module, m)) out.insert(canonical(w));
    }
    return out;
}

std::optional<std::set<Word>> structural_models(const Structure& s, long limit) {
    std::set<Word> out;
    if (s.n == 0) return out;
    MDTree md = md_tree(s.ov, full(s.n));
    switch (md.root().kind) {
    case ModKind::Leaf: {
        out.insert(Word{{0, 0}, {0, 1}});
        return out;
    }
    case ModKind::Prime: return slot_order_words(s, slot_order(s, full(s.n), kBound));
    case ModKind::Serial: {
        auto children = serial_children(s, md, 0);
        std::vector<std::vector<std::pair<Word, Word>>> options;
        for (const Metaedge& me : children) options.push_back(admissible_pairs(s, me));
        bool fits = for_each_product(options, limit, [&](const std::vector<const std::pair<Word, Word>*>& pick) {
            std::vector<SerialChild> kids;
            for (size_t i = 0; i < children.size(); ++i) kids.push_back({children[i], *pick[i]});
            for (const Word& w : serial_words(kids)) out.insert(canonical(w));
        });
        if (!fits) return std::nullopt;
        return out;
    }
    case ModKind::Parallel: break;
    }
    TNMTree t = build_tnm(s, true, kBound);
    std::vector<std::vector<Word>> words;
    for (int a = 0; a < static_cast<int>(t.modules.size()); ++a) {
        auto ws = extended_words(s, t, a);
        words.emplace_back(ws.begin(), ws.end());
    }
    std::vector<std::vector<std::vector<int>>> orders;
    for (const TNode& nd : t.nodes) orders.push_back(circular_orders(nd.modules));
    int root = -1;
    for (int a = 0; a < static_cast<int>(t.modules.size()) && root < 0; ++a)
        if (t.modules[a].nodes.size() == 1) root = a;
    if (root < 0) fail(Errc::Internal, "T_NM tree without a leaf module");
    std::vector<Word> chosen(words.size());
    std::vector<std::vector<int>> chosen_orders(orders.size());
    bool fits = for_each_product(words, limit, [&](const std::vector<const Word*>& pick) {
        for (size_t i = 0; i < pick.size(); ++i) chosen[i] = *pick[i];
        for_each_product(orders, limit, [&](const std::vector<const std::vector<int>*>& opick) {
            for (size_t j = 0; j < opick.size(); ++j) chosen_orders[j] = *opick[j];
            out.insert(canonical(compose_full(t, root, chosen, chosen_orders)));
        });
    });
    if (!fits) return std::nullopt;
    return out;
}

std::set<ChordWord> unoriented_models(const Graph& g) {
    Structure s = build_matrix(g);
    std::set<ChordWord> out;
    for (const Word& w : enumerate_conformal(s, full(g.n))) {
        ChordWord c;
        for (const Letter& l : w) c.push_back(l.v);
        out.insert(canonical_chord(c));
    }
    return out;
}

std::optional<OverlapTwins> find_overlap_twins(int max_n) {
    for (int n = 3; n <= max_n; ++n) {
        std::vector<int> w(2 * n, -1);
        std::optional<OverlapTwins> found;
        // Every chord diagram (first free position paired with each later one), every orientation.
        std::function<void(int)> rec = [&](int next) {
            if (found) return;
            int p = 0;
            while (p < 2 * n && w[p] >= 0) ++p;
            if (p < 2 * n) {
                w[p] = next;
                for (int q = p + 1; q < 2 * n && !found; ++q)
                    if (w[q] < 0) {
                        w[q] = next;
                        rec(next + 1);
                        w[q] = -1;
                    }
                w[p] = -1;
                return;
            }
            std::map<std::vector<Bits>, Graph> graphs;
            for (int mask = 0; mask < (1 << n); ++mask) {
                Word phi;
                std::vector<int> seen(n, 0);
                for (int x : w) phi.push_back({x, seen[x]++ ^ ((mask >> x) & 1)});
                Graph g = arc_graph(bend(phi));
                if (has_twins(g) || has_universal(g) || !is_connected(g)) continue;
                if (!is_conformal(phi, build_matrix(g))) continue;
                graphs.emplace(g.adj, g);
            }
            std::vector<Graph> gs;
            for (auto& [key, g] : graphs) gs.push_back(g);
            for (size_t i = 0; i < gs.size() && !found; ++i)
                for (size_t j = i + 1; j < gs.size() && !found; ++j) {
                    if (sorted_degrees(gs[i]) != sorted_degrees(gs[j]) || brute_iso(gs[i], gs[j])) continue;
                    if (unoriented_models(gs[i]) == unoriented_models(gs[j])) found = OverlapTwins{gs[i], gs[j]};
                }
        };
        rec(0);
        if (found) return found;
    }
    return std::nullopt;
}

std::string format(const CriterionResult& r) {
    char head[96];
    std::snprintf(head, sizeof head, "%s criterion %d (%s, %.2f s): ", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds);
    return head + r.detail;
}

std::vector<CriterionResult> run(const Options& opt) {
    std::vector<CriterionResult> out;
    auto emit = [&](CriterionResult r) {
        if (opt.on_result) opt.on_result(r);
        out.push_back(std::move(r));
    };
    auto guarded = [&](int id, const char* title, auto body) {
        try {
            emit(body());
        } catch (const std::exception& e) {
            emit({id, title, false, std::string("exception: ") + e.what(), 0});
        }
    };
    std::vector<Instance> normalized;
    guarded(1, "normalization soundness", [&] { return normalization(opt.max_n, normalized); });
    guarded(2, "straighten/bend bijection", [&] { return straighten_bend(normalized); });
    guarded(3, "prime cores have exactly two models", [&] { return prime_cores(); });
    guarded(4, "chord-model composition completeness", [&] { return circle_completeness(); });
    std::vector<EquivalenceSample> smp;
    auto t0 = Clock::now();
    try {
        smp = equivalence_samples(opt.max_n);
    } catch (const std::exception&) {
    }
    double prep = since(t0);
    guarded(5, "oracle models equal admissible/composed models", [&] {
        auto r = equivalence(smp);
        r.seconds += prep;
        return r;
    });
    guarded(6, "metaedge/slot/pattern invariance", [&] { return invariance(smp); });
    guarded(7, "isomorphism agrees with brute force", [&] { return isomorphism_agreement(opt.max_n); });
    guarded(8, "equal overlap graphs, different graphs", [&] { return counterexample(); });
    guarded(9, "n=200 permuted copies", [&] { return large_copies(); });
    return out;
}

}  // namespace circa::acceptance
