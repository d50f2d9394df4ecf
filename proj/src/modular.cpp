#include "circa/modular.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <set>

namespace circa {

const char* kind_name(ModKind k) {
    switch (k) {
        case ModKind::Leaf: return "leaf";
        case ModKind::Serial: return "serial";
        case ModKind::Parallel: return "parallel";
        case ModKind::Prime: return "prime";
    }
    return "?";
}

int MDTree::height(int node) const {
    int h = 0;
    for (int c : nodes[node].children) h = std::max(h, height(c) + 1);
    return h;
}

std::vector<int> MDTree::postorder() const {
    std::vector<int> out;
    std::function<void(int)> rec = [&](int x) {
        for (int c : nodes[x].children) rec(c);
        out.push_back(x);
    };
    if (!nodes.empty()) rec(0);
    return out;
}

bool is_module(const Graph& g, const Bits& domain, const Bits& m) {
    for (int x : to_list(domain - m)) {
        Bits hit = g.adj[x] & m;
        if (hit.any() && hit != m) return false;
    }
    return true;
}

namespace {

/// Least module of (domain, adj) containing `seed`.
Bits module_closure(const Graph& g, const Bits& domain, Bits m) {
    while (true) {
        Bits add(g.n);
        for (int x : to_list(domain - m)) {
            if (g.adj[x].intersects(m) && !m.is_subset_of(g.adj[x])) add.set(x);
        }
        if (add.none()) return m;
        m |= add;
    }
}

std::vector<Bits> co_components(const Graph& g, const Bits& s) {
    std::vector<Bits> out;
    Bits left = s;
    while (left.any()) {
        int start = static_cast<int>(left.find_first());
        Bits comp(g.n);
        std::vector<int> stack{start};
        comp.set(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            Bits nb = s - g.adj[v] - comp;
            nb.reset(v);
            for (int u : to_list(nb)) comp.set(u), stack.push_back(u);
        }
        out.push_back(comp);
        left -= comp;
    }
    return out;
}

int build(const Graph& g, MDTree& t, const Bits& s, int parent) {
    int id = static_cast<int>(t.nodes.size());
    t.nodes.push_back({s, ModKind::Leaf, parent, {}});
    if (s.count() == 1) {
        t.leaf_of[s.find_first()] = id;
        return id;
    }
    std::vector<Bits> parts;
    auto comps = components(g, s);
    if (comps.size() > 1) {
        t.nodes[id].kind = ModKind::Parallel;
        for (const auto& c : comps) parts.push_back(to_bits(g.n, c));
    } else if (auto co = co_components(g, s); co.size() > 1) {
        t.nodes[id].kind = ModKind::Serial;
        parts = co;
    } else {
        t.nodes[id].kind = ModKind::Prime;
        Bits left = s;
        while (left.any()) {
            int v = static_cast<int>(left.find_first());
            Bits cls(g.n);
            cls.set(v);
            for (int w : to_list(left)) {
                if (w == v || cls[w]) continue;
                Bits seed(g.n);
                seed.set(v);
                seed.set(w);
                Bits m = module_closure(g, s, seed);
                if (m != s) cls |= m;
            }
            parts.push_back(cls);
            left -= cls;
        }
    }
    std::sort(parts.begin(), parts.end(), [](const Bits& a, const Bits& b) { return a.find_first() < b.find_first(); });
    for (const Bits& p : parts) {
        int c = build(g, t, p, id);
        t.nodes[id].children.push_back(c);
    }
    return id;
}

}  // namespace

MDTree md_tree(const Graph& g, const Bits& domain) {
    if (domain.none()) fail(Errc::Malformed, "md_tree needs a nonempty domain");
    MDTree t;
    t.leaf_of.assign(g.n, -1);
    build(g, t, domain, -1);
    return t;
}

int Orientation::index(int v) const {
    auto it = std::find(verts.begin(), verts.end(), v);
    return it == verts.end() ? -1 : static_cast<int>(it - verts.begin());
}

Orientation Orientation::reversed() const {
    Orientation r(verts);
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j)
            if (before(i, j)) r.set(j, i);
    return r;
}

bool is_transitive(const Orientation& o) {
    int k = o.size();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            if (!o.before(a, b)) continue;
            if (o.before(b, a)) return false;
            for (int c = 0; c < k; ++c)
                if (o.before(b, c) && !o.before(a, c)) return false;
        }
    return true;
}

std::pair<Orientation, Orientation> prime_orientations(const Graph& g, const std::vector<int>& verts) {
    Orientation o(verts);
    int k = o.size();
    auto adj = [&](int i, int j) { return g.has_edge(verts[i], verts[j]); };
    std::vector<std::pair<int, int>> queue;
    auto orient = [&](int a, int b) {
        if (o.before(b, a)) fail(Errc::NotComparability, "edge forcing reached a contradiction");
        if (!o.before(a, b)) {
            o.set(a, b);
            queue.emplace_back(a, b);
        }
    };
    for (int a = 0; a < k && queue.empty(); ++a)
        for (int b = a + 1; b < k; ++b)
            if (adj(a, b)) {
                orient(a, b);
                break;
            }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [a, b] = queue[qi];
        for (int c = 0; c < k; ++c) {
            if (c != b && c != a && adj(a, c) && !adj(b, c)) orient(a, c);
            if (c != a && c != b && adj(c, b) && !adj(a, c)) orient(c, b);
        }
    }
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (adj(a, b) && !o.before(a, b) && !o.before(b, a))
                fail(Errc::NotComparability, "quotient is not prime: edge forcing left edges unoriented");
    if (!is_transitive(o)) fail(Errc::NotComparability, "forced orientation is not transitive");
    return {o, o.reversed()};
}

std::pair<Orientation, Orientation> prime_orientations(const Graph& g, const MDTree& t, int node) {
    if (t.nodes[node].kind != ModKind::Prime) fail(Errc::NotComparability, "prime_orientations on a non-prime node");
    std::vector<int> reps;
    for (int c : t.nodes[node].children) reps.push_back(t.nodes[c].least());
    return prime_orientations(g, reps);
}

PermutationModel perm_model_from_orients(const Orientation& lt, const Orientation& prec) {
    int k = lt.size();
    if (prec.verts != lt.verts) fail(Errc::Internal, "perm_model_from_orients: vertex lists differ");
    auto order = [&](bool flip) {
        std::vector<int> rank(k, 0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                if (i == j) continue;
                bool ij = prec.before(i, j) || (flip ? lt.before(j, i) : lt.before(i, j));
                bool ji = prec.before(j, i) || (flip ? lt.before(i, j) : lt.before(j, i));
                if (ij == ji) fail(Errc::Internal, "perm_model_from_orients: pair neither or doubly oriented");
                if (ji) rank[i]++;
            }
        std::vector<int> tau(k, -1);
        for (int i = 0; i < k; ++i) {
            if (tau[rank[i]] != -1) fail(Errc::Internal, "perm_model_from_orients: union is cyclic");
            tau[rank[i]] = lt.verts[i];
        }
        return tau;
    };
    return {order(false), order(true)};
}

std::pair<Orientation, Orientation> orients_from_perm_model(const PermutationModel& pm) {
    std::vector<int> verts = pm.tau0;
    std::sort(verts.begin(), verts.end());
    Orientation lt(verts), prec(verts);
    int k = static_cast<int>(verts.size());
    std::vector<int> p0(k), p1(k);
    for (int i = 0; i < k; ++i) {
        p0[lt.index(pm.tau0[i])] = i;
        p1[lt.index(pm.tau1[i])] = i;
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j || p0[i] > p0[j]) continue;
            (p1[i] < p1[j] ? prec : lt).set(i, j);
        }
    if (!is_transitive(lt) || !is_transitive(prec)) fail(Errc::Internal, "orients_from_perm_model: not transitive");
    return {lt, prec};
}

namespace {

std::string set_names(const Bits& s, const Graph& g) {
    std::string out;
    for (int v : to_list(s)) out += (out.empty() ? "" : " ") + g.name(v);
    return out;
}

}  // namespace

void write_md_text(std::ostream& out, const MDTree& t, const Graph& g) {
    std::function<void(int, int)> rec = [&](int x, int depth) {
        out << std::string(2 * depth, ' ') << kind_name(t.nodes[x].kind) << " {" << set_names(t.nodes[x].set, g) << "}\n";
        for (int c : t.nodes[x].children) rec(c, depth + 1);
    };
    rec(0, 0);
}

void write_md_dot(std::ostream& out, const MDTree& t, const Graph& g) {
    out << "digraph mdtree {\n";
    for (size_t i = 0; i < t.nodes.size(); ++i)
        out << "  n" << i << " [label=\"" << kind_name(t.nodes[i].kind) << "\\n" << set_names(t.nodes[i].set, g) << "\"];\n";
    for (size_t i = 0; i < t.nodes.size(); ++i)
        for (int c : t.nodes[i].children) out << "  n" << i << " -> n" << c << ";\n";
    out << "}\n";
}

}  // namespace circa
