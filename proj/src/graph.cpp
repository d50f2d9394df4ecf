#include "circa/graph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace circa {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::InvalidVertex: return "InvalidVertex";
    case Errc::TwinsPresent: return "TwinsPresent";
    case Errc::UniversalPresent: return "UniversalPresent";
    case Errc::NotAModel: return "NotAModel";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NotConformal: return "NotConformal";
    case Errc::NotCircle: return "NotCircle";
    case Errc::NoConformal: return "NoConformal";
    case Errc::NotCircularArc: return "NotCircularArc";
    case Errc::NotComparability: return "NotComparability";
    case Errc::NotProper: return "NotProper";
    case Errc::Disconnected: return "Disconnected";
    case Errc::Malformed: return "Malformed";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::Internal: return "Internal";
    }
    return "?";
}

void fail(Errc c, const std::string& what) { throw Error(c, std::string(errc_name(c)) + ": " + what); }

void Counters::reset() {
    oracle_calls = 0;
    search_calls = 0;
    search_nodes = 0;
    search_enumerations = 0;
    max_search_core = 0;
    max_enumerated_core = 0;
}

Counters& counters() {
    static Counters c;
    return c;
}

Graph::Graph(int n_) : n(n_), adj(n_, Bits(n_)) {}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n) fail(Errc::InvalidVertex, "vertex " + std::to_string(v) + " out of range");
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) fail(Errc::Malformed, "self-loop at " + std::to_string(u));
    adj[u].set(v);
    adj[v].set(u);
}

int Graph::edge_count() const {
    size_t s = 0;
    for (auto& row : adj) s += row.count();
    return static_cast<int>(s / 2);
}

std::string Graph::name(int v) const {
    if (v >= 0 && v < static_cast<int>(labels.size()) && !labels[v].empty()) return labels[v];
    return std::to_string(v);
}

Bits closed_neighborhood(const Graph& g, int v) {
    g.check_vertex(v);
    Bits b = g.adj[v];
    b.set(v);
    return b;
}

bool is_universal(const Graph& g, int v) { return g.degree(v) == g.n - 1; }

bool has_universal(const Graph& g) {
    for (int v = 0; v < g.n; ++v)
        if (is_universal(g, v)) return true;
    return false;
}

bool has_twins(const Graph& g) {
    std::vector<Bits> nb;
    for (int v = 0; v < g.n; ++v) nb.push_back(closed_neighborhood(g, v));
    std::sort(nb.begin(), nb.end());
    return std::adjacent_find(nb.begin(), nb.end()) != nb.end();
}

std::vector<std::vector<int>> components(const Graph& g, const Bits& domain_in) {
    Bits domain = domain_in.size() == 0 ? Bits(g.n).set() : domain_in;
    Bits seen(g.n);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.n; ++s) {
        if (!domain[s] || seen[s]) continue;
        std::vector<int> comp{s}, stack{s};
        seen.set(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            Bits nb = g.adj[v] & domain & ~seen;
            for (auto u = nb.find_first(); u != Bits::npos; u = nb.find_next(u)) {
                seen.set(u);
                comp.push_back(static_cast<int>(u));
                stack.push_back(static_cast<int>(u));
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_connected(const Graph& g) { return g.n <= 1 || components(g, Bits()).size() == 1; }

Graph induced(const Graph& g, const std::vector<int>& vs) {
    Graph h(static_cast<int>(vs.size()));
    h.labels.resize(vs.size());
    for (size_t i = 0; i < vs.size(); ++i) {
        h.labels[i] = g.name(vs[i]);
        for (size_t j = i + 1; j < vs.size(); ++j)
            if (g.has_edge(vs[i], vs[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
    return h;
}

Graph permuted(const Graph& g, const std::vector<int>& perm) {
    Graph h(g.n);
    h.labels.resize(g.n);
    for (int v = 0; v < g.n; ++v) {
        h.labels[perm[v]] = g.name(v);
        for (int u = v + 1; u < g.n; ++u)
            if (g.has_edge(u, v)) h.add_edge(perm[u], perm[v]);
    }
    return h;
}

Graph complement(const Graph& g) {
    Graph h(g.n);
    h.labels = g.labels;
    for (int v = 0; v < g.n; ++v) {
        h.adj[v] = ~g.adj[v];
        h.adj[v].reset(v);
    }
    return h;
}

StripResult strip_universal(const Graph& g, bool cascade) {
    StripResult r;
    r.graph = g;
    for (int v = 0; v < g.n; ++v) r.kept.push_back(v);
    while (true) {
        std::vector<int> keep;
        for (int v = 0; v < r.graph.n; ++v)
            if (!is_universal(r.graph, v)) keep.push_back(v);
        int removed = r.graph.n - static_cast<int>(keep.size());
        if (removed == 0) break;
        r.removed += removed;
        std::vector<int> kept;
        for (int v : keep) kept.push_back(r.kept[v]);
        r.graph = induced(r.graph, keep);
        r.kept = std::move(kept);
        if (!cascade) break;
    }
    return r;
}

std::pair<MultiGraph, TwinPartition> twin_quotient(const Graph& g) {
    TwinPartition tp;
    tp.class_of.assign(g.n, -1);
    std::map<Bits, int> by_nbhd;
    for (int v = 0; v < g.n; ++v) {
        auto [it, fresh] = by_nbhd.emplace(closed_neighborhood(g, v), static_cast<int>(tp.classes.size()));
        if (fresh) tp.classes.emplace_back();
        tp.classes[it->second].push_back(v);
        tp.class_of[v] = it->second;
    }
    std::vector<int> reps;
    MultiGraph mg;
    for (auto& c : tp.classes) {
        reps.push_back(c.front());
        mg.mult.push_back(static_cast<int>(c.size()));
    }
    mg.base = induced(g, reps);
    return {mg, tp};
}

MultiGraph reduce(const Graph& g) {
    auto s = strip_universal(g);
    auto q = twin_quotient(s.graph).first;
    return q;
}

Graph read_graph(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tok;
        if (ls >> tok) lines.push_back(line);
    }
    if (lines.empty()) fail(Errc::Malformed, "empty graph file");
    std::istringstream head(lines[0]);
    int n = -1, m = -1;
    if (!(head >> n >> m) || n < 0 || m < 0) fail(Errc::Malformed, "expected header 'n m'");
    if (static_cast<int>(lines.size()) - 1 != m)
        fail(Errc::Malformed, "expected " + std::to_string(m) + " edge lines, got " + std::to_string(lines.size() - 1));
    Graph g(n);
    g.labels.assign(n, "");
    std::map<std::string, int> ids;
    bool numeric = true;
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 1; i <= m; ++i) {
        std::istringstream ls(lines[i]);
        std::string a, b;
        if (!(ls >> a >> b)) fail(Errc::Malformed, "bad edge line: " + lines[i]);
        edges.emplace_back(a, b);
        for (auto& t : {a, b})
            if (t.find_first_not_of("0123456789") != std::string::npos) numeric = false;
    }
    auto id_of = [&](const std::string& t) {
        if (numeric) {
            int v = std::stoi(t);
            g.check_vertex(v);
            return v;
        }
        auto it = ids.find(t);
        if (it != ids.end()) return it->second;
        int v = static_cast<int>(ids.size());
        if (v >= n) fail(Errc::Malformed, "more than n distinct vertex names");
        ids[t] = v;
        g.labels[v] = t;
        return v;
    };
    for (auto& [a, b] : edges) {
        int u = id_of(a);
        int v = id_of(b);
        g.add_edge(u, v);
    }
    if (numeric) g.labels.clear();
    return g;
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.n << ' ' << g.edge_count() << '\n';
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.has_edge(u, v)) out << g.name(u) << ' ' << g.name(v) << '\n';
}

}  // namespace circa
