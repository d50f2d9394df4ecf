#pragma once

#include "circa/common.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace circa {

struct Graph {
    int n = 0;
    std::vector<Bits> adj;
    std::vector<std::string> labels;

    Graph() = default;
    explicit Graph(int n);

    void add_edge(int u, int v);
    bool has_edge(int u, int v) const { return adj[u][v]; }
    int degree(int v) const { return static_cast<int>(adj[v].count()); }
    int edge_count() const;
    std::string name(int v) const;
    void check_vertex(int v) const;
};

struct MultiGraph {
    Graph base;
    std::vector<int> mult;
};

struct TwinPartition {
    std::vector<std::vector<int>> classes;  // each sorted, classes ordered by least member
    std::vector<int> class_of;
};

struct StripResult {
    Graph graph;
    int removed = 0;
    std::vector<int> kept;  // kept[i] = original id of new vertex i
};

Bits closed_neighborhood(const Graph& g, int v);
bool is_universal(const Graph& g, int v);
bool has_universal(const Graph& g);
bool has_twins(const Graph& g);
bool is_connected(const Graph& g);

Graph induced(const Graph& g, const std::vector<int>& vs);
Graph permuted(const Graph& g, const std::vector<int>& perm);  // vertex v of g becomes perm[v]
Graph complement(const Graph& g);

/// Deletes all universal vertices simultaneously; with `cascade`, repeats until none remain.
StripResult strip_universal(const Graph& g, bool cascade = false);

/// Quotient by the closed-neighbourhood twin relation; representative = least id.
std::pair<MultiGraph, TwinPartition> twin_quotient(const Graph& g);

/// Strip universal vertices, then quotient twins: the input normalisation for isomorphism.
MultiGraph reduce(const Graph& g);

/// Connected components of g restricted to `domain` (all vertices if empty), each sorted.
std::vector<std::vector<int>> components(const Graph& g, const Bits& domain);

Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace circa
