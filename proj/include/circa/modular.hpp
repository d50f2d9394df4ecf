#pragma once

#include "circa/graph.hpp"

#include <string>
#include <vector>

namespace circa {

enum class ModKind { Leaf, Serial, Parallel, Prime };

const char* kind_name(ModKind k);

struct MDNode {
    Bits set;
    ModKind kind = ModKind::Leaf;
    int parent = -1;
    std::vector<int> children;  // ordered by least member
    int least() const { return static_cast<int>(set.find_first()); }
};

/// Modular decomposition of (domain, adj). Node 0 is the root.
struct MDTree {
    std::vector<MDNode> nodes;
    std::vector<int> leaf_of;  // vertex -> node index, -1 outside the domain
    const MDNode& root() const { return nodes[0]; }
    int height(int node) const;
    /// Node indices bottom-up (children before parents).
    std::vector<int> postorder() const;
};

MDTree md_tree(const Graph& g, const Bits& domain);
bool is_module(const Graph& g, const Bits& domain, const Bits& m);

/// Orientation of some edges of a relation over `verts`: before(i, j) means verts[i] -> verts[j].
struct Orientation {
    std::vector<int> verts;
    std::vector<char> rel;
    Orientation() = default;
    explicit Orientation(std::vector<int> vs) : verts(std::move(vs)), rel(verts.size() * verts.size(), 0) {}
    int size() const { return static_cast<int>(verts.size()); }
    bool before(int i, int j) const { return rel[static_cast<size_t>(i) * verts.size() + j]; }
    void set(int i, int j) { rel[static_cast<size_t>(i) * verts.size() + j] = 1; }
    int index(int v) const;
    Orientation reversed() const;
    bool operator==(const Orientation&) const = default;
};

bool is_transitive(const Orientation& o);

/// The two transitive orientations of a prime quotient (one vertex per child of `node`),
/// first one seeded by the least edge oriented from its smaller endpoint. Throws NotComparability.
std::pair<Orientation, Orientation> prime_orientations(const Graph& g, const MDTree& t, int node);
std::pair<Orientation, Orientation> prime_orientations(const Graph& g, const std::vector<int>& verts);

struct PermutationModel {
    std::vector<int> tau0, tau1;
};

/// tau0 sorts by (prec union lt), tau1 by (prec union reverse lt). Throws Internal when cyclic.
PermutationModel perm_model_from_orients(const Orientation& lt, const Orientation& prec);
/// (lt, prec) with lt on pairs in different relative order and prec on pairs in the same order.
std::pair<Orientation, Orientation> orients_from_perm_model(const PermutationModel& pm);

void write_md_text(std::ostream& out, const MDTree& t, const Graph& g);
void write_md_dot(std::ostream& out, const MDTree& t, const Graph& g);

}  // namespace circa
