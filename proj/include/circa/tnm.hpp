#pragma once

#include "circa/conformal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace circa {

/// Ordered partition of a slot interleaved with T_NM nodes: parts[0] nodes[0] parts[1] ... parts[l-1].
struct Pattern {
    std::vector<std::vector<Letter>> parts;  // each part sorted
    std::vector<int> nodes;
    bool operator==(const Pattern&) const = default;
};

/// Patterns of every slot of pi_m(M) (indexed 2 * class + j) and the node, if any, after each slot of pi_m.
struct SlotPatterns {
    std::vector<Pattern> slot;
    std::vector<int> gap;  // gap[k]: node between pi_m[k] and pi_m[k + 1], or -1
    bool operator==(const SlotPatterns&) const = default;

    const Pattern& of(std::pair<int, int> sl) const { return slot[2 * sl.first + sl.second]; }
};

struct TModule {
    Bits set;
    ModKind kind = ModKind::Leaf;  // of (M, ~): Leaf, Serial or Prime
    std::vector<int> nodes;        // neighbouring nodes in T_NM
    SlotOrder so;
    SlotPatterns pat[2];

    int least() const { return static_cast<int>(set.find_first()); }
};

struct TNode {
    std::vector<int> modules;  // sorted by least vertex; also the node's name
};

/// The bipartite module/node tree of a structure with disconnected overlap graph.
struct TNMTree {
    std::vector<TModule> modules;
    std::vector<TNode> nodes;
    std::vector<int> module_of;  // vertex -> module

    std::string node_name(int node) const;
};

/// v separates the vertex sets a and b: they lie on opposite sides of v.
bool separates(const Structure& s, int v, const Bits& a, const Bits& b);

/// Modules, nodes and their tree; with `slots` also slot orders and patterns of every module.
TNMTree build_tnm(const Structure& s, bool slots = true, int bound = 9);

/// Vertices of the modules in the component of `keep` after deleting `del` (module_del says which kind del is).
Bits subtree_vertices(const TNMTree& t, bool module_del, int del, int keep);

/// V_{T\M}(N) lies on the left side of v (v in M, N a neighbour of M).
bool node_left_of(const Structure& s, const TNMTree& t, int module, int node, int v);

/// Slot order of a serial or single-vertex module from its consistent decomposition and the node sides.
SlotOrder serial_slot_order(const Structure& s, const TNMTree& t, int module, int bound = 9);
/// Consistent decomposition of a serial module: children with nodes inside form their own class,
/// the rest are grouped by the unordered pair of outside side sets.
std::vector<std::vector<int>> serial_decomposition(const Structure& s, const TNMTree& t, int module);
/// Nodes inside a metaedge (neither consistently left nor consistently right of it).
std::vector<int> inside_nodes(const Structure& s, const TNMTree& t, int module, const Metaedge& me);

/// Places every neighbouring node into a slot pattern or a gap of pi_m(M).
SlotPatterns module_patterns(const Structure& s, const TNMTree& t, int module, int m);

/// phi restricted to M with every V_{T\M}(N) collapsed to the node letter {N, 2}; nullopt if a subtree is not contiguous.
std::optional<Word> restrict_to_module(const Word& phi, const TNMTree& t, int module);
/// phi collapsed around a node: circular order of its modules; nullopt if a branch is not contiguous.
std::optional<std::vector<int>> restrict_to_node(const Word& phi, const TNMTree& t, int node);

/// Patterns read from a word over M* and node letters; nullopt unless it parses into the slots of pi_m.
std::optional<SlotPatterns> patterns_of_word(const Word& w, const TNMTree& t, int module, int m);
bool is_extended_admissible(const Word& w, const Structure& s, const TNMTree& t, int module, int m);

/// Builds a conformal model from one extended admissible word per module and one circular order per node.
Word compose_full(const TNMTree& t, int root, const std::vector<Word>& module_words, const std::vector<std::vector<int>>& node_orders);

/// Graphviz rendering of the tree.
std::string tnm_dot(const TNMTree& t, const Graph& g);

}  // namespace circa
