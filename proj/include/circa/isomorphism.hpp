#pragma once

#include "circa/tnm.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace circa {

/// Maximum matching of a bipartite graph; match[i] is the right partner of left vertex i or -1.
std::vector<int> bipartite_matching(int left, int right, const std::vector<std::pair<int, int>>& edges);
/// Perfect matching or nullopt.
std::optional<std::vector<int>> perfect_matching(int left, int right, const std::vector<std::pair<int, int>>& edges);

/// An extended metaedge (K', K'', <', p(K'), p(K'')) of a consistent class, read with K' as its first half,
/// together with the modular decomposition of (K, ~) and the data the local isomorphism test needs.
struct LocalView {
    std::vector<int> verts;                // as in the metaedge
    std::vector<int> orient;               // 0: oriented from K' to K''
    Orientation lt;                        // <' on the non-crossing pairs
    std::vector<std::array<int, 2>> pos;   // part indices in p(K') and p(K'')
    std::vector<int> mult;
    std::vector<int> nodes[2];             // nodes inside p(K') and p(K'') in pattern order
    MDTree md;                             // of (K, ~)
    std::vector<int> height;               // per md node
    /// Per md node: children in a fixed order (parallel: by <'; prime: one list per admissible orientation).
    std::vector<std::vector<std::vector<int>>> orders;
    /// Per md node of serial kind: height of every child in the weak order.
    std::vector<std::vector<int>> wo_height;
};

/// Builds the view of class c of a slot order with `first` as the first half; patterns may be trivial.
LocalView local_view(const Structure& s, const std::vector<int>& mult, const Metaedge& me, int first, const Pattern& p_first,
                     const Pattern& p_second);

/// Bijection verts(a) -> verts(b) satisfying the local isomorphism conditions, or nullopt.
std::optional<std::map<int, int>> locally_isomorphic(const LocalView& a, const LocalView& b);

/// Admissible transitive orientations of a prime node of (K, ~) as child orders (at most two).
std::vector<std::vector<int>> admissible_orders(const Structure& s, const LocalView& v, int md_node);

/// A slot order with the patterns of pi_m and the views of every class read from either half.
struct SlotSide {
    const Structure* s = nullptr;
    const SlotOrder* so = nullptr;
    SlotPatterns pat[2];
    std::vector<std::array<LocalView, 2>> views[2];  // views[m][class][first half]
};

SlotSide slot_side(const Structure& s, const std::vector<int>& mult, const SlotOrder& so, const SlotPatterns* pats);
/// Patterns of pi_m with one part per slot and empty gaps.
SlotPatterns trivial_patterns(const SlotOrder& so, int m);

struct PinnedWitness {
    std::map<int, int> vertex;  // M -> N
    std::map<int, int> node;    // N_T(M) -> N_T(N)
};

/// pi_ma of a pinned at slot index k versus pi_mb of b pinned at slot index l.
std::optional<PinnedWitness> pinned_slot_iso(const SlotSide& a, int ma, int k, const SlotSide& b, int mb, int l);

struct IsoOptions {
    bool paranoid = false;  // parallel case: try every leaf of T_G as the root and require equal verdicts
    int bound = 9;          // exhaustive certification bound for prime cores
};

struct IsoResult {
    bool isomorphic = false;
    std::vector<int> witness;  // vertex of g -> vertex of h
    std::string reason;        // which case decided, or why not
};

/// Isomorphism of circular-arc graphs with multiplicities (no twins, no universal vertices).
IsoResult isomorphic(const MultiGraph& g, const MultiGraph& h, const IsoOptions& opt = {});
/// Full pipeline: strip universal vertices, quotient twins, decide, and lift the witness.
IsoResult isomorphic(const Graph& g, const Graph& h, const IsoOptions& opt = {});

/// Left/right sets and multiplicities preserved in both directions.
bool preserves_sides(const MultiGraph& g, const MultiGraph& h, const std::vector<int>& alpha);
/// Plain graph isomorphism check of a vertex map.
bool is_graph_isomorphism(const Graph& g, const Graph& h, const std::vector<int>& alpha);

}  // namespace circa
