#pragma once

#include "circa/word.hpp"

#include <optional>
#include <vector>

namespace circa {

/// Split (A, alpha(A), B, alpha(B)) of a connected graph; all four sets partition V.
struct Split {
    Bits A, alphaA, B, alphaB;
    bool trivial() const { return (A | alphaA).count() < 2 || (B | alphaB).count() < 2; }
};

bool is_split(const Graph& g, const Split& s);
/// No component C of alpha(A) (resp. alpha(B)) whose vertices are each complete or anticomplete to A (resp. B).
bool is_maximal_split(const Graph& g, const Split& s);

/// Split with the given vertex sides (A and B derived); nullopt when the bipartition is not a split.
std::optional<Split> split_from_sides(const Graph& g, const Bits& side1);
/// Some non-trivial split, or nullopt when none exists (exact).
std::optional<Split> find_split(const Graph& g);
std::optional<int> articulation(const Graph& g);
/// Maximal split grown from a non-trivial one; trivial at an articulation when no non-trivial split
/// exists; nullopt for split-prime 2-connected graphs. Throws Disconnected.
std::optional<Split> maximal_split(const Graph& g);

struct SplitComponents {
    bool trivial = false;
    int a = -1;  // the articulation for trivial splits
    std::vector<Bits> C, alpha;
};

SplitComponents split_components(const Graph& g, const Split& s);

/// Theorem-4.2/4.3 composition of per-component halves (tau_i, tau'_i).
ChordWord compose(const std::vector<std::pair<ChordWord, ChordWord>>& parts, const std::vector<int>& order,
                  const std::vector<bool>& swaps, int articulation = -1);

bool is_chord_model(const Graph& g, const ChordWord& w);
/// One chord model of a connected circle graph; throws NotCircle.
ChordWord chord_model(const Graph& g);
/// Every chord model up to rotation, canonical and sorted, via recursive composition.
std::vector<ChordWord> all_chord_models(const Graph& g);

}  // namespace circa
