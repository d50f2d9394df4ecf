#pragma once

#include "circa/word.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace circa {

struct InstanceSeed {
    uint64_t seed = 1;
    int n = 6;
    double max_span = 0.5;  // arc length drawn uniformly from (0, max_span] of the circle
    bool reduced = true;    // drop universal vertices and twins (restricting the model accordingly)
};

struct Instance {
    Graph graph;
    ArcModel model;
};

Instance random_circular_arc(const InstanceSeed& seed);
ArcModel restrict_model(const ArcModel& psi, const std::vector<int>& keep);

/// All conformal words over domain* up to rotation, in canonical form, sorted.
std::vector<Word> enumerate_conformal(const Structure& s, const Bits& domain, int bound = 9);
/// Independent slower enumeration (chord diagrams x labelings x orientations), for cross-checks.
std::vector<Word> enumerate_conformal_slow(const Structure& s, const Bits& domain, int bound = 6);

/// All unoriented chord models of (domain, adj) up to rotation, canonical, sorted.
std::vector<ChordWord> enumerate_chord_models_brute(const Graph& g, const Bits& domain, int bound = 7);

std::optional<std::vector<int>> brute_iso(const MultiGraph& g, const MultiGraph& h);
std::optional<std::vector<int>> brute_iso(const Graph& g, const Graph& h);

}  // namespace circa
