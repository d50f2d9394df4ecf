#pragma once

#include "circa/tnm.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace circa::acceptance {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Options {
    int max_n = 10;  // caps the random instance sizes of criteria 1, 5, 6 and 7
    std::function<void(const CriterionResult&)> on_result;
};

std::vector<CriterionResult> run(const Options& opt);
std::string format(const CriterionResult& r);

/// Every admissible pair of a metaedge, by filtering all orders of both halves.
std::vector<std::pair<Word, Word>> admissible_pairs(const Structure& s, const Metaedge& me);
/// Every word admissible for pi_0 or pi_1 of a slot order, canonical.
std::set<Word> slot_order_words(const Structure& s, const SlotOrder& so);
/// Every extended admissible word of a T_NM module, canonical.
std::set<Word> extended_words(const Structure& s, const TNMTree& t, int module);
/// All conformal models assembled from the model-free structure (slot orders, serial
/// children or T_NM composition); nullopt when the product exceeds `limit`.
std::optional<std::set<Word>> structural_models(const Structure& s, long limit = 200000);

/// Unoriented chord models obtained by forgetting the orientation of every conformal model.
std::set<ChordWord> unoriented_models(const Graph& g);

struct OverlapTwins {
    Graph g, h;
};
/// Non-isomorphic graphs on n <= max_n vertices bent from one chord diagram, with equal degree
/// sequences and equal sets of unoriented conformal models.
std::optional<OverlapTwins> find_overlap_twins(int max_n = 7);

}  // namespace circa::acceptance
