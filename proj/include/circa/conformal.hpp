#pragma once

#include "circa/modular.hpp"
#include "circa/split.hpp"
#include "circa/word.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace circa {

/// (M^0, M^1, <_M): orient[i] == 0 iff verts[i]^0 lies in M^0; lt orients the non-crossing pairs.
struct Metaedge {
    std::vector<int> verts;
    std::vector<int> orient;
    Orientation lt;
    int rep = -1;

    int index(int v) const { return lt.index(v); }
    /// The letter of v lying in M^j.
    Letter letter(int v, int j) const { return {v, orient[index(v)] ^ j}; }
    /// Which half (0 or 1) a letter of a member belongs to.
    int half(const Letter& l) const { return l.e ^ orient[index(l.v)]; }
    bool operator==(const Metaedge&) const = default;
};

/// Orders a non-crossing pair with known orientations: true iff u precedes v in M^0.
bool metaedge_precedes(const Structure& s, int u, int ou, int v, int ov);

/// Metaedge of a proper module by breadth-first search over (M, ||) from r (least id by default).
Metaedge metaedge(const Structure& s, const Bits& m, int r = -1);
/// Metaedge with orientations given; <_M derived pairwise.
Metaedge metaedge_with_orientation(const Structure& s, const std::vector<int>& verts, const std::vector<int>& orient, int rep);
/// The same triple read off a model: runs of M in phi restricted to `context`; nullopt unless exactly two runs.
std::optional<Metaedge> metaedge_from_model(const Word& phi, const Structure& s, const Bits& m, int r, const Bits& context);

bool is_admissible(const Word& tau0, const Word& tau1, const Structure& s, const Metaedge& me);
/// One admissible model, built from <_M and a transitive orientation of (M, ~).
std::pair<Word, Word> canonical_admissible(const Structure& s, const Metaedge& me);
/// A transitive orientation of (M, ~) composed over its modular decomposition.
Orientation transitive_orientation(const Graph& g, const Bits& m);

/// Oriented-chord backtracking: places chords one at a time into gaps, pruned by crossings and sides.
/// Points are extra positions that must remain available: bit c set iff the point lies left of chord c.
struct SearchSpec {
    const Structure* s = nullptr;
    std::vector<int> chords;
    std::vector<Bits> points;
    std::vector<int> point_anchors;  // optional: chord the point must be adjacent to (its side is then free), or -1
    bool all = false;
};
std::vector<Word> conformal_search(const SearchSpec& spec);

/// The two conformal models of a prime (U, ~), first = lexicographically least canonical form.
/// Cores up to `bound` are enumerated exhaustively and checked to have exactly two models.
std::pair<Word, Word> prime_conformal_pair(const Structure& s, const Bits& u, int bound = 9);

struct SerialChild {
    Metaedge me;
    std::pair<Word, Word> model;  // admissible pair
};
/// Words mu_{i1}..mu_{ik} mu'_{i1}..mu'_{ik} over every order and every swap, canonical and deduplicated.
std::vector<Word> serial_words(const std::vector<SerialChild>& children);
/// Recognises the serial form with per-child admissible (possibly swapped) pairs.
bool is_serial_model(const Word& phi, const Structure& s, const std::vector<Metaedge>& children);
/// Metaedges of the children of a serial module (node of t).
std::vector<Metaedge> serial_children(const Structure& s, const MDTree& t, int node);

struct Probe {
    int y = -1, x = -1;
    Bits X, alphaX;
};
bool is_probe(const Graph& g, const Bits& u, const Probe& p);
std::optional<Probe> find_probe(const Graph& g, const Bits& u, const Bits& X, const Bits& alphaX);

struct SlotOrder {
    std::vector<Metaedge> classes;       // consistent submodules, ordered by least member
    std::vector<int> class_of;           // vertex -> class, -1 outside M
    std::vector<int> skeleton;           // s_i = least member of class i
    std::vector<std::pair<int, int>> pi[2];  // circular sequences of slots (class, j)

    std::pair<int, int> slot_of(const Letter& l) const {
        const Metaedge& me = classes[class_of[l.v]];
        return {class_of[l.v], me.half(l)};
    }
};

/// Consistent decomposition of an improper prime module M: classes as sorted vertex lists.
std::vector<std::vector<int>> consistent_decomposition(const Structure& s, const Bits& m);
SlotOrder slot_order(const Structure& s, const Bits& m, int bound = 9);
/// Slot sequence of a word over M* (runs of slots), nullopt unless every slot is one run.
std::optional<std::vector<std::pair<int, int>>> slot_sequence(const Word& w, const SlotOrder& so);
bool same_circular(const std::vector<std::pair<int, int>>& a, const std::vector<std::pair<int, int>>& b);
bool is_admissible_for_slot_order(const Word& w, const Structure& s, const SlotOrder& so, int m);
/// The admissible model for pi_m built from canonical admissible pairs.
Word slot_model(const Structure& s, const SlotOrder& so, int m);

}  // namespace circa
