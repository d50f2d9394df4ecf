#pragma once

#include "circa/intersection.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace circa {

/// v^e for e in {0,1}; e == 2 marks a placeholder letter (a T_NM node) carrying id v.
struct Letter {
    int v = 0;
    int e = 0;
    auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Unoriented chord model: every vertex occurs exactly twice.
using ChordWord = std::vector<int>;

Word canonical(const Word& w);
ChordWord canonical_chord(const ChordWord& w);
bool equivalent(const Word& a, const Word& b);
Word reflect(const Word& w);
Word rotate_to(const Word& w, size_t start);

Word restrict_word(const Word& w, const std::function<bool(const Letter&)>& keep);
Word restrict_vertices(const Word& w, const Bits& vs);
/// Maximal circularly-contiguous runs of kept letters.
std::vector<Word> restrict_segments(const Word& w, const std::function<bool(const Letter&)>& keep);

/// pos[v] = {index of v^0, index of v^1}, -1 when absent. Placeholder letters are ignored.
std::vector<std::array<int, 2>> positions(const Word& w, int n);

/// Strictly inside the clockwise stretch from index a to index b.
inline bool in_stretch(int a, int b, int p) { return a < b ? (a < p && p < b) : (p > a || p < b); }

bool chords_cross(const std::array<int, 2>& a, const std::array<int, 2>& b);

struct Violation {
    int v = -1, u = -1;
    std::string what;
};

/// Checks a word over domain* against ~ and the side sets; nullopt when conformal.
std::optional<Violation> conformal_violation(const Word& w, const Structure& s, const Bits& domain);
bool is_conformal(const Word& w, const Structure& s, const Bits& domain);
bool is_conformal(const Word& w, const Structure& s);

struct ArcModel {
    int size = 0;                              // number of endpoint slots on the circle
    std::vector<std::pair<int, int>> arcs;     // (start, end), clockwise
};

PairType geometric_relation(const ArcModel& psi, int v, int u);
Graph arc_graph(const ArcModel& psi);
void check_arc_model(const ArcModel& psi);
bool is_normalized(const ArcModel& psi, const IntersectionMatrix& m);
std::optional<Violation> normalization_violation(const ArcModel& psi, const IntersectionMatrix& m);

ArcModel normalize(const ArcModel& psi, const IntersectionMatrix& m);
Word straighten(const ArcModel& psi, const Structure& s);
ArcModel bend(const Word& w);
ArcModel bend(const Word& w, const Structure& s);

std::string letter_string(const Letter& l, const std::function<std::string(int)>& name);
std::string word_string(const Word& w, const std::function<std::string(int)>& name = nullptr);
Word parse_word(const std::string& text, const std::function<int(const std::string&)>& id_of);
ArcModel read_arc_model(std::istream& in, std::vector<std::string>* names = nullptr);
void write_arc_model(std::ostream& out, const ArcModel& psi, const std::function<std::string(int)>& name = nullptr);

}  // namespace circa
