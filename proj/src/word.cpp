#include "circa/word.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace circa {

Word rotate_to(const Word& w, size_t start) {
    Word r;
    r.reserve(w.size());
    for (size_t i = 0; i < w.size(); ++i) r.push_back(w[(start + i) % w.size()]);
    return r;
}

namespace {

template <class T>
std::vector<T> least_rotation(const std::vector<T>& w) {
    size_t n = w.size();
    if (n == 0) return w;
    size_t best = 0;
    for (size_t s = 1; s < n; ++s) {
        for (size_t k = 0; k < n; ++k) {
            const T& a = w[(s + k) % n];
            const T& b = w[(best + k) % n];
            if (a < b) {
                best = s;
                break;
            }
            if (b < a) break;
        }
    }
    std::vector<T> out(w.begin() + best, w.end());
    out.insert(out.end(), w.begin(), w.begin() + best);
    return out;
}

}  // namespace

Word canonical(const Word& w) { return least_rotation(w); }

ChordWord canonical_chord(const ChordWord& w) { return least_rotation(w); }

bool equivalent(const Word& a, const Word& b) { return a.size() == b.size() && canonical(a) == canonical(b); }

Word reflect(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (auto& l : r)
        if (l.e < 2) l.e ^= 1;
    return r;
}

Word restrict_word(const Word& w, const std::function<bool(const Letter&)>& keep) {
    Word r;
    for (auto& l : w)
        if (keep(l)) r.push_back(l);
    return r;
}

Word restrict_vertices(const Word& w, const Bits& vs) {
    return restrict_word(w, [&](const Letter& l) { return l.e < 2 && l.v < static_cast<int>(vs.size()) && vs[l.v]; });
}

std::vector<Word> restrict_segments(const Word& w, const std::function<bool(const Letter&)>& keep) {
    size_t n = w.size();
    std::vector<Word> out;
    size_t start = n;
    for (size_t i = 0; i < n; ++i)
        if (!keep(w[i])) {
            start = i;
            break;
        }
    if (start == n) {
        if (n) out.push_back(w);
        return out;
    }
    Word cur;
    for (size_t k = 1; k <= n; ++k) {
        const Letter& l = w[(start + k) % n];
        if (keep(l)) {
            cur.push_back(l);
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    return out;
}

std::vector<std::array<int, 2>> positions(const Word& w, int n) {
    std::vector<std::array<int, 2>> pos(n, {-1, -1});
    for (size_t i = 0; i < w.size(); ++i) {
        const Letter& l = w[i];
        if (l.e > 1) continue;
        if (l.v < 0 || l.v >= n) fail(Errc::Malformed, "letter vertex out of range");
        if (pos[l.v][l.e] != -1) fail(Errc::Malformed, "repeated letter in word");
        pos[l.v][l.e] = static_cast<int>(i);
    }
    return pos;
}

bool chords_cross(const std::array<int, 2>& a, const std::array<int, 2>& b) {
    return in_stretch(a[0], a[1], b[0]) != in_stretch(a[0], a[1], b[1]);
}

std::optional<Violation> conformal_violation(const Word& w, const Structure& s, const Bits& domain) {
    auto pos = positions(w, s.n);
    std::vector<int> dom = to_list(domain);
    size_t letters = 0;
    for (auto& l : w)
        if (l.e < 2) ++letters;
    for (int v = 0; v < s.n; ++v) {
        bool present = pos[v][0] != -1 || pos[v][1] != -1;
        if (domain[v] && (pos[v][0] == -1 || pos[v][1] == -1))
            fail(Errc::Malformed, "word lacks a letter of vertex " + std::to_string(v));
        if (!domain[v] && present) fail(Errc::Malformed, "word has a letter outside the domain");
    }
    if (letters != 2 * dom.size()) fail(Errc::Malformed, "word length mismatch");
    for (size_t i = 0; i < dom.size(); ++i)
        for (size_t j = 0; j < dom.size(); ++j) {
            if (i == j) continue;
            int v = dom[i], u = dom[j];
            bool cross = chords_cross(pos[v], pos[u]);
            if (cross != s.crosses(u, v)) return Violation{v, u, cross ? "chords cross but u || v" : "chords disjoint but u ~ v"};
            if (cross) continue;
            bool geo_left = in_stretch(pos[v][0], pos[v][1], pos[u][0]);
            if (geo_left != s.left_of(v, u))
                return Violation{v, u, geo_left ? "u drawn left of v but u in right(v)" : "u drawn right of v but u in left(v)"};
        }
    return std::nullopt;
}

bool is_conformal(const Word& w, const Structure& s, const Bits& domain) { return !conformal_violation(w, s, domain); }

bool is_conformal(const Word& w, const Structure& s) { return is_conformal(w, s, Bits(s.n).set()); }

namespace {

bool on_arc(const ArcModel& psi, int v, int p) {
    auto [a, b] = psi.arcs[v];
    return a < b ? (a < p && p < b) : (p > a || p < b);
}

// Endpoint sequence around the circle: (vertex, 0 = start / 1 = end).
using Seq = std::vector<std::pair<int, int>>;

Seq to_seq(const ArcModel& psi) {
    Seq seq(psi.size, {-1, -1});
    for (size_t v = 0; v < psi.arcs.size(); ++v) {
        seq[psi.arcs[v].first] = {static_cast<int>(v), 0};
        seq[psi.arcs[v].second] = {static_cast<int>(v), 1};
    }
    return seq;
}

ArcModel from_seq(const Seq& seq, int n) {
    ArcModel psi;
    psi.size = static_cast<int>(seq.size());
    psi.arcs.assign(n, {-1, -1});
    for (size_t i = 0; i < seq.size(); ++i) {
        auto [v, e] = seq[i];
        (e == 0 ? psi.arcs[v].first : psi.arcs[v].second) = static_cast<int>(i);
    }
    return psi;
}

int index_of(const Seq& seq, int v, int e) {
    for (size_t i = 0; i < seq.size(); ++i)
        if (seq[i].first == v && seq[i].second == e) return static_cast<int>(i);
    return -1;
}

// Moves endpoint (v,e) so that it sits immediately after (or before) endpoint (u,f).
void move_next_to(Seq& seq, int v, int e, int u, int f, bool after) {
    int i = index_of(seq, v, e);
    auto item = seq[i];
    seq.erase(seq.begin() + i);
    int j = index_of(seq, u, f);
    seq.insert(seq.begin() + (after ? j + 1 : j), item);
}

bool intersects(PairType t) { return t != PairType::DI; }

}  // namespace

PairType geometric_relation(const ArcModel& psi, int v, int u) {
    int in_v = on_arc(psi, v, psi.arcs[u].first) + on_arc(psi, v, psi.arcs[u].second);
    int in_u = on_arc(psi, u, psi.arcs[v].first) + on_arc(psi, u, psi.arcs[v].second);
    if (in_v == 0 && in_u == 0) return PairType::DI;
    if (in_v == 2 && in_u == 2) return PairType::CC;
    if (in_v == 2) return PairType::CS;
    if (in_u == 2) return PairType::CD;
    return PairType::OV;
}

void check_arc_model(const ArcModel& psi) {
    int n = static_cast<int>(psi.arcs.size());
    if (psi.size != 2 * n) fail(Errc::Malformed, "circle must have exactly 2n endpoint slots");
    std::vector<int> seen(psi.size, 0);
    for (auto [a, b] : psi.arcs) {
        if (a < 0 || b < 0 || a >= psi.size || b >= psi.size || a == b) fail(Errc::Malformed, "bad arc endpoints");
        if (seen[a]++ || seen[b]++) fail(Errc::Malformed, "endpoints must be distinct");
    }
}

Graph arc_graph(const ArcModel& psi) {
    int n = static_cast<int>(psi.arcs.size());
    Graph g(n);
    for (int v = 0; v < n; ++v)
        for (int u = v + 1; u < n; ++u)
            if (geometric_relation(psi, v, u) != PairType::DI) g.add_edge(v, u);
    return g;
}

std::optional<Violation> normalization_violation(const ArcModel& psi, const IntersectionMatrix& m) {
    int n = static_cast<int>(psi.arcs.size());
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < n; ++u)
            if (u != v && geometric_relation(psi, v, u) != m(v, u))
                return Violation{v, u, std::string("matrix says ") + pair_name(m(v, u)) + ", arcs are " +
                                           pair_name(geometric_relation(psi, v, u))};
    return std::nullopt;
}

bool is_normalized(const ArcModel& psi, const IntersectionMatrix& m) { return !normalization_violation(psi, m); }

ArcModel normalize(const ArcModel& psi_in, const IntersectionMatrix& m) {
    check_arc_model(psi_in);
    int n = static_cast<int>(psi_in.arcs.size());
    if (m.n != n) fail(Errc::NotAModel, "matrix and model sizes differ");
    for (int v = 0; v < n; ++v)
        for (int u = v + 1; u < n; ++u)
            if (intersects(geometric_relation(psi_in, v, u)) != (m(v, u) != PairType::DI))
                fail(Errc::NotAModel, "arcs of " + std::to_string(v) + " and " + std::to_string(u) + " disagree with the matrix");

    Seq seq = to_seq(psi_in);
    ArcModel psi = psi_in;
    const long cap = 4L * n * n;
    long pulls = 0;
    auto bump = [&] {
        if (++pulls > cap) fail(Errc::Internal, "normalization exceeded 4n^2 pulls");
    };
    auto preserved = [&](const ArcModel& cand, int a, int b) {
        for (int w = 0; w < n; ++w)
            for (int x : {a, b})
                if (w != x && intersects(geometric_relation(cand, x, w)) != (m(x, w) != PairType::DI)) return false;
        return true;
    };

    while (true) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int v = 0; v < n && !changed; ++v)
                for (int u = 0; u < n && !changed; ++u) {
                    if (u == v || m(v, u) != PairType::CS || geometric_relation(psi, v, u) == PairType::CS) continue;
                    // v must contain u: pull the endpoint of v lying on u just outside u.
                    if (on_arc(psi, u, psi.arcs[v].first))
                        move_next_to(seq, v, 0, u, 0, false);
                    else
                        move_next_to(seq, v, 1, u, 1, true);
                    psi = from_seq(seq, n);
                    if (!preserved(psi, v, u)) fail(Errc::Internal, "containment pull broke the model");
                    bump();
                    changed = true;
                }
        }
        bool fixed = false;
        for (int v = 0; v < n && !fixed; ++v)
            for (int u = v + 1; u < n && !fixed; ++u) {
                if (m(v, u) != PairType::CC || geometric_relation(psi, v, u) == PairType::CC) continue;
                // Name them so the clockwise order is s_a, s_b, e_a, e_b; the free stretch runs e_b .. s_a.
                int a = v, b = u;
                if (!on_arc(psi, a, psi.arcs[b].first)) std::swap(a, b);
                int eb = index_of(seq, b, 1);
                std::vector<std::pair<int, int>> between;
                for (int k = 1; k < static_cast<int>(seq.size()); ++k) {
                    auto item = seq[(eb + k) % seq.size()];
                    if (item == std::make_pair(a, 0)) break;
                    between.push_back(item);
                }
                for (size_t c = 0; c <= between.size() && !fixed; ++c) {
                    Seq cand = seq;
                    cand.erase(cand.begin() + index_of(cand, a, 0));
                    cand.erase(cand.begin() + index_of(cand, b, 1));
                    // the pair lands right after the c-th endpoint of the free stretch (or where e_b was)
                    auto anchor = c == 0 ? seq[(eb + seq.size() - 1) % seq.size()] : between[c - 1];
                    int at = index_of(cand, anchor.first, anchor.second) + 1;
                    cand.insert(cand.begin() + at, {b, 1});
                    cand.insert(cand.begin() + at, {a, 0});
                    ArcModel trial = from_seq(cand, n);
                    if (geometric_relation(trial, a, b) == PairType::CC && preserved(trial, a, b)) {
                        seq = cand;
                        psi = trial;
                        fixed = true;
                    }
                }
                if (!fixed) fail(Errc::Internal, "no admissible meeting point for a cover pull");
                bump();
            }
        if (!fixed) break;
    }
    if (auto bad = normalization_violation(psi, m))
        fail(Errc::Internal, "normalization left a violation: " + bad->what);
    return psi;
}

Word straighten(const ArcModel& psi, const Structure& s) {
    check_arc_model(psi);
    if (auto bad = normalization_violation(psi, s.m)) fail(Errc::NotNormalized, bad->what);
    Word w(psi.size);
    for (size_t v = 0; v < psi.arcs.size(); ++v) {
        w[psi.arcs[v].first] = {static_cast<int>(v), 0};
        w[psi.arcs[v].second] = {static_cast<int>(v), 1};
    }
    return w;
}

ArcModel bend(const Word& w) {
    int n = static_cast<int>(w.size() / 2);
    auto pos = positions(w, n);
    ArcModel psi;
    psi.size = static_cast<int>(w.size());
    for (int v = 0; v < n; ++v) {
        if (pos[v][0] < 0 || pos[v][1] < 0) fail(Errc::Malformed, "word is not a chord model over 0..n-1");
        psi.arcs.emplace_back(pos[v][0], pos[v][1]);
    }
    return psi;
}

ArcModel bend(const Word& w, const Structure& s) {
    if (auto bad = conformal_violation(w, s, Bits(s.n).set())) fail(Errc::NotConformal, bad->what);
    return bend(w);
}

std::string letter_string(const Letter& l, const std::function<std::string(int)>& name) {
    std::string base = name ? name(l.v) : std::to_string(l.v);
    if (l.e == 2) return "[" + base + "]";
    return base + "^" + std::to_string(l.e);
}

std::string word_string(const Word& w, const std::function<std::string(int)>& name) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += letter_string(w[i], name);
    }
    return out;
}

Word parse_word(const std::string& text, const std::function<int(const std::string&)>& id_of) {
    std::istringstream in(text);
    std::string tok;
    Word w;
    while (in >> tok) {
        auto caret = tok.rfind('^');
        if (caret == std::string::npos || caret + 2 != tok.size() || (tok.back() != '0' && tok.back() != '1'))
            fail(Errc::Malformed, "bad letter token '" + tok + "'");
        w.push_back({id_of(tok.substr(0, caret)), tok.back() - '0'});
    }
    return w;
}

ArcModel read_arc_model(std::istream& in, std::vector<std::string>* names) {
    std::string line, word;
    ArcModel psi;
    bool header = false;
    std::map<std::string, int> ids;
    std::vector<std::pair<int, int>> arcs;
    std::vector<std::string> order;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        if (!(ls >> word)) continue;
        if (!header) {
            if (word != "circle" || !(ls >> psi.size)) fail(Errc::Malformed, "expected 'circle <2n>'");
            header = true;
            continue;
        }
        int a, b;
        if (!(ls >> a >> b)) fail(Errc::Malformed, "expected 'name start end'");
        order.push_back(word);
        arcs.emplace_back(a, b);
    }
    bool numeric = true;
    for (auto& nm : order)
        if (nm.find_first_not_of("0123456789") != std::string::npos) numeric = false;
    psi.arcs.assign(arcs.size(), {-1, -1});
    for (size_t i = 0; i < order.size(); ++i) {
        size_t v = numeric ? std::stoul(order[i]) : i;
        if (v >= arcs.size()) fail(Errc::Malformed, "vertex id out of range");
        psi.arcs[v] = arcs[i];
    }
    if (names) {
        names->assign(arcs.size(), "");
        if (!numeric) *names = order;
    }
    check_arc_model(psi);
    return psi;
}

void write_arc_model(std::ostream& out, const ArcModel& psi, const std::function<std::string(int)>& name) {
    out << "circle " << psi.size << '\n';
    for (size_t v = 0; v < psi.arcs.size(); ++v)
        out << (name ? name(static_cast<int>(v)) : std::to_string(v)) << ' ' << psi.arcs[v].first << ' '
            << psi.arcs[v].second << '\n';
}

}  // namespace circa
