#pragma once

#include "circa/graph.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace circa {

enum class PairType : uint8_t { DI, CS, CD, CC, OV };

const char* pair_name(PairType t);

struct IntersectionMatrix {
    int n = 0;
    std::vector<PairType> cells;
    PairType operator()(int v, int u) const { return cells[static_cast<size_t>(v) * n + u]; }
    PairType& at(int v, int u) { return cells[static_cast<size_t>(v) * n + u]; }
};

struct SideSets {
    std::vector<Bits> left, right;
};

/// Everything the model-free machinery needs about a circular-arc graph:
/// M_G, left/right side sets, the overlap graph (V, ~) and vertex multiplicities.
struct Structure {
    int n = 0;
    IntersectionMatrix m;
    SideSets sides;
    Graph ov;
    std::vector<int> mult;

    bool crosses(int u, int v) const { return ov.adj[u][v]; }
    /// true iff u lies in left(v); meaningful only when u, v do not cross.
    bool left_of(int v, int u) const { return sides.left[v][u]; }
};

PairType classify_pair(const Graph& g, int v, int u);
Structure build_matrix(const Graph& g);
Structure build_matrix(const MultiGraph& g);

void print_matrix(std::ostream& out, const Graph& g, const Structure& s);

}  // namespace circa
