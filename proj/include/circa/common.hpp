#pragma once

#include <boost/dynamic_bitset.hpp>

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace circa {

using Bits = boost::dynamic_bitset<>;

enum class Errc {
    InvalidVertex,
    TwinsPresent,
    UniversalPresent,
    NotAModel,
    NotNormalized,
    NotConformal,
    NotCircle,
    NoConformal,
    NotCircularArc,
    NotComparability,
    NotProper,
    Disconnected,
    Malformed,
    BoundExceeded,
    Internal,
};

const char* errc_name(Errc c);

struct Error : std::runtime_error {
    Errc code;
    Error(Errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

[[noreturn]] void fail(Errc c, const std::string& what);

/// Process-wide instrumentation. Oracle entry points bump `oracle_calls`;
/// the conformal search engine records its work and the largest core it saw.
struct Counters {
    std::atomic<long> oracle_calls{0};
    std::atomic<long> search_calls{0};
    std::atomic<long> search_nodes{0};
    std::atomic<long> search_enumerations{0};
    std::atomic<int> max_search_core{0};
    std::atomic<int> max_enumerated_core{0};
    void reset();
};

Counters& counters();

inline std::vector<int> to_list(const Bits& b) {
    std::vector<int> out;
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(static_cast<int>(i));
    return out;
}

inline Bits to_bits(int n, const std::vector<int>& xs) {
    Bits b(n);
    for (int x : xs) b.set(x);
    return b;
}

}  // namespace circa
