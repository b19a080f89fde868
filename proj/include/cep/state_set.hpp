// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cep {

using StateId = std::uint32_t;

// Sorted, duplicate-free list of automaton states.
using StateSet = std::vector<StateId>;

inline void normalize(StateSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

inline bool contains(const StateSet& s, StateId q) { return std::binary_search(s.begin(), s.end(), q); }

inline bool intersects(const StateSet& a, const StateSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j) return true;
        if (*i < *j) ++i;
        else ++j;
    }
    return false;
}

inline StateSet set_union(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline StateSet set_difference(const StateSet& a, const StateSet& b) {
    StateSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::string to_string(const StateSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out + "}";
}

struct StateSetHash {
    std::size_t operator()(const StateSet& s) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (StateId q : s) h = (h ^ q) * 0x100000001b3ULL;
        return h ^ s.size();
    }
};

} // namespace cep
