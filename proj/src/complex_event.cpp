// SPDX-License-Identifier: Apache-2.0
#include "cep/complex_event.hpp"

#include <algorithm>
#include <stdexcept>

namespace cep {

ComplexEvent::ComplexEvent(std::initializer_list<std::size_t> positions)
    : ComplexEvent(std::vector<std::size_t>(positions)) {}

ComplexEvent::ComplexEvent(std::vector<std::size_t> positions) : positions_(std::move(positions)) {
    if (positions_.empty()) throw std::invalid_argument("complex events are nonempty");
    std::sort(positions_.begin(), positions_.end());
    positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
}

bool ComplexEvent::contains(std::size_t pos) const {
    return std::binary_search(positions_.begin(), positions_.end(), pos);
}

std::string ComplexEvent::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(positions_[i]);
    }
    return out + "}";
}

ComplexEventSet flatten(const OutputLog& log) {
    ComplexEventSet out;
    for (const auto& [_, events] : log) out.insert(events.begin(), events.end());
    return out;
}

std::string to_string(const ComplexEventSet& set) {
    std::string out = "{";
    bool first = true;
    for (const auto& c : set) {
        if (!first) out += ",";
        first = false;
        out += c.to_string();
    }
    return out + "}";
}

namespace {

std::vector<std::size_t> symmetric_difference(const ComplexEvent& a, const ComplexEvent& b) {
    std::vector<std::size_t> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool strict_superset(const ComplexEvent& big, const ComplexEvent& small) {
    return big.size() > small.size() && std::includes(big.begin(), big.end(), small.begin(), small.end());
}

} // namespace

bool leq_next(const ComplexEvent& a, const ComplexEvent& b) {
    if (a == b) return true;
    auto diff = symmetric_difference(a, b);
    return b.contains(diff.front());
}

bool leq_last(const ComplexEvent& a, const ComplexEvent& b) {
    if (a == b) return true;
    auto diff = symmetric_difference(a, b);
    return b.contains(diff.back());
}

ComplexEventSet apply_selection(Strategy strategy, const ComplexEventSet& outs) {
    if (strategy == Strategy::None) return outs;
    ComplexEventSet kept;
    if (strategy == Strategy::Strict) {
        for (const auto& c : outs) {
            if (c.is_interval()) kept.insert(c);
        }
        return kept;
    }
    std::map<std::size_t, std::vector<const ComplexEvent*>> groups;
    for (const auto& c : outs) groups[c.max()].push_back(&c);
    for (const auto& [_, group] : groups) {
        if (strategy == Strategy::Max) {
            for (const auto* c : group) {
                bool dominated = std::any_of(group.begin(), group.end(),
                                             [&](const ComplexEvent* other) { return strict_superset(*other, *c); });
                if (!dominated) kept.insert(*c);
            }
            continue;
        }
        auto leq = strategy == Strategy::Next ? leq_next : leq_last;
        const ComplexEvent* best = group.front();
        for (const auto* c : group) {
            if (leq(*best, *c)) best = c;
        }
        kept.insert(*best);
    }
    return kept;
}

} // namespace cep
