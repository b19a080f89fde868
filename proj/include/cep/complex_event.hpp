// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "cep/formula.hpp"

namespace cep {

// Nonempty finite set of stream positions, stored ascending.
class ComplexEvent {
public:
    ComplexEvent(std::initializer_list<std::size_t> positions);
    explicit ComplexEvent(std::vector<std::size_t> positions);

    std::size_t min() const { return positions_.front(); }
    std::size_t max() const { return positions_.back(); }
    std::size_t size() const { return positions_.size(); }
    bool contains(std::size_t pos) const;
    std::span<const std::size_t> positions() const { return positions_; }
    auto begin() const { return positions_.begin(); }
    auto end() const { return positions_.end(); }

    bool is_interval() const { return max() - min() + 1 == size(); }

    // `{i1,i2,...}` with ascending positions.
    std::string to_string() const;

    friend auto operator<=>(const ComplexEvent&, const ComplexEvent&) = default;
    friend bool operator==(const ComplexEvent&, const ComplexEvent&) = default;

private:
    std::vector<std::size_t> positions_;
};

using ComplexEventSet = std::set<ComplexEvent>;
// End position -> complex events ending there.
using OutputLog = std::map<std::size_t, std::vector<ComplexEvent>>;

ComplexEventSet flatten(const OutputLog& log);
std::string to_string(const ComplexEventSet& set);

// C1 <=next C2 iff C1 = C2 or the least element of the symmetric difference is in C2.
bool leq_next(const ComplexEvent& a, const ComplexEvent& b);
// C1 <=last C2 iff C1 = C2 or the greatest element of the symmetric difference is in C2.
bool leq_last(const ComplexEvent& a, const ComplexEvent& b);

// Filters complex events under a selection strategy. Groups share an end position.
ComplexEventSet apply_selection(Strategy strategy, const ComplexEventSet& outs);

} // namespace cep
