// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cep/cea.hpp"
#include "cep/runtime/letter.hpp"

namespace cep::detail {

inline std::vector<Predicate> transition_guards(const Cea& a) {
    std::vector<Predicate> out;
    out.reserve(a.transitions().size());
    for (const auto& t : a.transitions()) out.push_back(t.guard);
    return out;
}

// Classifier guard id of every transition, by transition index.
inline std::vector<std::size_t> guard_ids(const LetterClassifier& letters, std::size_t transitions) {
    std::vector<std::size_t> out(transitions);
    for (std::size_t i = 0; i < transitions; ++i) out[i] = letters.guard_id(i);
    return out;
}

} // namespace cep::detail
