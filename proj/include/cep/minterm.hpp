// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "cep/predicate.hpp"

namespace cep {

struct Minterm {
    Predicate predicate;
    // implies[i] is true when the minterm implies base[i], false when it implies NOT base[i].
    std::vector<bool> implies;
};

// Partition of the tuple space induced by a finite list of unary predicates.
struct MintermPartition {
    std::vector<Predicate> base;
    std::vector<Minterm> minterms;

    // Index of the minterm satisfied by the tuple, or npos when that minterm was pruned
    // (only possible if the sign pattern is in fact unsatisfiable, i.e. never).
    std::size_t classify(const Event& event, const Schema& schema) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    friend MintermPartition minterm_partition(const std::vector<Predicate>& preds);
    std::map<std::vector<bool>, std::size_t> by_signs_;
};

// Satisfiable sign assignments over the distinct predicates of `preds`.
MintermPartition minterm_partition(const std::vector<Predicate>& preds);

// Conservative emptiness test for a conjunction of unary predicates: true only
// when the conjunction provably matches no tuple.
bool provably_unsat(const std::vector<Predicate>& conjunction);
bool provably_disjoint(const Predicate& a, const Predicate& b);

} // namespace cep
