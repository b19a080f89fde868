// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cep/formula.hpp"

namespace cep {

// Distributes ';' and FILTER over OR so that every OR sits at the top or
// directly inside a '+' body.
Formula to_dnf(const Formula& f);

// Equivalent safe formula: disjuncts that sequence the same variable outside
// '+' are unsatisfiable and dropped. Returns Formula::unsat() if none survive.
Formula to_safe(const Formula& f);

// Equivalent formula in which every unary filter is attached directly to an
// `R AS x`. Non-unary filters stay in place. Throws NotWellFormedError.
Formula to_lp_normal_form(const Formula& f);

bool is_lp_normal_form(const Formula& f);

// Rewrites mixed-variable AND/OR filter predicates into nested filters and
// disjunctions, folds TRUE/FALSE, and propagates unsat().
Formula desugar_filters(const Formula& f);

// Removes unsat() subformulas where the result is still defined.
Formula prune_unsat(const Formula& f);

} // namespace cep
