// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "cep/formula.hpp"

namespace cep {

VarSet all_vars(const Formula& f);
VarSet defined_vars(const Formula& f);
// Variables defined outside every '+'.
VarSet plus_free_defined_vars(const Formula& f);
// Variables bound on every path through f (vi).
VarSet bound_vars(const Formula& f);

struct AnalysisReport {
    VarSet var_all;
    VarSet vdef;
    VarSet vdef_plus;
    VarSet bound;
    bool well_formed = true;
    bool safe = true;
    bool unary = true;
    std::vector<std::string> issues;
};

AnalysisReport analyze(const Formula& f);

// Renames variables defined inside a '+' body whenever the same name also
// occurs outside that body. Semantics are unchanged.
Formula rename_apart(const Formula& f);

// Splits a chain of top-level selection wrappers from the core formula.
// Strategies are listed innermost first. Throws CompileError when a selection
// wrapper occurs below a core operator.
struct SelectionSplit {
    std::vector<Strategy> strategies;
    Formula core;
};
SelectionSplit split_selection(const Formula& f);
Formula apply_wrappers(const std::vector<Strategy>& strategies, Formula core);

} // namespace cep
