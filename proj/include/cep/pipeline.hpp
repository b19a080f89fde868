// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "cep/analysis.hpp"
#include "cep/cea.hpp"
#include "cep/runtime/engine.hpp"

namespace cep {

// Every stage of query compilation, kept for inspection.
struct CompiledQuery {
    Formula parsed;
    std::vector<Strategy> strategies; // innermost first
    Formula core;
    AnalysisReport analysis;
    Formula rewritten; // safe and LP-normal core
    EpsilonCea thompson;
    Cea automaton; // ε-free, trimmed

    Formula rewritten_query() const { return apply_wrappers(strategies, rewritten); }
};

// Safe, LP-normal equivalent of f with its selection wrappers kept. Filters
// with binary predicates are left in place. Throws NotWellFormedError.
Formula rewrite_query(const Formula& f);

// Throws NotWellFormedError, NotUnaryError naming the offending predicates,
// or CompileError.
CompiledQuery compile_query(const Formula& f);

std::unique_ptr<Engine> make_engine(const CompiledQuery& q, EngineKind kind, std::shared_ptr<const Schema> schema);

} // namespace cep
