// SPDX-License-Identifier: Apache-2.0
#include "cep/pipeline.hpp"

#include "cep/error.hpp"
#include "cep/rewriter.hpp"

namespace cep {

namespace {

std::string join_issues(const AnalysisReport& r, std::string_view only = {}) {
    std::string out;
    for (const auto& issue : r.issues) {
        if (issue.find(only) == std::string::npos) continue;
        if (!out.empty()) out += "; ";
        out += issue;
    }
    return out;
}

Formula rewrite_core(const Formula& core) { return to_lp_normal_form(to_safe(rename_apart(core))); }

} // namespace

Formula rewrite_query(const Formula& f) {
    auto split = split_selection(f);
    const auto report = analyze(split.core);
    if (!report.well_formed) throw NotWellFormedError("formula is not well-formed: " + join_issues(report));
    return apply_wrappers(split.strategies, rewrite_core(split.core));
}

CompiledQuery compile_query(const Formula& f) {
    auto split = split_selection(f);
    auto report = analyze(split.core);
    if (!report.well_formed) throw NotWellFormedError("formula is not well-formed: " + join_issues(report));
    if (!report.unary) throw NotUnaryError("formula is not unary: " + join_issues(report, "not unary"));
    Formula rewritten = rewrite_core(split.core);
    EpsilonCea thompson = compile_core(rewritten);
    Cea automaton = remove_epsilon(thompson);
    return CompiledQuery{f, std::move(split.strategies), std::move(split.core), std::move(report),
                         std::move(rewritten), std::move(thompson), std::move(automaton)};
}

std::unique_ptr<Engine> make_engine(const CompiledQuery& q, EngineKind kind, std::shared_ptr<const Schema> schema) {
    return make_engine(q.automaton, q.strategies, kind, std::move(schema));
}

} // namespace cep
