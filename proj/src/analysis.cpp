// SPDX-License-Identifier: Apache-2.0
#include "cep/analysis.hpp"

#include <algorithm>
#include <functional>
#include <iterator>

#include "cep/error.hpp"

namespace cep {

namespace {

using K = Formula::Kind;

VarSet unite(VarSet a, const VarSet& b) {
    a.insert(b.begin(), b.end());
    return a;
}

VarSet intersect(const VarSet& a, const VarSet& b) {
    VarSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

void collect_names(const Formula& f, std::multiset<std::string>& out) {
    if (f.kind() == K::Assign) out.insert(f.var());
    if (f.kind() == K::Filter) {
        for (const auto& v : f.predicate().vars()) out.insert(v);
    }
    for (std::size_t i = 0; i < f.child_count(); ++i) collect_names(f.child(i), out);
}

Formula rename_var(const Formula& f, const std::string& from, const std::string& to) {
    switch (f.kind()) {
    case K::Assign: return f.var() == from ? Formula::assign(f.relation(), f.relation_name(), to) : f;
    case K::Filter: return Formula::filter(rename_var(f.body(), from, to), f.predicate().rename(from, to));
    case K::Unsat: return f;
    default: {
        std::vector<Formula> kids;
        for (std::size_t i = 0; i < f.child_count(); ++i) kids.push_back(rename_var(f.child(i), from, to));
        return f.with_children(std::move(kids));
    }
    }
}

std::string fresh_name(const std::string& base, const std::multiset<std::string>& taken, int& counter) {
    for (;;) {
        std::string candidate = base + "_" + std::to_string(++counter);
        if (!taken.count(candidate)) return candidate;
    }
}

} // namespace

VarSet all_vars(const Formula& f) {
    std::multiset<std::string> names;
    collect_names(f, names);
    return VarSet(names.begin(), names.end());
}

VarSet defined_vars(const Formula& f) {
    if (f.kind() == K::Assign) return {f.var()};
    VarSet out;
    for (std::size_t i = 0; i < f.child_count(); ++i) out = unite(std::move(out), defined_vars(f.child(i)));
    return out;
}

VarSet plus_free_defined_vars(const Formula& f) {
    switch (f.kind()) {
    case K::Assign: return {f.var()};
    case K::Plus:
    case K::Unsat: return {};
    default: {
        VarSet out;
        for (std::size_t i = 0; i < f.child_count(); ++i)
            out = unite(std::move(out), plus_free_defined_vars(f.child(i)));
        return out;
    }
    }
}

VarSet bound_vars(const Formula& f) {
    switch (f.kind()) {
    case K::Assign: return {f.var()};
    case K::Filter:
    case K::Select: return bound_vars(f.body());
    case K::Or: return intersect(bound_vars(f.lhs()), bound_vars(f.rhs()));
    case K::Seq: return unite(bound_vars(f.lhs()), bound_vars(f.rhs()));
    case K::Plus:
    case K::Unsat: return {};
    }
    return {};
}

AnalysisReport analyze(const Formula& f) {
    AnalysisReport r;
    r.var_all = all_vars(f);
    r.vdef = defined_vars(f);
    r.vdef_plus = plus_free_defined_vars(f);
    r.bound = bound_vars(f);

    // `scope` is the union of vi over the ancestors of the current node.
    std::function<void(const Formula&, const VarSet&)> walk = [&](const Formula& node, const VarSet& scope) {
        VarSet here = unite(scope, bound_vars(node));
        switch (node.kind()) {
        case K::Filter: {
            const Predicate& p = node.predicate();
            for (const auto& v : p.vars()) {
                if (!here.count(v)) {
                    r.well_formed = false;
                    r.issues.push_back("variable '" + v + "' in FILTER (" + p.to_string() +
                                       ") is not bound by an enclosing subformula");
                }
            }
            if (!is_sugar_unary(p)) {
                r.unary = false;
                r.issues.push_back("predicate (" + p.to_string() + ") is not unary");
            }
            break;
        }
        case K::Seq: {
            VarSet shared = intersect(plus_free_defined_vars(node.lhs()), plus_free_defined_vars(node.rhs()));
            if (!shared.empty()) {
                r.safe = false;
                r.issues.push_back("sequencing redefines '" + *shared.begin() + "' on both sides");
            }
            break;
        }
        default: break;
        }
        for (std::size_t i = 0; i < node.child_count(); ++i) walk(node.child(i), here);
    };
    walk(f, {});
    return r;
}

Formula rename_apart(const Formula& f) {
    std::multiset<std::string> everywhere;
    collect_names(f, everywhere);
    int counter = 0;
    std::function<Formula(const Formula&, const std::multiset<std::string>&)> go =
        [&](const Formula& node, const std::multiset<std::string>& total) -> Formula {
        if (node.kind() == K::Plus) {
            Formula body = node.body();
            std::multiset<std::string> inside;
            collect_names(body, inside);
            for (const auto& v : plus_free_defined_vars(body)) {
                if (total.count(v) > inside.count(v)) {
                    std::string fresh = fresh_name(v, everywhere, counter);
                    everywhere.insert(fresh);
                    body = rename_var(body, v, fresh);
                }
            }
            std::multiset<std::string> body_total = total;
            for (const auto& v : inside) body_total.erase(body_total.find(v));
            collect_names(body, body_total);
            return Formula::plus(go(body, body_total));
        }
        if (node.child_count() == 0) return node;
        std::vector<Formula> kids;
        for (std::size_t i = 0; i < node.child_count(); ++i) kids.push_back(go(node.child(i), total));
        return node.with_children(std::move(kids));
    };
    return go(f, everywhere);
}

SelectionSplit split_selection(const Formula& f) {
    SelectionSplit out{{}, f};
    while (out.core.kind() == K::Select) {
        out.strategies.insert(out.strategies.begin(), out.core.strategy());
        out.core = out.core.body();
    }
    std::function<void(const Formula&)> check = [&](const Formula& node) {
        if (node.kind() == K::Select)
            throw CompileError("selection strategies must wrap the whole query, found one inside: " +
                               node.to_string());
        for (std::size_t i = 0; i < node.child_count(); ++i) check(node.child(i));
    };
    check(out.core);
    return out;
}

Formula apply_wrappers(const std::vector<Strategy>& strategies, Formula core) {
    for (Strategy s : strategies) {
        if (s != Strategy::None) core = Formula::select(s, core);
    }
    return core;
}

} // namespace cep
