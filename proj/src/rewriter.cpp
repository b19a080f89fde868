// SPDX-License-Identifier: Apache-2.0
#include "cep/rewriter.hpp"

#include <optional>
#include <vector>

#include "cep/analysis.hpp"
#include "cep/error.hpp"

namespace cep {

namespace {

using K = Formula::Kind;
using Path = std::vector<std::size_t>;

std::vector<Formula> disjuncts(const Formula& f) {
    switch (f.kind()) {
    case K::Assign: return {f};
    case K::Unsat: return {};
    case K::Or: {
        auto out = disjuncts(f.lhs());
        auto rhs = disjuncts(f.rhs());
        out.insert(out.end(), rhs.begin(), rhs.end());
        return out;
    }
    case K::Filter: {
        std::vector<Formula> out;
        for (const auto& d : disjuncts(f.body())) out.push_back(Formula::filter(d, f.predicate()));
        return out;
    }
    case K::Seq: {
        std::vector<Formula> out;
        auto rhs = disjuncts(f.rhs());
        for (const auto& l : disjuncts(f.lhs())) {
            for (const auto& r : rhs) out.push_back(Formula::seq(l, r));
        }
        return out;
    }
    case K::Plus: {
        Formula body = to_dnf(f.body());
        if (body.kind() == K::Unsat) return {};
        return {Formula::plus(body)};
    }
    case K::Select: {
        Formula body = to_dnf(f.body());
        if (body.kind() == K::Unsat) return {};
        return {Formula::select(f.strategy(), body)};
    }
    }
    return {};
}

bool sequences_overlap(const Formula& f) {
    switch (f.kind()) {
    case K::Seq: {
        auto l = plus_free_defined_vars(f.lhs());
        for (const auto& v : plus_free_defined_vars(f.rhs())) {
            if (l.count(v)) return true;
        }
        return sequences_overlap(f.lhs()) || sequences_overlap(f.rhs());
    }
    case K::Plus: return false;
    default:
        for (std::size_t i = 0; i < f.child_count(); ++i) {
            if (sequences_overlap(f.child(i))) return true;
        }
        return false;
    }
}

// Rewrites every '+' body of an OR-free disjunct into safe form.
Formula make_plus_bodies_safe(const Formula& f) {
    if (f.kind() == K::Plus) {
        Formula body = to_safe(f.body());
        return body.kind() == K::Unsat ? body : Formula::plus(body);
    }
    if (f.child_count() == 0) return f;
    std::vector<Formula> kids;
    for (std::size_t i = 0; i < f.child_count(); ++i) kids.push_back(make_plus_bodies_safe(f.child(i)));
    return prune_unsat(f.with_children(std::move(kids)));
}

Formula split_filter(const Formula& body, const Predicate& p) {
    switch (p.kind()) {
    case Predicate::Kind::True: return body;
    case Predicate::Kind::False: return Formula::unsat();
    default: break;
    }
    if (p.arity() <= 1) return Formula::filter(body, p);
    if (p.kind() == Predicate::Kind::And) return split_filter(split_filter(body, p.lhs()), p.rhs());
    if (p.kind() == Predicate::Kind::Or) return Formula::disj(split_filter(body, p.lhs()), split_filter(body, p.rhs()));
    return Formula::filter(body, p);
}

const Formula& at(const Formula& f, const Path& path, std::size_t len) {
    const Formula* cur = &f;
    for (std::size_t i = 0; i < len; ++i) cur = &cur->child(path[i]);
    return *cur;
}

Formula replace(const Formula& f, const Path& path, std::size_t depth, const Formula& with) {
    if (depth == path.size()) return with;
    std::vector<Formula> kids;
    for (std::size_t i = 0; i < f.child_count(); ++i)
        kids.push_back(i == path[depth] ? replace(f.child(i), path, depth + 1, with) : f.child(i));
    return f.with_children(std::move(kids));
}

bool is_unary_filter(const Formula& f) { return f.kind() == K::Filter && f.predicate().arity() == 1; }

// A unary filter whose variable is not bound by its own body.
std::optional<Path> find_unbound_filter(const Formula& f, Path& path) {
    for (std::size_t i = 0; i < f.child_count(); ++i) {
        path.push_back(i);
        if (auto found = find_unbound_filter(f.child(i), path)) return found;
        path.pop_back();
    }
    if (is_unary_filter(f) && !bound_vars(f.body()).count(*f.predicate().vars().begin())) return path;
    return std::nullopt;
}

// Step 1: lift each such filter to the lowest ancestor A that binds its
// variable, splitting A into (A with the filter dropped) FILTER P and
// (A with the filtered branch removed) FILTER NOT P.
Formula pop_up(Formula f) {
    for (;;) {
        Path path;
        auto found = find_unbound_filter(f, path);
        if (!found) return f;
        const Formula& node = at(f, *found, found->size());
        const Predicate pred = node.predicate();
        const Formula inner = node.body();
        const std::string x = *pred.vars().begin();
        std::optional<std::size_t> anchor;
        for (std::size_t len = found->size(); len-- > 0;) {
            if (bound_vars(at(f, *found, len)).count(x)) {
                anchor = len;
                break;
            }
        }
        if (!anchor) throw NotWellFormedError("variable '" + x + "' is not bound above FILTER (" + pred.to_string() + ")");
        const Formula& a = at(f, *found, *anchor);
        Path rel(found->begin() + static_cast<std::ptrdiff_t>(*anchor), found->end());
        Formula kept = replace(a, rel, 0, inner);
        Formula dropped = prune_unsat(replace(a, rel, 0, Formula::unsat()));
        Formula lifted = Formula::filter(kept, pred);
        if (dropped.kind() != K::Unsat)
            lifted = Formula::disj(lifted, Formula::filter(dropped, Predicate::negation(pred)));
        Path anchor_path(found->begin(), found->begin() + static_cast<std::ptrdiff_t>(*anchor));
        f = replace(f, anchor_path, 0, lifted);
    }
}

// Attaches a unary predicate on `x` to every definition of `x` outside '+'.
Formula attach(const Formula& f, const std::string& x, const Predicate& p) {
    switch (f.kind()) {
    case K::Assign: return f.var() == x ? Formula::filter(f, p) : f;
    case K::Filter:
        if (f.body().kind() == K::Assign && is_sugar_unary(f.predicate())) {
            if (f.body().var() != x) return f;
            return Formula::filter(f.body(), Predicate::conj(f.predicate(), p));
        }
        return Formula::filter(attach(f.body(), x, p), f.predicate());
    case K::Or: return Formula::disj(attach(f.lhs(), x, p), attach(f.rhs(), x, p));
    case K::Seq: return Formula::seq(attach(f.lhs(), x, p), attach(f.rhs(), x, p));
    default: return f;
    }
}

// Step 2: push every unary filter onto the definitions of its variable.
Formula push_down(const Formula& f) {
    switch (f.kind()) {
    case K::Filter: {
        Formula body = push_down(f.body());
        if (f.predicate().arity() != 1) return Formula::filter(body, f.predicate());
        return attach(body, *f.predicate().vars().begin(), f.predicate());
    }
    case K::Assign:
    case K::Unsat: return f;
    default: {
        std::vector<Formula> kids;
        for (std::size_t i = 0; i < f.child_count(); ++i) kids.push_back(push_down(f.child(i)));
        return f.with_children(std::move(kids));
    }
    }
}

} // namespace

Formula prune_unsat(const Formula& f) {
    switch (f.kind()) {
    case K::Assign:
    case K::Unsat: return f;
    case K::Or: {
        Formula l = prune_unsat(f.lhs()), r = prune_unsat(f.rhs());
        if (l.kind() == K::Unsat) return r;
        if (r.kind() == K::Unsat) return l;
        return Formula::disj(l, r);
    }
    default: {
        std::vector<Formula> kids;
        for (std::size_t i = 0; i < f.child_count(); ++i) {
            kids.push_back(prune_unsat(f.child(i)));
            if (kids.back().kind() == K::Unsat) return Formula::unsat();
        }
        return f.with_children(std::move(kids));
    }
    }
}

Formula to_dnf(const Formula& f) { return disj_all(disjuncts(f)); }

Formula to_safe(const Formula& f) {
    if (analyze(f).safe) return f;
    std::vector<Formula> kept;
    for (const auto& d : disjuncts(to_dnf(f))) {
        Formula candidate = make_plus_bodies_safe(d);
        if (candidate.kind() == K::Unsat || sequences_overlap(candidate)) continue;
        kept.push_back(candidate);
    }
    return disj_all(kept);
}

Formula desugar_filters(const Formula& f) {
    if (f.kind() == K::Filter) return prune_unsat(split_filter(desugar_filters(f.body()), fold_constants(f.predicate())));
    if (f.child_count() == 0) return f;
    std::vector<Formula> kids;
    for (std::size_t i = 0; i < f.child_count(); ++i) kids.push_back(desugar_filters(f.child(i)));
    return prune_unsat(f.with_children(std::move(kids)));
}

Formula to_lp_normal_form(const Formula& f) {
    auto split = split_selection(f);
    auto report = analyze(split.core);
    if (!report.well_formed) throw NotWellFormedError(report.issues.front());
    Formula g = desugar_filters(rename_apart(split.core));
    g = prune_unsat(push_down(pop_up(g)));
    return apply_wrappers(split.strategies, g);
}

bool is_lp_normal_form(const Formula& f) {
    if (f.kind() == K::Filter && is_sugar_unary(f.predicate())) {
        if (f.body().kind() != K::Assign) return false;
        for (const auto& v : f.predicate().vars()) {
            if (v != f.body().var()) return false;
        }
        return true;
    }
    for (std::size_t i = 0; i < f.child_count(); ++i) {
        if (!is_lp_normal_form(f.child(i))) return false;
    }
    return true;
}

} // namespace cep
