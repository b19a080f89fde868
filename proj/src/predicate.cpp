// SPDX-License-Identifier: Apache-2.0
#include "cep/predicate.hpp"

#include <cassert>

namespace cep {

struct Predicate::Node {
    Kind kind;
    std::vector<Predicate> children;
    AttrRef lhs;
    AttrRef rhs;
    Value constant;
    CompareOp op = CompareOp::Eq;
    RelationId relation = 0;
    std::string relation_name;
};

std::string_view to_string(CompareOp op) {
    switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "!=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
    }
    return "?";
}

CompareOp negate(CompareOp op) {
    switch (op) {
    case CompareOp::Eq: return CompareOp::Ne;
    case CompareOp::Ne: return CompareOp::Eq;
    case CompareOp::Lt: return CompareOp::Ge;
    case CompareOp::Le: return CompareOp::Gt;
    case CompareOp::Gt: return CompareOp::Le;
    case CompareOp::Ge: return CompareOp::Lt;
    }
    return op;
}

bool holds(CompareOp op, std::partial_ordering ord) {
    switch (op) {
    case CompareOp::Eq: return ord == 0;
    case CompareOp::Ne: return ord != 0;
    case CompareOp::Lt: return ord < 0;
    case CompareOp::Le: return ord <= 0;
    case CompareOp::Gt: return ord > 0;
    case CompareOp::Ge: return ord >= 0;
    }
    return false;
}

Predicate Predicate::truth() {
    static const Predicate t(std::make_shared<const Node>(Node{Kind::True}));
    return t;
}

Predicate Predicate::falsity() {
    static const Predicate f(std::make_shared<const Node>(Node{Kind::False}));
    return f;
}

Predicate Predicate::negation(Predicate operand) {
    return Predicate(std::make_shared<const Node>(Node{Kind::Not, {std::move(operand)}}));
}

Predicate Predicate::conj(Predicate lhs, Predicate rhs) {
    return Predicate(std::make_shared<const Node>(Node{Kind::And, {std::move(lhs), std::move(rhs)}}));
}

Predicate Predicate::disj(Predicate lhs, Predicate rhs) {
    return Predicate(std::make_shared<const Node>(Node{Kind::Or, {std::move(lhs), std::move(rhs)}}));
}

Predicate Predicate::compare(AttrRef lhs, CompareOp op, Value constant) {
    Node n{Kind::CompareConst};
    n.lhs = std::move(lhs);
    n.op = op;
    n.constant = std::move(constant);
    return Predicate(std::make_shared<const Node>(std::move(n)));
}

Predicate Predicate::compare(AttrRef lhs, CompareOp op, AttrRef rhs) {
    Node n{Kind::CompareAttr};
    n.lhs = std::move(lhs);
    n.op = op;
    n.rhs = std::move(rhs);
    return Predicate(std::make_shared<const Node>(std::move(n)));
}

Predicate Predicate::type_is(std::string var, RelationId relation, std::string relation_name) {
    Node n{Kind::TypeIs};
    n.lhs = AttrRef{std::move(var), {}};
    n.relation = relation;
    n.relation_name = std::move(relation_name);
    return Predicate(std::make_shared<const Node>(std::move(n)));
}

Predicate::Kind Predicate::kind() const { return node_->kind; }
bool Predicate::is_atom() const {
    return kind() == Kind::CompareConst || kind() == Kind::CompareAttr || kind() == Kind::TypeIs;
}
const Predicate& Predicate::lhs() const { return node_->children.at(0); }
const Predicate& Predicate::rhs() const { return node_->children.at(1); }
const AttrRef& Predicate::attr() const { return node_->lhs; }
const AttrRef& Predicate::other_attr() const { return node_->rhs; }
const Value& Predicate::constant() const { return node_->constant; }
CompareOp Predicate::op() const { return node_->op; }
RelationId Predicate::relation() const { return node_->relation; }
const std::string& Predicate::relation_name() const { return node_->relation_name; }
const std::string& Predicate::var() const { return node_->lhs.var; }

VarSet Predicate::vars() const {
    VarSet out;
    std::function<void(const Predicate&)> walk = [&](const Predicate& p) {
        switch (p.kind()) {
        case Kind::CompareAttr: out.insert(p.other_attr().var); [[fallthrough]];
        case Kind::CompareConst:
        case Kind::TypeIs: out.insert(p.attr().var); break;
        default:
            for (const auto& c : p.node_->children) walk(c);
        }
    };
    walk(*this);
    return out;
}

std::size_t Predicate::atom_count() const {
    if (is_atom()) return 1;
    std::size_t n = 0;
    for (const auto& c : node_->children) n += c.atom_count();
    return n;
}

namespace {

bool compare_attr(const Event* ev, const AttrRef& ref, const Schema& schema, CompareOp op, const Value& rhs) {
    if (!ev) return false;
    const Value* v = attribute(*ev, schema, ref.attr);
    if (!v) return false;
    auto ord = compare_values(*v, rhs);
    return ord && holds(op, *ord);
}

} // namespace

bool Predicate::eval(const std::function<const Event*(const std::string&)>& lookup, const Schema& schema) const {
    switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Not: return !lhs().eval(lookup, schema);
    case Kind::And: return lhs().eval(lookup, schema) && rhs().eval(lookup, schema);
    case Kind::Or: return lhs().eval(lookup, schema) || rhs().eval(lookup, schema);
    case Kind::TypeIs: {
        const Event* ev = lookup(var());
        return ev && ev->type == relation();
    }
    case Kind::CompareConst: return compare_attr(lookup(attr().var), attr(), schema, op(), constant());
    case Kind::CompareAttr: {
        const Event* other = lookup(other_attr().var);
        if (!other) return false;
        const Value* rv = attribute(*other, schema, other_attr().attr);
        return rv && compare_attr(lookup(attr().var), attr(), schema, op(), *rv);
    }
    }
    return false;
}

bool Predicate::eval_unary(const Event& event, const Schema& schema) const {
    switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Not: return !lhs().eval_unary(event, schema);
    case Kind::And: return lhs().eval_unary(event, schema) && rhs().eval_unary(event, schema);
    case Kind::Or: return lhs().eval_unary(event, schema) || rhs().eval_unary(event, schema);
    case Kind::TypeIs: return event.type == relation();
    case Kind::CompareConst: return compare_attr(&event, attr(), schema, op(), constant());
    case Kind::CompareAttr: {
        const Value* rv = attribute(event, schema, other_attr().attr);
        return rv && compare_attr(&event, attr(), schema, op(), *rv);
    }
    }
    return false;
}

Predicate Predicate::with_var(const std::string& var) const {
    switch (kind()) {
    case Kind::True:
    case Kind::False: return *this;
    case Kind::Not: return negation(lhs().with_var(var));
    case Kind::And: return conj(lhs().with_var(var), rhs().with_var(var));
    case Kind::Or: return disj(lhs().with_var(var), rhs().with_var(var));
    case Kind::TypeIs: return type_is(var, relation(), relation_name());
    case Kind::CompareConst: return compare(AttrRef{var, attr().attr}, op(), constant());
    case Kind::CompareAttr: return compare(AttrRef{var, attr().attr}, op(), AttrRef{var, other_attr().attr});
    }
    return *this;
}

Predicate Predicate::rename(const std::string& from, const std::string& to) const {
    auto r = [&](const std::string& v) { return v == from ? to : v; };
    switch (kind()) {
    case Kind::True:
    case Kind::False: return *this;
    case Kind::Not: return negation(lhs().rename(from, to));
    case Kind::And: return conj(lhs().rename(from, to), rhs().rename(from, to));
    case Kind::Or: return disj(lhs().rename(from, to), rhs().rename(from, to));
    case Kind::TypeIs: return type_is(r(var()), relation(), relation_name());
    case Kind::CompareConst: return compare(AttrRef{r(attr().var), attr().attr}, op(), constant());
    case Kind::CompareAttr:
        return compare(AttrRef{r(attr().var), attr().attr}, op(), AttrRef{r(other_attr().var), other_attr().attr});
    }
    return *this;
}

namespace {

// Binding strength: OR 0, AND 1, NOT 2, atoms 3.
int precedence(const Predicate& p) {
    switch (p.kind()) {
    case Predicate::Kind::Or: return 0;
    case Predicate::Kind::And: return 1;
    case Predicate::Kind::Not: return 2;
    default: return 3;
    }
}

std::string print(const Predicate& p);

std::string print_child(const Predicate& child, int min_prec) {
    std::string s = print(child);
    return precedence(child) < min_prec ? "(" + s + ")" : s;
}

std::string print(const Predicate& p) {
    using K = Predicate::Kind;
    switch (p.kind()) {
    case K::True: return "TRUE";
    case K::False: return "FALSE";
    case K::Not: return "NOT " + print_child(p.lhs(), 3);
    case K::And: return print_child(p.lhs(), 1) + " AND " + print_child(p.rhs(), 2);
    case K::Or: return print_child(p.lhs(), 0) + " OR " + print_child(p.rhs(), 1);
    case K::TypeIs: return "type(" + p.var() + ") = " + p.relation_name();
    case K::CompareConst:
        return p.attr().var + "." + p.attr().attr + " " + std::string(to_string(p.op())) + " " + p.constant().literal();
    case K::CompareAttr:
        return p.attr().var + "." + p.attr().attr + " " + std::string(to_string(p.op())) + " " + p.other_attr().var +
               "." + p.other_attr().attr;
    }
    return {};
}

} // namespace

std::string Predicate::to_string() const { return print(*this); }

bool operator==(const Predicate& a, const Predicate& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    using K = Predicate::Kind;
    switch (a.kind()) {
    case K::True:
    case K::False: return true;
    case K::Not: return a.lhs() == b.lhs();
    case K::And:
    case K::Or: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case K::TypeIs: return a.var() == b.var() && a.relation() == b.relation();
    case K::CompareConst: return a.attr() == b.attr() && a.op() == b.op() && a.constant() == b.constant();
    case K::CompareAttr: return a.attr() == b.attr() && a.op() == b.op() && a.other_attr() == b.other_attr();
    }
    return false;
}

std::vector<Predicate> conjuncts(const Predicate& p) {
    if (p.kind() != Predicate::Kind::And) return {p};
    auto out = conjuncts(p.lhs());
    auto rest = conjuncts(p.rhs());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

Predicate conj_all(const std::vector<Predicate>& parts) {
    if (parts.empty()) return Predicate::truth();
    Predicate acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = Predicate::conj(acc, parts[i]);
    return acc;
}

Predicate fold_constants(const Predicate& p) {
    using K = Predicate::Kind;
    switch (p.kind()) {
    case K::Not: {
        Predicate c = fold_constants(p.lhs());
        if (c.kind() == K::True) return Predicate::falsity();
        if (c.kind() == K::False) return Predicate::truth();
        return Predicate::negation(c);
    }
    case K::And: {
        Predicate l = fold_constants(p.lhs()), r = fold_constants(p.rhs());
        if (l.kind() == K::False || r.kind() == K::False) return Predicate::falsity();
        if (l.kind() == K::True) return r;
        if (r.kind() == K::True) return l;
        return Predicate::conj(l, r);
    }
    case K::Or: {
        Predicate l = fold_constants(p.lhs()), r = fold_constants(p.rhs());
        if (l.kind() == K::True || r.kind() == K::True) return Predicate::truth();
        if (l.kind() == K::False) return r;
        if (r.kind() == K::False) return l;
        return Predicate::disj(l, r);
    }
    default: return p;
    }
}

bool is_sugar_unary(const Predicate& p) {
    if (p.arity() <= 1) return true;
    if (p.kind() == Predicate::Kind::And || p.kind() == Predicate::Kind::Or)
        return is_sugar_unary(p.lhs()) && is_sugar_unary(p.rhs());
    return false;
}

} // namespace cep
