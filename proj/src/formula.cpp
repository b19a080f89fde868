// SPDX-License-Identifier: Apache-2.0
#include "cep/formula.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace cep {

struct Formula::Node {
    Kind kind;
    std::vector<Formula> children;
    std::optional<Predicate> predicate;
    RelationId relation = 0;
    std::string relation_name;
    std::string var;
    Strategy strategy = Strategy::None;
};

std::string_view to_string(Strategy s) {
    switch (s) {
    case Strategy::None: return "none";
    case Strategy::Strict: return "strict";
    case Strategy::Next: return "nxt";
    case Strategy::Last: return "last";
    case Strategy::Max: return "max";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    std::string lower;
    for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "none") return Strategy::None;
    if (lower == "strict") return Strategy::Strict;
    if (lower == "nxt" || lower == "next") return Strategy::Next;
    if (lower == "last") return Strategy::Last;
    if (lower == "max") return Strategy::Max;
    return std::nullopt;
}

Formula Formula::assign(RelationId relation, std::string relation_name, std::string var) {
    Node n{Kind::Assign};
    n.relation = relation;
    n.relation_name = std::move(relation_name);
    n.var = std::move(var);
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::filter(Formula body, Predicate predicate) {
    Node n{Kind::Filter, {std::move(body)}};
    n.predicate = std::move(predicate);
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Node{Kind::Or, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::seq(Formula lhs, Formula rhs) {
    return Formula(std::make_shared<const Node>(Node{Kind::Seq, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::plus(Formula body) {
    return Formula(std::make_shared<const Node>(Node{Kind::Plus, {std::move(body)}}));
}

Formula Formula::select(Strategy strategy, Formula body) {
    Node n{Kind::Select, {std::move(body)}};
    n.strategy = strategy;
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::unsat() {
    static const Formula u(std::make_shared<const Node>(Node{Kind::Unsat}));
    return u;
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Formula& Formula::body() const { return node_->children.at(0); }
const Formula& Formula::lhs() const { return node_->children.at(0); }
const Formula& Formula::rhs() const { return node_->children.at(1); }
const Predicate& Formula::predicate() const { return node_->predicate.value(); }
RelationId Formula::relation() const { return node_->relation; }
const std::string& Formula::relation_name() const { return node_->relation_name; }
const std::string& Formula::var() const { return node_->var; }
Strategy Formula::strategy() const { return node_->strategy; }
std::size_t Formula::child_count() const { return node_->children.size(); }
const Formula& Formula::child(std::size_t i) const { return node_->children.at(i); }

Formula Formula::with_children(std::vector<Formula> children) const {
    if (children.size() != child_count()) throw std::invalid_argument("child count mismatch");
    Node n = *node_;
    n.children = std::move(children);
    return Formula(std::make_shared<const Node>(std::move(n)));
}

namespace {

// Binding strength: OR 0, ';' 1, postfix FILTER/+ 2, primary 3.
int precedence(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Or: return 0;
    case Formula::Kind::Seq: return 1;
    case Formula::Kind::Filter:
    case Formula::Kind::Plus: return 2;
    default: return 3;
    }
}

std::string print(const Formula& f);

std::string wrap(const Formula& f, int min_prec) {
    std::string s = print(f);
    return precedence(f) < min_prec ? "(" + s + ")" : s;
}

std::string print(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Assign: return f.relation_name() + " AS " + f.var();
    case K::Filter: return wrap(f.body(), 2) + " FILTER (" + f.predicate().to_string() + ")";
    case K::Or: return wrap(f.lhs(), 0) + " OR " + wrap(f.rhs(), 1);
    case K::Seq: return wrap(f.lhs(), 1) + " ; " + wrap(f.rhs(), 2);
    case K::Plus: return (f.body().kind() == K::Assign ? "(" + print(f.body()) + ")" : wrap(f.body(), 3)) + "+";
    case K::Select: {
        std::string name(to_string(f.strategy()));
        for (auto& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return name + "(" + print(f.body()) + ")";
    }
    case K::Unsat: return "UNSAT";
    }
    return {};
}

} // namespace

std::string Formula::to_string() const { return print(*this); }

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.child_count() != b.child_count()) return false;
    using K = Formula::Kind;
    switch (a.kind()) {
    case K::Assign:
        if (a.relation() != b.relation() || a.var() != b.var()) return false;
        break;
    case K::Filter:
        if (!(a.predicate() == b.predicate())) return false;
        break;
    case K::Select:
        if (a.strategy() != b.strategy()) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a.child_count(); ++i) {
        if (!(a.child(i) == b.child(i))) return false;
    }
    return true;
}

std::size_t formula_size(const Formula& f) {
    std::size_t n = 1;
    if (f.kind() == Formula::Kind::Filter) n += f.predicate().atom_count();
    for (std::size_t i = 0; i < f.child_count(); ++i) n += formula_size(f.child(i));
    return n;
}

Formula disj_all(const std::vector<Formula>& parts) {
    if (parts.empty()) return Formula::unsat();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::disj(acc, parts[i]);
    return acc;
}

} // namespace cep
