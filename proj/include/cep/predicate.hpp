// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cep/event.hpp"
#include "cep/value.hpp"

namespace cep {

enum class CompareOp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(CompareOp op);
CompareOp negate(CompareOp op);
bool holds(CompareOp op, std::partial_ordering ord);

struct AttrRef {
    std::string var;
    std::string attr;

    friend bool operator==(const AttrRef&, const AttrRef&) = default;
};

using VarSet = std::set<std::string>;

// Immutable boolean expression over attribute comparisons and type tests.
// Copies share structure.
class Predicate {
public:
    enum class Kind : std::uint8_t { True, False, Not, And, Or, CompareConst, CompareAttr, TypeIs };

    static Predicate truth();
    static Predicate falsity();
    static Predicate negation(Predicate operand);
    static Predicate conj(Predicate lhs, Predicate rhs);
    static Predicate disj(Predicate lhs, Predicate rhs);
    static Predicate compare(AttrRef lhs, CompareOp op, Value constant);
    static Predicate compare(AttrRef lhs, CompareOp op, AttrRef rhs);
    static Predicate type_is(std::string var, RelationId relation, std::string relation_name);

    Kind kind() const;
    bool is_atom() const;
    // Children of Not/And/Or (Not uses lhs).
    const Predicate& lhs() const;
    const Predicate& rhs() const;
    const AttrRef& attr() const;
    const AttrRef& other_attr() const;
    const Value& constant() const;
    CompareOp op() const;
    RelationId relation() const;
    const std::string& relation_name() const;
    // Variable of a TypeIs atom.
    const std::string& var() const;

    VarSet vars() const;
    std::size_t arity() const { return vars().size(); }
    std::size_t atom_count() const;

    // Evaluation with one event bound per variable; `lookup` returns null for unbound.
    bool eval(const std::function<const Event*(const std::string&)>& lookup, const Schema& schema) const;
    // Evaluation of a predicate with at most one variable against a single tuple.
    bool eval_unary(const Event& event, const Schema& schema) const;

    // Same predicate with every variable renamed to `var`.
    Predicate with_var(const std::string& var) const;
    Predicate rename(const std::string& from, const std::string& to) const;

    std::string to_string() const;

    friend bool operator==(const Predicate& a, const Predicate& b);

private:
    struct Node;
    explicit Predicate(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Flattens a top-level chain of And nodes.
std::vector<Predicate> conjuncts(const Predicate& p);
Predicate conj_all(const std::vector<Predicate>& parts);

// TRUE/FALSE constant folding.
Predicate fold_constants(const Predicate& p);

// A filter predicate is usable by the automaton compiler when, reading its
// top-level AND/OR connectives as nested filters and disjunctions, every
// remaining component mentions at most one variable.
bool is_sugar_unary(const Predicate& p);

} // namespace cep
