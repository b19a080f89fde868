// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "cep/predicate.hpp"

namespace cep {

enum class Strategy : std::uint8_t { None, Strict, Next, Last, Max };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

// Immutable CEL abstract syntax tree. Copies share structure.
class Formula {
public:
    enum class Kind : std::uint8_t { Assign, Filter, Or, Seq, Plus, Select, Unsat };

    static Formula assign(RelationId relation, std::string relation_name, std::string var);
    static Formula filter(Formula body, Predicate predicate);
    static Formula disj(Formula lhs, Formula rhs);
    static Formula seq(Formula lhs, Formula rhs);
    static Formula plus(Formula body);
    static Formula select(Strategy strategy, Formula body);
    // Reserved node denoting the empty set of complex events.
    static Formula unsat();

    Kind kind() const;
    // Operand of Filter, Plus and Select.
    const Formula& body() const;
    const Formula& lhs() const;
    const Formula& rhs() const;
    const Predicate& predicate() const;
    RelationId relation() const;
    const std::string& relation_name() const;
    const std::string& var() const;
    Strategy strategy() const;

    std::size_t child_count() const;
    const Formula& child(std::size_t i) const;
    Formula with_children(std::vector<Formula> children) const;

    // Canonical concrete syntax; parse_formula(to_string()) reproduces this tree.
    std::string to_string() const;

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Node count, predicate atoms included.
std::size_t formula_size(const Formula& f);

// Folds a left-associated OR over the list; unsat() when empty.
Formula disj_all(const std::vector<Formula>& parts);

} // namespace cep
