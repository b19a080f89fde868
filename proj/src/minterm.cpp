// SPDX-License-Identifier: Apache-2.0
#include "cep/minterm.hpp"

#include <limits>
#include <optional>
#include <set>

namespace cep {

namespace {

using PK = Predicate::Kind;

struct Literal {
    Predicate atom;
    bool positive;
};

// Splits a signed predicate into signed literals. Compound predicates that
// flatten are kept as literals too, so complementary compounds are detected.
bool flatten(const Predicate& p, bool positive, std::vector<Literal>& out) {
    switch (p.kind()) {
    case PK::True: return positive;
    case PK::False: return !positive;
    case PK::Not: return flatten(p.lhs(), !positive, out);
    case PK::And:
        out.push_back({p, positive});
        if (!positive) return true;
        return flatten(p.lhs(), true, out) && flatten(p.rhs(), true, out);
    case PK::Or:
        out.push_back({p, positive});
        if (positive) return true;
        return flatten(p.lhs(), false, out) && flatten(p.rhs(), false, out);
    default: out.push_back({p, positive}); return true;
    }
}

struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = false;
    bool hi_open = false;
    std::set<double> excluded;

    void apply(CompareOp op, double c) {
        switch (op) {
        case CompareOp::Eq: raise(c, false); lower(c, false); break;
        case CompareOp::Ne: excluded.insert(c); break;
        case CompareOp::Lt: lower(c, true); break;
        case CompareOp::Le: lower(c, false); break;
        case CompareOp::Gt: raise(c, true); break;
        case CompareOp::Ge: raise(c, false); break;
        }
    }
    void raise(double c, bool open) {
        if (c > lo || (c == lo && open)) {
            lo = c;
            lo_open = open;
        }
    }
    void lower(double c, bool open) {
        if (c < hi || (c == hi && open)) {
            hi = c;
            hi_open = open;
        }
    }
    bool empty() const {
        if (lo > hi) return true;
        if (lo == hi) return lo_open || hi_open || excluded.count(lo);
        return false;
    }
};

enum class ConstClass { Numeric, String, Bool };

ConstClass class_of(const Value& v) {
    if (v.is_numeric()) return ConstClass::Numeric;
    return v.kind() == ValueKind::String ? ConstClass::String : ConstClass::Bool;
}

bool attribute_constraints_unsat(const std::vector<Literal>& lits) {
    // (var, attr, class) keys that carry at least one positive comparison: the
    // attribute then exists with that class, so negated comparisons may be flipped.
    std::set<std::tuple<std::string, std::string, ConstClass>> anchored;
    for (const auto& l : lits) {
        if (l.positive && l.atom.kind() == PK::CompareConst)
            anchored.insert({l.atom.attr().var, l.atom.attr().attr, class_of(l.atom.constant())});
    }
    for (const auto& key : anchored) {
        Interval range;
        std::optional<Value> equal_to;
        std::vector<Value> unequal_to;
        for (const auto& l : lits) {
            if (l.atom.kind() != PK::CompareConst) continue;
            const auto& a = l.atom.attr();
            const Value& c = l.atom.constant();
            if (std::tuple{a.var, a.attr, class_of(c)} != key) continue;
            CompareOp op = l.positive ? l.atom.op() : negate(l.atom.op());
            if (std::get<2>(key) == ConstClass::Numeric) {
                range.apply(op, c.as_number());
            } else if (op == CompareOp::Eq) {
                if (equal_to && !(*equal_to == c)) return true;
                equal_to = c;
            } else if (op == CompareOp::Ne) {
                unequal_to.push_back(c);
            }
        }
        if (range.empty()) return true;
        if (equal_to) {
            for (const auto& v : unequal_to) {
                if (v == *equal_to) return true;
            }
        }
    }
    return false;
}

} // namespace

bool provably_unsat(const std::vector<Predicate>& conjunction) {
    std::vector<Literal> lits;
    for (const auto& p : conjunction) {
        if (!flatten(p, true, lits)) return true;
    }
    std::map<std::string, RelationId> type_of;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        for (std::size_t j = i + 1; j < lits.size(); ++j) {
            if (lits[i].positive != lits[j].positive && lits[i].atom == lits[j].atom) return true;
        }
        const auto& l = lits[i];
        if (l.positive && l.atom.kind() == PK::TypeIs) {
            auto [it, fresh] = type_of.emplace(l.atom.var(), l.atom.relation());
            if (!fresh && it->second != l.atom.relation()) return true;
        }
    }
    return attribute_constraints_unsat(lits);
}

bool provably_disjoint(const Predicate& a, const Predicate& b) { return provably_unsat({a, b}); }

MintermPartition minterm_partition(const std::vector<Predicate>& preds) {
    MintermPartition out;
    for (const auto& p : preds) {
        bool seen = false;
        for (const auto& b : out.base) seen = seen || b == p;
        if (!seen) out.base.push_back(p);
    }
    const std::size_t n = out.base.size();
    std::vector<bool> signs;
    std::vector<Predicate> parts;
    auto dfs = [&](auto&& self) -> void {
        if (provably_unsat(parts)) return;
        if (signs.size() == n) {
            out.by_signs_.emplace(signs, out.minterms.size());
            out.minterms.push_back({parts.empty() ? Predicate::truth() : conj_all(parts), signs});
            return;
        }
        const Predicate& next = out.base[signs.size()];
        for (bool positive : {true, false}) {
            signs.push_back(positive);
            parts.push_back(positive ? next : Predicate::negation(next));
            self(self);
            parts.pop_back();
            signs.pop_back();
        }
    };
    dfs(dfs);
    return out;
}

std::size_t MintermPartition::classify(const Event& event, const Schema& schema) const {
    std::vector<bool> signs;
    signs.reserve(base.size());
    for (const auto& p : base) signs.push_back(p.eval_unary(event, schema));
    auto it = by_signs_.find(signs);
    return it == by_signs_.end() ? npos : it->second;
}

} // namespace cep
