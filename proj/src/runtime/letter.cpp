// SPDX-License-Identifier: Apache-2.0
#include "cep/runtime/letter.hpp"

#include <algorithm>

namespace cep {

namespace {

void collect_atoms(const Predicate& p, std::vector<Predicate>& out) {
    switch (p.kind()) {
    case Predicate::Kind::True:
    case Predicate::Kind::False: return;
    case Predicate::Kind::Not: collect_atoms(p.lhs(), out); return;
    case Predicate::Kind::And:
    case Predicate::Kind::Or:
        collect_atoms(p.lhs(), out);
        collect_atoms(p.rhs(), out);
        return;
    default:
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
}

} // namespace

LetterClassifier::LetterClassifier(std::shared_ptr<const Schema> schema, std::span<const Predicate> guards)
    : schema_(std::move(schema)) {
    for (const auto& g : guards) {
        auto it = std::find(guards_.begin(), guards_.end(), g);
        guard_of_input_.push_back(static_cast<std::size_t>(it - guards_.begin()));
        if (it == guards_.end()) guards_.push_back(g);
    }
    for (const auto& g : guards_) collect_atoms(g, atoms_);
    type_only_ = std::all_of(atoms_.begin(), atoms_.end(),
                             [](const Predicate& a) { return a.kind() == Predicate::Kind::TypeIs; });
    if (type_only_) by_type_.assign(schema_->size(), -1);
    values_.resize(atoms_.size());
}

std::size_t LetterClassifier::atom_index(const Predicate& atom) const {
    return static_cast<std::size_t>(std::find(atoms_.begin(), atoms_.end(), atom) - atoms_.begin());
}

bool LetterClassifier::eval(const Predicate& p, const std::vector<bool>& atom_values) const {
    switch (p.kind()) {
    case Predicate::Kind::True: return true;
    case Predicate::Kind::False: return false;
    case Predicate::Kind::Not: return !eval(p.lhs(), atom_values);
    case Predicate::Kind::And: return eval(p.lhs(), atom_values) && eval(p.rhs(), atom_values);
    case Predicate::Kind::Or: return eval(p.lhs(), atom_values) || eval(p.rhs(), atom_values);
    default: return atom_values[atom_index(p)];
    }
}

LetterId LetterClassifier::intern(const std::string& key, const std::vector<bool>& atom_values) {
    auto [it, fresh] = letters_.try_emplace(key, static_cast<LetterId>(letter_count_));
    if (fresh) {
        ++letter_count_;
        for (const auto& g : guards_) truth_.push_back(eval(g, atom_values));
    }
    return it->second;
}

LetterId LetterClassifier::classify(const Event& event) {
    if (type_only_ && event.type < by_type_.size() && by_type_[event.type] >= 0) {
        return static_cast<LetterId>(by_type_[event.type]);
    }
    key_.assign((atoms_.size() + 7) / 8, '\0');
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        values_[i] = atoms_[i].eval_unary(event, *schema_);
        if (values_[i]) key_[i / 8] = static_cast<char>(key_[i / 8] | (1 << (i % 8)));
    }
    const LetterId id = intern(key_, values_);
    if (type_only_ && event.type < by_type_.size()) by_type_[event.type] = id;
    return id;
}

} // namespace cep
