// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cep/predicate.hpp"

namespace cep {

using LetterId = std::uint32_t;

// Maps events to letters: two events share a letter iff they agree on every
// atom of the registered guards, hence on every guard.
class LetterClassifier {
public:
    LetterClassifier(std::shared_ptr<const Schema> schema, std::span<const Predicate> guards);

    // Deduplicated guard index of guards[i] as passed to the constructor.
    std::size_t guard_id(std::size_t i) const { return guard_of_input_[i]; }
    std::size_t guard_count() const { return guards_.size(); }

    LetterId classify(const Event& event);
    bool holds(LetterId letter, std::size_t guard) const { return truth_[letter * guards_.size() + guard]; }
    std::size_t letter_count() const { return letter_count_; }

private:
    LetterId intern(const std::string& key, const std::vector<bool>& atom_values);
    bool eval(const Predicate& p, const std::vector<bool>& atom_values) const;
    std::size_t atom_index(const Predicate& atom) const;

    std::shared_ptr<const Schema> schema_;
    std::vector<Predicate> guards_;
    std::vector<std::size_t> guard_of_input_;
    std::vector<Predicate> atoms_;
    bool type_only_ = true;
    std::vector<std::int64_t> by_type_; // letter per relation when every atom is a type test
    std::unordered_map<std::string, LetterId> letters_;
    std::vector<bool> truth_; // letter-major guard truth table
    std::size_t letter_count_ = 0;
    std::string key_;
    std::vector<bool> values_;
};

} // namespace cep
