// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cep/complex_event.hpp"
#include "cep/formula.hpp"
#include "cep/minterm.hpp"
#include "cep/state_set.hpp"

namespace cep {

enum class Mark : std::uint8_t { Skip, Take };

// "●" for Take, "○" for Skip.
std::string_view to_string(Mark m);

struct Transition {
    StateId from;
    Predicate guard;
    Mark mark;
    StateId to;
};

// Complex event automaton. Guards are unary predicates over the variable "x".
class Cea {
public:
    Cea() = default;
    explicit Cea(std::size_t states) { add_states(states); }

    StateId add_state();
    void add_states(std::size_t n);
    void add_transition(StateId from, Predicate guard, Mark mark, StateId to);
    void set_initial(StateId q);
    void set_final(StateId q);

    std::size_t state_count() const { return outgoing_.size(); }
    std::span<const Transition> transitions() const { return transitions_; }
    const Transition& transition(std::size_t i) const { return transitions_[i]; }
    // Indices into transitions().
    const std::vector<std::size_t>& outgoing(StateId q) const { return outgoing_[q]; }
    const StateSet& initial() const { return initial_; }
    const StateSet& final_states() const { return final_; }
    bool is_initial(StateId q) const { return contains(initial_, q); }
    bool is_final(StateId q) const { return contains(final_, q); }
    // |Q| + |Δ|.
    std::size_t size() const { return state_count() + transitions_.size(); }
    std::vector<Predicate> guards() const;

private:
    std::vector<Transition> transitions_;
    std::vector<std::vector<std::size_t>> outgoing_;
    StateSet initial_;
    StateSet final_;
};

struct EpsilonCea {
    Cea automaton;
    std::vector<std::pair<StateId, StateId>> epsilon;
};

// Thompson-style construction for safe, unary, LP-normal core formulas.
// Throws CompileError naming the violated precondition.
EpsilonCea compile_core(const Formula& f);

// Incoming-transition copy over ε-closures followed by trim(). An ε-free input
// is returned unchanged.
Cea remove_epsilon(const EpsilonCea& a);

// Keeps states that are reachable from I and co-reachable to F. An automaton
// with an empty language becomes a single initial, non-final state.
Cea trim(const Cea& a);

// Equivalent automaton whose only final state is fresh, entered by the
// ●-transitions that entered F, and has no outgoing transitions.
Cea single_final(const Cea& a);

// Brute force over all runs on S[0..n]. Requires n < 64 and n < |s|.
ComplexEventSet enumerate_runs(const Cea& a, const Stream& s, std::size_t n);
// enumerate_runs at every position, empty positions omitted.
OutputLog enumerate_all_runs(const Cea& a, const Stream& s);

// Targets of one m-transition from any state of `from` whose guard the event satisfies.
StateSet extended_delta(const Cea& a, const StateSet& from, Mark m, const Event& event, const Schema& schema);

// Transition function over minterm letters of the automaton's own guards.
class SymbolicDelta {
public:
    explicit SymbolicDelta(const Cea& a);
    const MintermPartition& partition() const { return partition_; }
    std::size_t letter_count() const { return partition_.minterms.size(); }
    const Predicate& letter(std::size_t k) const { return partition_.minterms[k].predicate; }
    // Δ(T, P_k, m): targets of m-transitions from T whose guard the minterm implies.
    StateSet operator()(const StateSet& from, std::size_t k, Mark m) const;
    StateSet operator()(StateId from, std::size_t k, Mark m) const { return (*this)(StateSet{from}, k, m); }

private:
    const Cea* a_;
    MintermPartition partition_;
    std::vector<std::size_t> guard_index_;
};

std::string to_dot(const Cea& a);

Cea union_of(const Cea& a, const Cea& b);
Cea intersection_of(const Cea& a, const Cea& b);
// Complete subset construction with complemented final states.
Cea complement_of(const Cea& a);

// Lazy subset construction over (minterm, mark) letters; reachable nonempty subsets only.
Cea io_determinize(const Cea& a);
bool is_io_deterministic(const Cea& a);

Cea compile_strict(const Cea& a);
Cea compile_next(const Cea& a);
Cea compile_last(const Cea& a);
Cea compile_max(const Cea& a);
// Automaton for one selection strategy; Strategy::None returns a copy.
Cea compile_selection(Strategy s, const Cea& a);

// Drops from each block the states seen in earlier blocks, then drops empty blocks.
std::vector<StateSet> tpo(const std::vector<StateSet>& blocks);

} // namespace cep
