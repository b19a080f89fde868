// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cep/runtime/engine.hpp"
#include "cep/runtime/letter.hpp"

namespace cep {

// Shared machinery for engines that determinize on the fly: every reachable
// configuration is a macro state with one list, transitions are cached per letter.
class MacroEngine : public DagEngine {
public:
    void step(const Event& event) override;
    void reset() override;

protected:
    using MacroId = std::uint32_t;
    static constexpr MacroId kNoMacro = UINT32_MAX;
    struct Move {
        MacroId take = kNoMacro;
        MacroId skip = kNoMacro;
    };

    MacroEngine(std::shared_ptr<const Schema> schema, std::span<const Predicate> guards);

    virtual Move compute_move(MacroId from, LetterId letter) = 0;
    MacroId new_macro(bool final);
    void set_initial(MacroId m);

    void final_lists(std::vector<NodeList>& out) const override;
    void live_lists(std::vector<NodeList*>& out) override;
    std::size_t macro_states() const override { return lists_.size(); }

    LetterClassifier letters_;

private:
    struct CachedMove {
        Move move;
        bool known = false;
    };
    void touch(MacroId m);

    std::vector<NodeList> lists_;
    std::vector<std::uint8_t> final_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t generation_ = 1;
    std::vector<MacroId> active_;
    std::vector<std::pair<MacroId, NodeList>> old_;
    std::vector<std::vector<CachedMove>> cache_;
    MacroId initial_ = kNoMacro;
};

// Evaluation of an I/O-deterministic automaton. Throws Error when two
// same-mark transitions fire from one state.
class DetEngine final : public MacroEngine {
public:
    DetEngine(Cea a, std::shared_ptr<const Schema> schema);
    std::string_view name() const override { return "det"; }

protected:
    Move compute_move(MacroId from, LetterId letter) override;
    std::size_t automaton_states() const override { return a_.state_count(); }

private:
    Cea a_;
    std::vector<std::size_t> guard_;
};

// On-the-fly subset construction.
class NDetEngine final : public MacroEngine {
public:
    NDetEngine(Cea a, std::shared_ptr<const Schema> schema);
    std::string_view name() const override { return "ndet"; }

protected:
    Move compute_move(MacroId from, LetterId letter) override;
    std::size_t automaton_states() const override { return a_.state_count(); }

private:
    MacroId intern(StateSet s);

    Cea a_;
    std::vector<std::size_t> guard_;
    std::unordered_map<StateSet, MacroId, StateSetHash> ids_;
    std::vector<StateSet> keys_;
};

// MAX evaluation over (T, U) pairs: T holds the current states of the runs,
// U the states of runs whose complex events strictly contain theirs.
class MaxEngine final : public MacroEngine {
public:
    MaxEngine(Cea a, std::shared_ptr<const Schema> schema);
    std::string_view name() const override { return "max"; }

protected:
    Move compute_move(MacroId from, LetterId letter) override;
    std::size_t automaton_states() const override { return a_.state_count(); }

private:
    using Key = std::pair<StateSet, StateSet>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return StateSetHash{}(k.first) * 31 + StateSetHash{}(k.second);
        }
    };
    MacroId intern(Key k);

    Cea a_;
    std::vector<std::size_t> guard_;
    std::unordered_map<Key, MacroId, KeyHash> ids_;
    std::vector<Key> keys_;
};

// NXT and LAST evaluation over a priority queue of disjoint state blocks.
// Every list holds at most one node.
class OrderedEngine final : public DagEngine {
public:
    enum class Order { Next, Last };
    OrderedEngine(const Cea& a, Order order, std::shared_ptr<const Schema> schema);

    void step(const Event& event) override;
    void reset() override;
    std::string_view name() const override { return order_ == Order::Next ? "nxt" : "last"; }

protected:
    void final_lists(std::vector<NodeList>& out) const override;
    void live_lists(std::vector<NodeList*>& out) override;
    std::size_t automaton_states() const override { return a_.state_count(); }

private:
    void update_marking(const StateSet& block, LetterId letter, Mark m);

    Cea a_;
    Order order_;
    LetterClassifier letters_;
    std::vector<std::size_t> guard_;
    std::vector<NodeList> lists_;
    std::vector<NodeList> old_lists_;
    std::vector<StateSet> blocks_;
    std::vector<StateSet> old_blocks_;
    std::vector<std::uint64_t> queued_; // stamp: state already in a block of the new queue
    std::vector<std::uint64_t> claimed_; // stamp: state already taken by the block being built
    std::uint64_t generation_ = 0;
    std::uint64_t block_generation_ = 0;
    StateSet pending_;
};

// STRICT evaluation on the I/O-determinized automaton. Only the run that has
// not marked anything yet may skip.
class StrictEngine final : public DagEngine {
public:
    StrictEngine(const Cea& a, std::shared_ptr<const Schema> schema);

    void step(const Event& event) override;
    void reset() override;
    std::string_view name() const override { return "strict"; }

protected:
    void final_lists(std::vector<NodeList>& out) const override;
    void live_lists(std::vector<NodeList*>& out) override;
    std::size_t automaton_states() const override { return a_.state_count(); }

private:
    static constexpr StateId kDead = UINT32_MAX;
    StateId target(StateId from, LetterId letter, Mark m) const;
    void touch(StateId q);

    Cea a_;
    LetterClassifier letters_;
    std::vector<std::size_t> guard_;
    std::vector<NodeList> lists_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t generation_ = 1;
    std::vector<StateId> active_;
    std::vector<std::pair<StateId, NodeList>> old_;
    StateId empty_run_ = kDead;
};

// Baseline that stores every partial run with its positions explicitly.
class NaiveEngine final : public Engine {
public:
    NaiveEngine(const Cea& a, std::shared_ptr<const Schema> schema);

    void step(const Event& event) override;
    void enumerate(const EmitFn& emit, EnumStats* stats = nullptr) override;
    void reset() override;
    EngineStats stats() const override;
    std::string_view name() const override { return "naive"; }

    std::size_t run_count() const { return runs_.size(); }

private:
    struct Run {
        StateId state;
        std::vector<std::size_t> positions;
    };

    Cea a_;
    LetterClassifier letters_;
    std::vector<std::size_t> guard_;
    std::vector<Run> runs_;
    std::vector<Run> next_;
    std::vector<std::vector<std::size_t>> outputs_;
};

} // namespace cep
