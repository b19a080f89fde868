// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "cep/cea.hpp"
#include "cep/runtime/enumerator.hpp"
#include "cep/runtime/output_dag.hpp"

namespace cep {

struct EngineStats {
    std::size_t dag_nodes = 0;
    std::size_t dag_cells = 0;
    std::size_t memory_bytes = 0;
    std::size_t automaton_states = 0;
    // States materialized on the fly (subsets, pairs); equals automaton_states otherwise.
    std::size_t macro_states = 0;
};

// Receives one complex event, positions descending.
using EmitFn = std::function<void(std::span<const std::size_t>)>;

// Streaming evaluator. Steps and enumerations must not overlap.
class Engine {
public:
    virtual ~Engine() = default;

    // Consumes the event at position().
    virtual void step(const Event& event) = 0;
    // Emits the complex events ending at position() - 1.
    virtual void enumerate(const EmitFn& emit, EnumStats* stats = nullptr) = 0;
    // Returns to the initial configuration without rewinding position().
    virtual void reset() = 0;
    virtual EngineStats stats() const = 0;
    virtual std::string_view name() const = 0;

    // Number of events consumed so far.
    std::size_t position() const { return position_; }

protected:
    std::size_t position_ = 0;
};

// Lists captured between steps; stays valid across later steps until compact().
struct ListSnapshot {
    std::vector<NodeList> lists;
    std::size_t now = kBottomPosition;
};

// Engine whose state is a set of lists over a shared output DAG.
class DagEngine : public Engine {
public:
    void enumerate(const EmitFn& emit, EnumStats* stats = nullptr) override;
    EngineStats stats() const override;

    OutputCursor cursor(EnumStats* stats = nullptr) const { return cursor(snapshot(), stats); }
    ListSnapshot snapshot() const;
    OutputCursor cursor(const ListSnapshot& snap, EnumStats* stats = nullptr) const;
    // Drops DAG content unreachable from the live lists. Invalidates snapshots.
    void compact();
    const OutputDag& dag() const { return dag_; }

protected:
    virtual void final_lists(std::vector<NodeList>& out) const = 0;
    virtual void live_lists(std::vector<NodeList*>& out) = 0;
    virtual std::size_t automaton_states() const = 0;
    virtual std::size_t macro_states() const { return automaton_states(); }

    OutputDag dag_;
};

enum class EngineKind { Auto, Det, NDet, Naive };

std::string_view to_string(EngineKind kind);

// Builds an engine for `strategies` (innermost first) applied to the core
// automaton. Inner strategies are compiled into the automaton. The outermost one
// runs natively under Auto, or is compiled and evaluated by the requested
// generic engine.
std::unique_ptr<Engine> make_engine(const Cea& core, std::span<const Strategy> strategies, EngineKind kind,
                                    std::shared_ptr<const Schema> schema);

struct RunOptions {
    // Reset the engine after every position with a nonempty output.
    bool consumption_policy = false;
};

OutputLog run_query(Engine& engine, const Stream& stream, RunOptions options = {});

} // namespace cep
