// SPDX-License-Identifier: Apache-2.0
#include "cep/runtime/engine.hpp"

#include "cep/error.hpp"
#include "cep/runtime/engines.hpp"

namespace cep {

ListSnapshot DagEngine::snapshot() const {
    ListSnapshot snap;
    if (position_ == 0) return snap;
    final_lists(snap.lists);
    snap.now = position_ - 1;
    return snap;
}

OutputCursor DagEngine::cursor(const ListSnapshot& snap, EnumStats* stats) const {
    return OutputCursor(dag_, snap.lists, snap.now, stats);
}

void DagEngine::enumerate(const EmitFn& emit, EnumStats* stats) {
    if (position_ == 0) return;
    auto c = cursor(stats);
    while (c.next()) emit(c.positions());
}

EngineStats DagEngine::stats() const {
    EngineStats s;
    s.dag_nodes = dag_.node_count();
    s.dag_cells = dag_.cell_count();
    s.memory_bytes = dag_.used_bytes();
    s.automaton_states = automaton_states();
    s.macro_states = macro_states();
    return s;
}

void DagEngine::compact() {
    std::vector<NodeList*> roots;
    live_lists(roots);
    dag_.compact(roots);
}

std::string_view to_string(EngineKind kind) {
    switch (kind) {
    case EngineKind::Auto: return "auto";
    case EngineKind::Det: return "det";
    case EngineKind::NDet: return "ndet";
    case EngineKind::Naive: return "naive";
    }
    return "?";
}

std::unique_ptr<Engine> make_engine(const Cea& core, std::span<const Strategy> strategies, EngineKind kind,
                                    std::shared_ptr<const Schema> schema) {
    Cea a = core;
    Strategy outer = Strategy::None;
    if (!strategies.empty()) {
        for (std::size_t i = 0; i + 1 < strategies.size(); ++i) a = trim(compile_selection(strategies[i], a));
        outer = strategies.back();
    }
    if (kind == EngineKind::Naive) return std::make_unique<NaiveEngine>(trim(compile_selection(outer, a)), schema);
    if (kind == EngineKind::Auto) {
        switch (outer) {
        case Strategy::None:
            if (is_io_deterministic(a)) return std::make_unique<DetEngine>(std::move(a), schema);
            return std::make_unique<NDetEngine>(std::move(a), schema);
        case Strategy::Strict: return std::make_unique<StrictEngine>(a, schema);
        case Strategy::Next: return std::make_unique<OrderedEngine>(a, OrderedEngine::Order::Next, schema);
        case Strategy::Last: return std::make_unique<OrderedEngine>(a, OrderedEngine::Order::Last, schema);
        case Strategy::Max: return std::make_unique<MaxEngine>(std::move(a), schema);
        }
    }
    Cea compiled = trim(compile_selection(outer, a));
    if (kind == EngineKind::Det) return std::make_unique<DetEngine>(io_determinize(compiled), schema);
    return std::make_unique<NDetEngine>(std::move(compiled), schema);
}

OutputLog run_query(Engine& engine, const Stream& stream, RunOptions options) {
    OutputLog log;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        engine.step(stream[i]);
        std::vector<ComplexEvent> found;
        engine.enumerate([&](std::span<const std::size_t> desc) {
            found.emplace_back(std::vector<std::size_t>(desc.rbegin(), desc.rend()));
        });
        if (found.empty()) continue;
        log[engine.position() - 1] = std::move(found);
        if (options.consumption_policy) engine.reset();
    }
    return log;
}

} // namespace cep
