// SPDX-License-Identifier: Apache-2.0
#include "cep/runtime/engines.hpp"
#include "transition_guards.hpp"

namespace cep {

NaiveEngine::NaiveEngine(const Cea& a, std::shared_ptr<const Schema> schema)
    : a_(io_determinize(a)), letters_(std::move(schema), detail::transition_guards(a_)) {
    guard_ = detail::guard_ids(letters_, a_.transitions().size());
    reset();
}

void NaiveEngine::reset() {
    runs_.clear();
    outputs_.clear();
    for (StateId q : a_.initial()) runs_.push_back({q, {}});
}

void NaiveEngine::step(const Event& event) {
    const LetterId letter = letters_.classify(event);
    next_.clear();
    outputs_.clear();
    for (auto& run : runs_) {
        for (auto idx : a_.outgoing(run.state)) {
            const auto& t = a_.transition(idx);
            if (!letters_.holds(letter, guard_[idx])) continue;
            if (t.mark == Mark::Take) {
                auto positions = run.positions;
                positions.push_back(position_);
                if (a_.is_final(t.to)) outputs_.push_back(positions);
                next_.push_back({t.to, std::move(positions)});
            } else {
                next_.push_back({t.to, run.positions});
            }
        }
    }
    runs_.swap(next_);
    ++position_;
}

void NaiveEngine::enumerate(const EmitFn& emit, EnumStats* stats) {
    std::vector<std::size_t> desc;
    for (const auto& out : outputs_) {
        desc.assign(out.rbegin(), out.rend());
        emit(desc);
        if (stats) ++stats->outputs;
    }
}

EngineStats NaiveEngine::stats() const {
    EngineStats s;
    s.automaton_states = a_.state_count();
    s.macro_states = a_.state_count();
    s.memory_bytes = runs_.capacity() * sizeof(Run);
    for (const auto& r : runs_) s.memory_bytes += r.positions.capacity() * sizeof(std::size_t);
    return s;
}

} // namespace cep
