// SPDX-License-Identifier: Apache-2.0
#include "cep/runtime/engines.hpp"
#include "transition_guards.hpp"

namespace cep {

StrictEngine::StrictEngine(const Cea& a, std::shared_ptr<const Schema> schema)
    : a_(io_determinize(a)), letters_(std::move(schema), detail::transition_guards(a_)) {
    guard_ = detail::guard_ids(letters_, a_.transitions().size());
    lists_.resize(a_.state_count());
    stamp_.assign(a_.state_count(), 0);
    reset();
}

void StrictEngine::touch(StateId q) {
    if (stamp_[q] == generation_) return;
    stamp_[q] = generation_;
    lists_[q] = {};
    active_.push_back(q);
}

void StrictEngine::reset() {
    for (StateId q : active_) lists_[q] = {};
    active_.clear();
    dag_ = OutputDag();
    ++generation_;
    empty_run_ = a_.initial().front();
    touch(empty_run_);
    lists_[empty_run_] = dag_.bottom_list();
}

StateId StrictEngine::target(StateId from, LetterId letter, Mark m) const {
    for (auto idx : a_.outgoing(from)) {
        const auto& t = a_.transition(idx);
        if (t.mark == m && letters_.holds(letter, guard_[idx])) return t.to;
    }
    return kDead;
}

void StrictEngine::step(const Event& event) {
    const LetterId letter = letters_.classify(event);
    old_.clear();
    for (StateId q : active_) old_.emplace_back(q, lists_[q]);
    for (StateId q : active_) lists_[q] = {};
    active_.clear();
    ++generation_;
    for (const auto& [q, list] : old_) {
        const StateId p = target(q, letter, Mark::Take);
        if (p == kDead) continue;
        touch(p);
        dag_.add(lists_[p], dag_.make_node(position_, list));
    }
    if (empty_run_ != kDead) {
        empty_run_ = target(empty_run_, letter, Mark::Skip);
        if (empty_run_ != kDead) {
            touch(empty_run_);
            dag_.append(lists_[empty_run_], dag_.bottom_list());
        }
    }
    ++position_;
}

void StrictEngine::final_lists(std::vector<NodeList>& out) const {
    for (StateId q : active_) {
        if (a_.is_final(q)) out.push_back(lists_[q]);
    }
}

void StrictEngine::live_lists(std::vector<NodeList*>& out) {
    for (StateId q : active_) out.push_back(&lists_[q]);
}

} // namespace cep
