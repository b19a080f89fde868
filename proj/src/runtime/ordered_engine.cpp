// SPDX-License-Identifier: Apache-2.0
#include "cep/runtime/engines.hpp"
#include "transition_guards.hpp"

namespace cep {

OrderedEngine::OrderedEngine(const Cea& a, Order order, std::shared_ptr<const Schema> schema)
    : a_(single_final(a)), order_(order), letters_(std::move(schema), detail::transition_guards(a_)) {
    guard_ = detail::guard_ids(letters_, a_.transitions().size());
    lists_.resize(a_.state_count());
    old_lists_.resize(a_.state_count());
    queued_.assign(a_.state_count(), 0);
    claimed_.assign(a_.state_count(), 0);
    reset();
}

void OrderedEngine::reset() {
    for (const auto& block : blocks_) {
        for (StateId q : block) lists_[q] = {};
    }
    blocks_.clear();
    dag_ = OutputDag();
    if (a_.initial().empty()) return;
    for (StateId q : a_.initial()) lists_[q] = dag_.bottom_list();
    blocks_.push_back(a_.initial());
}

// States of `block` are visited in ascending order; the first one reaching a
// state p claims it, and states already queued in an earlier block are skipped.
void OrderedEngine::update_marking(const StateSet& block, LetterId letter, Mark m) {
    ++block_generation_;
    pending_.clear();
    for (StateId q : block) {
        for (auto idx : a_.outgoing(q)) {
            const auto& t = a_.transition(idx);
            if (t.mark != m || !letters_.holds(letter, guard_[idx])) continue;
            const StateId p = t.to;
            if (queued_[p] == generation_ || claimed_[p] == block_generation_) continue;
            claimed_[p] = block_generation_;
            pending_.push_back(p);
            if (m == Mark::Take) {
                NodeList fresh;
                dag_.add(fresh, dag_.make_node(position_, old_lists_[q]));
                lists_[p] = fresh;
            } else {
                lists_[p] = old_lists_[q];
            }
        }
    }
    if (pending_.empty()) return;
    normalize(pending_);
    for (StateId p : pending_) queued_[p] = generation_;
    blocks_.push_back(pending_);
}

void OrderedEngine::step(const Event& event) {
    const LetterId letter = letters_.classify(event);
    old_blocks_.swap(blocks_);
    blocks_.clear();
    for (const auto& block : old_blocks_) {
        for (StateId q : block) {
            old_lists_[q] = lists_[q];
            lists_[q] = {};
        }
    }
    ++generation_;
    if (order_ == Order::Next) {
        for (const auto& block : old_blocks_) {
            update_marking(block, letter, Mark::Take);
            update_marking(block, letter, Mark::Skip);
        }
    } else {
        for (const auto& block : old_blocks_) update_marking(block, letter, Mark::Take);
        for (const auto& block : old_blocks_) update_marking(block, letter, Mark::Skip);
    }
    ++position_;
}

void OrderedEngine::final_lists(std::vector<NodeList>& out) const {
    for (StateId q : a_.final_states()) {
        if (!lists_[q].empty()) out.push_back(lists_[q]);
    }
}

void OrderedEngine::live_lists(std::vector<NodeList*>& out) {
    for (const auto& block : blocks_) {
        for (StateId q : block) out.push_back(&lists_[q]);
    }
}

} // namespace cep
