// SPDX-License-Identifier: Apache-2.0
#include "cep/error.hpp"
#include "cep/runtime/engines.hpp"
#include "transition_guards.hpp"

namespace cep {

namespace {

using detail::guard_ids;
using detail::transition_guards;

// Δ(T, letter, m) under the classifier's truth table.
StateSet step_set(const Cea& a, const LetterClassifier& letters, const std::vector<std::size_t>& guard,
                  const StateSet& from, LetterId letter, Mark m) {
    StateSet out;
    for (StateId q : from) {
        for (auto idx : a.outgoing(q)) {
            const auto& t = a.transition(idx);
            if (t.mark == m && letters.holds(letter, guard[idx])) out.push_back(t.to);
        }
    }
    normalize(out);
    return out;
}

} // namespace

MacroEngine::MacroEngine(std::shared_ptr<const Schema> schema, std::span<const Predicate> guards)
    : letters_(std::move(schema), guards) {}

MacroEngine::MacroId MacroEngine::new_macro(bool final) {
    lists_.emplace_back();
    final_.push_back(final ? 1 : 0);
    stamp_.push_back(0);
    return static_cast<MacroId>(lists_.size() - 1);
}

void MacroEngine::set_initial(MacroId m) {
    initial_ = m;
    reset();
}

void MacroEngine::reset() {
    for (MacroId m : active_) lists_[m] = {};
    active_.clear();
    dag_ = OutputDag();
    ++generation_;
    touch(initial_);
    lists_[initial_] = dag_.bottom_list();
}

void MacroEngine::touch(MacroId m) {
    if (stamp_[m] == generation_) return;
    stamp_[m] = generation_;
    lists_[m] = {};
    active_.push_back(m);
}

void MacroEngine::step(const Event& event) {
    const LetterId letter = letters_.classify(event);
    if (cache_.size() <= letter) cache_.resize(letter + 1);
    old_.clear();
    for (MacroId m : active_) old_.emplace_back(m, lists_[m]);
    for (MacroId m : active_) lists_[m] = {};
    active_.clear();
    ++generation_;
    const std::size_t now = position_;
    for (const auto& [from, list] : old_) {
        auto& row = cache_[letter];
        if (row.size() <= from) row.resize(lists_.size());
        if (!row[from].known) {
            Move mv = compute_move(from, letter);
            // compute_move may intern macros and grow the row.
            auto& fresh = cache_[letter];
            if (fresh.size() <= from) fresh.resize(lists_.size());
            fresh[from] = {mv, true};
        }
        const Move mv = cache_[letter][from].move;
        if (mv.take != kNoMacro) {
            touch(mv.take);
            dag_.add(lists_[mv.take], dag_.make_node(now, list));
        }
        if (mv.skip != kNoMacro) {
            touch(mv.skip);
            dag_.append(lists_[mv.skip], list);
        }
    }
    ++position_;
}

void MacroEngine::final_lists(std::vector<NodeList>& out) const {
    for (MacroId m : active_) {
        if (final_[m]) out.push_back(lists_[m]);
    }
}

void MacroEngine::live_lists(std::vector<NodeList*>& out) {
    for (MacroId m : active_) out.push_back(&lists_[m]);
}

DetEngine::DetEngine(Cea a, std::shared_ptr<const Schema> schema)
    : MacroEngine(std::move(schema), transition_guards(a)), a_(std::move(a)) {
    if (a_.initial().size() != 1) throw Error("deterministic evaluation needs exactly one initial state");
    guard_ = guard_ids(letters_, a_.transitions().size());
    for (StateId q = 0; q < a_.state_count(); ++q) new_macro(a_.is_final(q));
    set_initial(a_.initial().front());
}

MacroEngine::Move DetEngine::compute_move(MacroId from, LetterId letter) {
    Move mv;
    for (auto idx : a_.outgoing(from)) {
        const auto& t = a_.transition(idx);
        if (!letters_.holds(letter, guard_[idx])) continue;
        MacroId& slot = t.mark == Mark::Take ? mv.take : mv.skip;
        if (slot != kNoMacro) throw Error("automaton is not I/O-deterministic");
        slot = t.to;
    }
    return mv;
}

NDetEngine::NDetEngine(Cea a, std::shared_ptr<const Schema> schema)
    : MacroEngine(std::move(schema), transition_guards(a)), a_(std::move(a)) {
    guard_ = guard_ids(letters_, a_.transitions().size());
    set_initial(intern(a_.initial()));
}

MacroEngine::MacroId NDetEngine::intern(StateSet s) {
    auto [it, fresh] = ids_.try_emplace(s, 0);
    if (fresh) {
        it->second = new_macro(intersects(s, a_.final_states()));
        keys_.push_back(std::move(s));
    }
    return it->second;
}

MacroEngine::Move NDetEngine::compute_move(MacroId from, LetterId letter) {
    Move mv;
    StateSet take = step_set(a_, letters_, guard_, keys_[from], letter, Mark::Take);
    StateSet skip = step_set(a_, letters_, guard_, keys_[from], letter, Mark::Skip);
    if (!take.empty()) mv.take = intern(std::move(take));
    if (!skip.empty()) mv.skip = intern(std::move(skip));
    return mv;
}

MaxEngine::MaxEngine(Cea a, std::shared_ptr<const Schema> schema)
    : MacroEngine(std::move(schema), transition_guards(a)), a_(std::move(a)) {
    guard_ = guard_ids(letters_, a_.transitions().size());
    set_initial(intern({a_.initial(), {}}));
}

MacroEngine::MacroId MaxEngine::intern(Key k) {
    auto [it, fresh] = ids_.try_emplace(k, 0);
    if (fresh) {
        const auto& f = a_.final_states();
        it->second = new_macro(intersects(k.first, f) && !intersects(k.second, f));
        keys_.push_back(std::move(k));
    }
    return it->second;
}

MacroEngine::Move MaxEngine::compute_move(MacroId from, LetterId letter) {
    const Key key = keys_[from];
    const auto& [keep, dominating] = key;
    auto delta = [&](const StateSet& s, Mark m) { return step_set(a_, letters_, guard_, s, letter, m); };
    const StateSet keep_take = delta(keep, Mark::Take);
    const StateSet dom_take = delta(dominating, Mark::Take);
    Move mv;
    if (StateSet t = set_difference(keep_take, dom_take); !t.empty()) mv.take = intern({std::move(t), dom_take});
    StateSet u = set_union(set_union(dom_take, delta(dominating, Mark::Skip)), keep_take);
    if (StateSet t = set_difference(delta(keep, Mark::Skip), u); !t.empty()) mv.skip = intern({std::move(t), std::move(u)});
    return mv;
}

} // namespace cep
