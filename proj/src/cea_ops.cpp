// SPDX-License-Identifier: Apache-2.0
#include <deque>
#include <map>
#include <unordered_map>

#include "cep/cea.hpp"
#include "cep/error.hpp"

namespace cep {

namespace {

constexpr Mark kMarks[] = {Mark::Take, Mark::Skip};

// Interns construction states by key and hands them out in discovery order.
template <typename Key, typename Hash = std::hash<Key>>
class Explorer {
public:
    explicit Explorer(Cea& out) : out_(&out) {}
    StateId intern(const Key& key) {
        auto [it, fresh] = ids_.try_emplace(key, 0);
        if (fresh) {
            it->second = out_->add_state();
            pending_.push_back(key);
        }
        return it->second;
    }
    bool next(Key& key) {
        if (pending_.empty()) return false;
        key = std::move(pending_.front());
        pending_.pop_front();
        return true;
    }
    StateId id(const Key& key) const { return ids_.at(key); }

private:
    Cea* out_;
    std::unordered_map<Key, StateId, Hash> ids_;
    std::deque<Key> pending_;
};

struct PairHash {
    std::size_t operator()(const std::pair<StateId, StateId>& p) const noexcept {
        return std::hash<std::uint64_t>{}(std::uint64_t{p.first} << 32 | p.second);
    }
};

struct SetPairHash {
    std::size_t operator()(const std::pair<StateSet, StateSet>& p) const noexcept {
        return StateSetHash{}(p.first) * 31 + StateSetHash{}(p.second);
    }
};

// Subset construction. `complete` keeps the empty subset as a sink.
Cea determinize(const Cea& a, bool complete) {
    SymbolicDelta delta(a);
    Cea out;
    Explorer<StateSet, StateSetHash> states(out);
    out.set_initial(states.intern(a.initial()));
    StateSet from;
    while (states.next(from)) {
        StateId src = states.id(from);
        if (intersects(from, a.final_states())) out.set_final(src);
        for (std::size_t k = 0; k < delta.letter_count(); ++k) {
            for (Mark m : kMarks) {
                StateSet to = delta(from, k, m);
                if (to.empty() && !complete) continue;
                out.add_transition(src, delta.letter(k), m, states.intern(to));
            }
        }
    }
    return out;
}

// Preorder state: blocks T1..Tk and the pivot, flattened as
// [pivot, |T1|, T1..., |T2|, T2..., ...].
using PreorderKey = std::vector<StateId>;

struct PreorderKeyHash {
    std::size_t operator()(const PreorderKey& k) const noexcept { return StateSetHash{}(k); }
};

PreorderKey encode(const std::vector<StateSet>& blocks, StateId pivot) {
    PreorderKey key{pivot};
    for (const auto& b : blocks) {
        key.push_back(static_cast<StateId>(b.size()));
        key.insert(key.end(), b.begin(), b.end());
    }
    return key;
}

std::vector<StateSet> decode_blocks(const PreorderKey& key) {
    std::vector<StateSet> blocks;
    for (std::size_t i = 1; i < key.size();) {
        std::size_t len = key[i++];
        blocks.emplace_back(key.begin() + static_cast<std::ptrdiff_t>(i), key.begin() + static_cast<std::ptrdiff_t>(i + len));
        i += len;
    }
    return blocks;
}

enum class SlotOrder { Interleaved, TakeFirst };

// Shared construction for NXT (interleaved slots) and LAST (all ● slots first).
// A run may move to q only from the first slot (block, mark) in which q appears,
// and within that slot only from the least pivot.
Cea compile_ordered(const Cea& input, SlotOrder order) {
    const Cea a = single_final(input);
    SymbolicDelta delta(a);
    Cea out;
    Explorer<PreorderKey, PreorderKeyHash> states(out);
    const auto initial_blocks = tpo({a.initial()});
    for (StateId q : a.initial()) out.set_initial(states.intern(encode(initial_blocks, q)));
    PreorderKey key;
    while (states.next(key)) {
        const StateId src = states.id(key);
        const StateId pivot = key[0];
        const auto blocks = decode_blocks(key);
        std::size_t pivot_block = 0;
        while (!contains(blocks[pivot_block], pivot)) ++pivot_block;
        bool earlier_final = false;
        for (std::size_t j = 0; j < pivot_block; ++j) earlier_final = earlier_final || intersects(blocks[j], a.final_states());
        if (a.is_final(pivot) && !earlier_final) out.set_final(src);

        for (std::size_t k = 0; k < delta.letter_count(); ++k) {
            struct Slot {
                std::size_t block;
                Mark mark;
                StateSet states;
            };
            std::vector<Slot> slots;
            if (order == SlotOrder::Interleaved) {
                for (std::size_t j = 0; j < blocks.size(); ++j) {
                    for (Mark m : kMarks) slots.push_back({j, m, delta(blocks[j], k, m)});
                }
            } else {
                for (Mark m : kMarks) {
                    for (std::size_t j = 0; j < blocks.size(); ++j) slots.push_back({j, m, delta(blocks[j], k, m)});
                }
            }
            std::vector<StateSet> contents;
            for (const auto& s : slots) contents.push_back(s.states);
            const auto next_blocks = tpo(contents);

            for (Mark m : kMarks) {
                for (StateId q : delta(pivot, k, m)) {
                    const Slot* first = nullptr;
                    for (const auto& s : slots) {
                        if (contains(s.states, q)) {
                            first = &s;
                            break;
                        }
                    }
                    if (first->block != pivot_block || first->mark != m) continue;
                    bool lower_pivot = false;
                    for (StateId p : blocks[pivot_block]) {
                        if (p >= pivot) break;
                        lower_pivot = lower_pivot || contains(delta(p, k, m), q);
                    }
                    if (lower_pivot) continue;
                    out.add_transition(src, delta.letter(k), m, states.intern(encode(next_blocks, q)));
                }
            }
        }
    }
    return out;
}

} // namespace

Cea union_of(const Cea& a, const Cea& b) {
    Cea out(a.state_count() + b.state_count());
    const auto shift = static_cast<StateId>(a.state_count());
    for (const auto& t : a.transitions()) out.add_transition(t.from, t.guard, t.mark, t.to);
    for (const auto& t : b.transitions()) out.add_transition(t.from + shift, t.guard, t.mark, t.to + shift);
    for (StateId q : a.initial()) out.set_initial(q);
    for (StateId q : b.initial()) out.set_initial(q + shift);
    for (StateId q : a.final_states()) out.set_final(q);
    for (StateId q : b.final_states()) out.set_final(q + shift);
    return out;
}

Cea intersection_of(const Cea& a, const Cea& b) {
    Cea out;
    Explorer<std::pair<StateId, StateId>, PairHash> states(out);
    for (StateId p : a.initial()) {
        for (StateId q : b.initial()) out.set_initial(states.intern({p, q}));
    }
    std::pair<StateId, StateId> cur;
    while (states.next(cur)) {
        const StateId src = states.id(cur);
        if (a.is_final(cur.first) && b.is_final(cur.second)) out.set_final(src);
        for (auto i : a.outgoing(cur.first)) {
            const auto& t = a.transition(i);
            for (auto j : b.outgoing(cur.second)) {
                const auto& u = b.transition(j);
                if (t.mark != u.mark || provably_disjoint(t.guard, u.guard)) continue;
                out.add_transition(src, Predicate::conj(t.guard, u.guard), t.mark, states.intern({t.to, u.to}));
            }
        }
    }
    return out;
}

Cea complement_of(const Cea& a) {
    Cea det = determinize(a, true);
    Cea out(det.state_count());
    for (const auto& t : det.transitions()) out.add_transition(t.from, t.guard, t.mark, t.to);
    for (StateId q : det.initial()) out.set_initial(q);
    for (StateId q = 0; q < det.state_count(); ++q) {
        if (!det.is_final(q)) out.set_final(q);
    }
    return out;
}

Cea io_determinize(const Cea& a) { return determinize(a, false); }

bool is_io_deterministic(const Cea& a) {
    if (a.initial().size() != 1) return false;
    for (StateId q = 0; q < a.state_count(); ++q) {
        const auto& out = a.outgoing(q);
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                const auto& t = a.transition(out[i]);
                const auto& u = a.transition(out[j]);
                if (t.mark == u.mark && !provably_disjoint(t.guard, u.guard)) return false;
            }
        }
    }
    return true;
}

Cea compile_strict(const Cea& a) {
    // Copy 0 has not marked yet; copy 1 has and must mark every further event.
    const auto n = static_cast<StateId>(a.state_count());
    Cea out(2 * n);
    for (const auto& t : a.transitions()) {
        if (t.mark == Mark::Skip) {
            out.add_transition(t.from, t.guard, Mark::Skip, t.to);
        } else {
            out.add_transition(t.from, t.guard, Mark::Take, t.to + n);
            out.add_transition(t.from + n, t.guard, Mark::Take, t.to + n);
        }
    }
    for (StateId q : a.initial()) out.set_initial(q);
    for (StateId q : a.final_states()) out.set_final(q + n);
    return out;
}

Cea compile_next(const Cea& a) { return compile_ordered(a, SlotOrder::Interleaved); }

Cea compile_last(const Cea& a) { return compile_ordered(a, SlotOrder::TakeFirst); }

Cea compile_max(const Cea& a) {
    SymbolicDelta delta(a);
    Cea out;
    Explorer<std::pair<StateSet, StateSet>, SetPairHash> states(out);
    out.set_initial(states.intern({a.initial(), {}}));
    std::pair<StateSet, StateSet> cur;
    while (states.next(cur)) {
        const StateId src = states.id(cur);
        const auto& [keep, dominating] = cur;
        if (intersects(keep, a.final_states()) && !intersects(dominating, a.final_states())) out.set_final(src);
        for (std::size_t k = 0; k < delta.letter_count(); ++k) {
            const StateSet keep_take = delta(keep, k, Mark::Take);
            {
                StateSet t2 = delta(dominating, k, Mark::Take);
                StateSet s2 = set_difference(keep_take, t2);
                if (!s2.empty()) out.add_transition(src, delta.letter(k), Mark::Take, states.intern({s2, t2}));
            }
            {
                StateSet t2 = set_union(set_union(delta(dominating, k, Mark::Take), delta(dominating, k, Mark::Skip)), keep_take);
                StateSet s2 = set_difference(delta(keep, k, Mark::Skip), t2);
                if (!s2.empty()) out.add_transition(src, delta.letter(k), Mark::Skip, states.intern({s2, t2}));
            }
        }
    }
    return out;
}

Cea compile_selection(Strategy s, const Cea& a) {
    switch (s) {
    case Strategy::None: return a;
    case Strategy::Strict: return compile_strict(a);
    case Strategy::Next: return compile_next(a);
    case Strategy::Last: return compile_last(a);
    case Strategy::Max: return compile_max(a);
    }
    throw CompileError("unknown selection strategy");
}

} // namespace cep
