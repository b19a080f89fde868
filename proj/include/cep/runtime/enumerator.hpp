// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cep/complex_event.hpp"
#include "cep/runtime/output_dag.hpp"

namespace cep {

// DFS stack whose entries are black while they still have unexplored children.
// pop_whites() drops the white suffix in constant time through per-entry links
// to the nearest black entry below.
class BlackWhiteStack {
public:
    struct Entry {
        NodeId node;
        CellId cursor; // next child cell to explore
        CellId tail;   // last child cell
    };

    void push_black(Entry e, std::size_t position) { push(e, position, true); }
    void push_white(Entry e, std::size_t position) { push(e, position, false); }
    void pop();
    // Pops every white entry above the topmost black one.
    void pop_whites();
    void whiten_top();

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    Entry& top() { return entries_.back().entry; }
    bool top_is_black() const { return entries_.back().black; }
    // Positions of the entries, bottom first.
    std::span<const std::size_t> positions() const { return positions_; }
    void clear();

private:
    struct Slot {
        Entry entry;
        std::int64_t black_below; // index of nearest black entry strictly below, or -1
        bool black;
    };
    void push(Entry e, std::size_t position, bool black);

    std::vector<Slot> entries_;
    std::vector<std::size_t> positions_;
};

// Work counters for the enumeration phase. `ops` counts link follows and
// stack operations; the gap overhead of one output is the ops spent since the
// previous output minus twice the entries pushed for it.
struct EnumStats {
    std::uint64_t outputs = 0;
    std::uint64_t ops = 0;
    std::uint64_t pushes = 0;
    std::uint64_t max_gap_overhead = 0;
};

// Constant-delay iterator over the complex events encoded by the nodes at
// position `now` in the given lists.
class OutputCursor {
public:
    OutputCursor(const OutputDag& dag, std::vector<NodeList> sources, std::size_t now, EnumStats* stats = nullptr);

    // Moves to the next complex event; false when exhausted.
    bool next();
    // Current complex event, positions descending.
    std::span<const std::size_t> positions() const { return stack_.positions(); }
    ComplexEvent complex_event() const;

private:
    void count(std::uint64_t ops, std::uint64_t pushes = 0);
    bool start_next_root();

    const OutputDag* dag_;
    std::vector<NodeList> sources_;
    std::size_t now_;
    EnumStats* stats_;
    std::size_t source_ = 0;
    CellId root_cell_ = kNoCell;
    bool root_done_ = true;
    bool emitted_ = false;
    BlackWhiteStack stack_;
    std::uint64_t gap_ops_ = 0;
    std::uint64_t gap_pushes_ = 0;
};

} // namespace cep
