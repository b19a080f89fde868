// SPDX-License-Identifier: Apache-2.0
#include "cep/runtime/enumerator.hpp"

#include <algorithm>

namespace cep {

void BlackWhiteStack::push(Entry e, std::size_t position, bool black) {
    std::int64_t below = -1;
    if (!entries_.empty()) {
        const auto top_index = static_cast<std::int64_t>(entries_.size() - 1);
        below = entries_.back().black ? top_index : entries_.back().black_below;
    }
    entries_.push_back({e, below, black});
    positions_.push_back(position);
}

void BlackWhiteStack::pop() {
    entries_.pop_back();
    positions_.pop_back();
}

void BlackWhiteStack::pop_whites() {
    if (entries_.empty() || entries_.back().black) return;
    const auto keep = static_cast<std::size_t>(entries_.back().black_below + 1);
    entries_.resize(keep);
    positions_.resize(keep);
}

void BlackWhiteStack::whiten_top() { entries_.back().black = false; }

void BlackWhiteStack::clear() {
    entries_.clear();
    positions_.clear();
}

OutputCursor::OutputCursor(const OutputDag& dag, std::vector<NodeList> sources, std::size_t now, EnumStats* stats)
    : dag_(&dag), now_(now), stats_(stats) {
    for (const auto& l : sources) {
        if (!l.empty() && dag.node(dag.cell(l.head).node).position == now) sources_.push_back(l);
    }
    if (!sources_.empty()) {
        root_cell_ = sources_[0].head;
        root_done_ = false;
    }
}

void OutputCursor::count(std::uint64_t ops, std::uint64_t pushes) {
    gap_ops_ += ops;
    gap_pushes_ += pushes;
}

// Pushes the next root node at position `now`, moving across source lists.
bool OutputCursor::start_next_root() {
    while (source_ < sources_.size()) {
        count(1);
        if (!root_done_) {
            const Cell& c = dag_->cell(root_cell_);
            const Node& n = dag_->node(c.node);
            if (n.position == now_) {
                if (root_cell_ == sources_[source_].tail) root_done_ = true;
                else root_cell_ = c.next;
                stack_.push_black({c.node, n.children.head, n.children.tail}, n.position);
                count(1, 1);
                return true;
            }
        }
        if (++source_ < sources_.size()) {
            root_cell_ = sources_[source_].head;
            root_done_ = false;
        }
    }
    return false;
}

bool OutputCursor::next() {
    if (emitted_) {
        stack_.pop_whites();
        count(1);
        emitted_ = false;
    }
    for (;;) {
        if (stack_.empty() && !start_next_root()) return false;
        count(1);
        auto& top = stack_.top();
        const CellId here = top.cursor;
        const Cell& c = dag_->cell(here);
        if (here == top.tail) stack_.whiten_top();
        else top.cursor = c.next;
        if (c.node == kBottom) {
            emitted_ = true;
            if (stats_) {
                ++stats_->outputs;
                stats_->ops += gap_ops_;
                stats_->pushes += gap_pushes_;
                const std::uint64_t overhead = gap_ops_ > 2 * gap_pushes_ ? gap_ops_ - 2 * gap_pushes_ : 0;
                stats_->max_gap_overhead = std::max(stats_->max_gap_overhead, overhead);
            }
            gap_ops_ = 0;
            gap_pushes_ = 0;
            return true;
        }
        const Node& n = dag_->node(c.node);
        stack_.push_black({c.node, n.children.head, n.children.tail}, n.position);
        count(1, 1);
    }
}

ComplexEvent OutputCursor::complex_event() const {
    auto p = positions();
    return ComplexEvent(std::vector<std::size_t>(p.rbegin(), p.rend()));
}

} // namespace cep
