// SPDX-License-Identifier: Apache-2.0
#include "cep/runtime/output_dag.hpp"

#include <vector>

namespace cep {

OutputDag::OutputDag() { nodes_.push(Node{kBottomPosition, {}}); }

NodeId OutputDag::make_node(std::size_t position, NodeList children) { return nodes_.push(Node{position, children}); }

NodeList OutputDag::bottom_list() {
    CellId c = cells_.push(Cell{kBottom, kNoCell});
    return {c, c};
}

void OutputDag::add(NodeList& list, NodeId node) {
    CellId c = cells_.push(Cell{node, list.head});
    if (list.empty()) list.tail = c;
    list.head = c;
}

void OutputDag::append(NodeList& list, NodeList other) {
    if (other.empty()) return;
    if (list.empty()) {
        list = other;
        return;
    }
    cells_[list.tail].next = other.head;
    list.tail = other.tail;
}

void OutputDag::compact(std::span<NodeList* const> roots) {
    constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> cell_map(cells_.size(), kUnseen);
    std::vector<std::uint32_t> node_map(nodes_.size(), kUnseen);
    std::vector<CellId> work;
    auto visit_list = [&](NodeList l) {
        if (l.empty()) return;
        work.push_back(l.head);
        work.push_back(l.tail);
    };
    for (NodeList* r : roots) visit_list(*r);
    node_map[kBottom] = 0;
    while (!work.empty()) {
        CellId c = work.back();
        work.pop_back();
        if (c == kNoCell || cell_map[c] != kUnseen) continue;
        cell_map[c] = 0;
        const Cell& cell = cells_[c];
        work.push_back(cell.next);
        if (node_map[cell.node] == kUnseen) {
            node_map[cell.node] = 0;
            visit_list(nodes_[cell.node].children);
        }
    }
    OutputDag fresh;
    // Ids are assigned in old order; node 0 stays the sink.
    for (std::uint32_t n = 1; n < node_map.size(); ++n) {
        if (node_map[n] != kUnseen) node_map[n] = fresh.nodes_.push(Node{});
    }
    for (std::uint32_t c = 0; c < cell_map.size(); ++c) {
        if (cell_map[c] != kUnseen) cell_map[c] = fresh.cells_.push(Cell{});
    }
    auto remap = [&](NodeList l) {
        return l.empty() ? l : NodeList{cell_map[l.head], cell_map[l.tail]};
    };
    for (std::uint32_t n = 1; n < node_map.size(); ++n) {
        if (node_map[n] != kUnseen) fresh.nodes_[node_map[n]] = Node{nodes_[n].position, remap(nodes_[n].children)};
    }
    for (std::uint32_t c = 0; c < cell_map.size(); ++c) {
        if (cell_map[c] == kUnseen) continue;
        const Cell& old = cells_[c];
        fresh.cells_[cell_map[c]] = Cell{node_map[old.node], old.next == kNoCell ? kNoCell : cell_map[old.next]};
    }
    for (NodeList* r : roots) *r = remap(*r);
    *this = std::move(fresh);
}

} // namespace cep
