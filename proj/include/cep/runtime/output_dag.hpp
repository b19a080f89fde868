// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

#include "cep/runtime/arena.hpp"

namespace cep {

using NodeId = std::uint32_t;
using CellId = std::uint32_t;

inline constexpr CellId kNoCell = std::numeric_limits<CellId>::max();
// The sink every path ends in.
inline constexpr NodeId kBottom = 0;
inline constexpr std::size_t kBottomPosition = std::numeric_limits<std::size_t>::max();

// Persistent list view: traversal runs from head and stops after tail.
struct NodeList {
    CellId head = kNoCell;
    CellId tail = kNoCell;
    bool empty() const { return head == kNoCell; }
    friend bool operator==(const NodeList&, const NodeList&) = default;
};

struct Node {
    std::size_t position;
    NodeList children;
};

struct Cell {
    NodeId node;
    CellId next;
};

// Shared DAG of output nodes. Lists only grow: add() prepends a fresh cell and
// append() links the current tail to another list, so a copied NodeList is an
// immutable snapshot.
class OutputDag {
public:
    OutputDag();

    NodeId make_node(std::size_t position, NodeList children);
    // A fresh single-cell list holding the sink.
    NodeList bottom_list();
    void add(NodeList& list, NodeId node);
    void append(NodeList& list, NodeList other);

    const Node& node(NodeId id) const { return nodes_[id]; }
    const Cell& cell(CellId id) const { return cells_[id]; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t cell_count() const { return cells_.size(); }
    std::size_t used_bytes() const { return nodes_.size() * sizeof(Node) + cells_.size() * sizeof(Cell); }
    std::size_t reserved_bytes() const { return nodes_.reserved_bytes() + cells_.reserved_bytes(); }

    // Copies everything reachable from `roots` into fresh storage, rewriting the
    // roots in place. Other lists and outstanding snapshots become invalid.
    void compact(std::span<NodeList* const> roots);

private:
    ChunkedArena<Node> nodes_;
    ChunkedArena<Cell> cells_;
};

} // namespace cep
