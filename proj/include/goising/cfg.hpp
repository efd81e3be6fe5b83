#pragma once

#include <string>
#include <vector>

#include "goising/board.hpp"

namespace goising {

// Common Fate Graph of a position: every chain is a size-labeled principal
// node, every liberty point a secondary node. Edges record which liberties
// belong to which chain, which chains touch, and which share liberties.

enum class CfgNodeKind : std::uint8_t { Principal, Secondary };

struct CfgNode {
    CfgNodeKind kind = CfgNodeKind::Principal;
    // Principal fields
    int chain_id = -1;
    Color color = Color::Black;
    int size = 0;
    // Secondary field
    Coord liberty{};

    friend bool operator==(const CfgNode&, const CfgNode&) = default;
};

enum class CfgEdgeKind : std::uint8_t { ChainLiberty, ChainAdjacency, SharedLiberty };

const char* cfg_edge_kind_name(CfgEdgeKind k);

struct CfgEdge {
    CfgEdgeKind kind = CfgEdgeKind::ChainLiberty;
    int a = 0;  // index into Cfg::nodes, always < b
    int b = 0;

    friend bool operator==(const CfgEdge&, const CfgEdge&) = default;
    friend bool operator<(const CfgEdge& x, const CfgEdge& y) {
        if (x.kind != y.kind) return x.kind < y.kind;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    }
};

struct Cfg {
    // Principal nodes first (ascending chain id), then secondary nodes
    // (ascending row-major liberty point).
    std::vector<CfgNode> nodes;
    // Sorted by (kind, a, b); ChainLiberty edges connect a principal to a
    // secondary, the other kinds connect two principals.
    std::vector<CfgEdge> edges;
    // The underlying partition the graph was built from.
    ChainSet chains;
    int board_size = 0;

    int principal_count = 0;
    int secondary_count = 0;

    // Node index of a chain's principal, -1 if the id is unknown.
    int principal_index(int chain_id) const;
};

// Rebuilds the graph from scratch; pure function of the position.
Cfg build_cfg(const Board& b);

// Exact intersection of two chains' liberty sets, sorted row-major.
// Throws std::out_of_range on an unknown chain id.
std::vector<Coord> shared_liberties(const Cfg& g, int chain_i, int chain_j);

// Debug export: one line per edge, "kind endpoint endpoint". Principals are
// labeled like "W11@(0,0)" (color, size, minimum stone), secondaries by their
// point.
std::string edge_list_text(const Cfg& g);

}  // namespace goising
