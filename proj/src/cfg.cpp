#include "goising/cfg.hpp"

#include <algorithm>
#include <stdexcept>

namespace goising {

const char* cfg_edge_kind_name(CfgEdgeKind k) {
    switch (k) {
        case CfgEdgeKind::ChainLiberty: return "chain-liberty";
        case CfgEdgeKind::ChainAdjacency: return "chain-adjacency";
        case CfgEdgeKind::SharedLiberty: return "shared-liberty";
    }
    return "?";
}

int Cfg::principal_index(int chain_id) const {
    int i = chains.index_of(chain_id);
    return i;  // principals occupy nodes[0..principal_count) in chain order
}

Cfg build_cfg(const Board& b) {
    Cfg g;
    g.board_size = b.size();
    g.chains = chains(b);
    const std::vector<Chain>& cs = g.chains.chains;
    const int n = static_cast<int>(cs.size());
    g.principal_count = n;

    for (const Chain& c : cs) {
        CfgNode node;
        node.kind = CfgNodeKind::Principal;
        node.chain_id = c.id;
        node.color = c.color;
        node.size = c.size();
        g.nodes.push_back(node);
    }

    // one secondary node per distinct liberty point, ascending row-major
    PointBits all_liberties;
    for (const Chain& c : cs) all_liberties.or_with(c.liberty_bits);
    std::vector<int> secondary_at(static_cast<std::size_t>(b.size()) * b.size(), -1);
    all_liberties.for_each([&](int p) {
        secondary_at[p] = static_cast<int>(g.nodes.size());
        CfgNode node;
        node.kind = CfgNodeKind::Secondary;
        node.liberty = coord_from_index(p, b.size());
        g.nodes.push_back(node);
    });
    g.secondary_count = static_cast<int>(g.nodes.size()) - n;

    for (int i = 0; i < n; ++i)
        for (Coord lib : cs[i].liberties)
            g.edges.push_back(
                {CfgEdgeKind::ChainLiberty, i, secondary_at[coord_index(lib, b.size())]});

    // adjacency between opposite-colored chains: scan each point's right and
    // down neighbor once
    for (int row = 0; row < b.size(); ++row) {
        for (int col = 0; col < b.size(); ++col) {
            int p = row * b.size() + col;
            if (b.at(p) == PointState::Empty) continue;
            int right = col + 1 < b.size() ? p + 1 : -1;
            int down = row + 1 < b.size() ? p + b.size() : -1;
            for (int q : {right, down}) {
                if (q < 0 || b.at(q) == PointState::Empty || b.at(q) == b.at(p)) continue;
                int i = g.chains.chain_at[p], j = g.chains.chain_at[q];
                g.edges.push_back({CfgEdgeKind::ChainAdjacency, std::min(i, j), std::max(i, j)});
            }
        }
    }

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cs[i].liberty_bits.intersects(cs[j].liberty_bits))
                g.edges.push_back({CfgEdgeKind::SharedLiberty, i, j});

    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
    return g;
}

std::vector<Coord> shared_liberties(const Cfg& g, int chain_i, int chain_j) {
    const Chain& a = g.chains.at(chain_i);
    const Chain& b = g.chains.at(chain_j);
    std::vector<Coord> out;
    for (Coord lib : a.liberties)
        if (b.liberty_bits.test(coord_index(lib, g.board_size))) out.push_back(lib);
    return out;
}

std::string edge_list_text(const Cfg& g) {
    auto label = [&](int node_index) {
        const CfgNode& node = g.nodes[node_index];
        if (node.kind == CfgNodeKind::Secondary) return coord_text(node.liberty);
        return std::string(1, color_char(node.color)) + std::to_string(node.size) + "@" +
               coord_text(coord_from_index(node.chain_id, g.board_size));
    };
    std::string out;
    for (const CfgEdge& e : g.edges) {
        out += cfg_edge_kind_name(e.kind);
        out += ' ';
        out += label(e.a);
        out += ' ';
        out += label(e.b);
        out += '\n';
    }
    return out;
}

}  // namespace goising
