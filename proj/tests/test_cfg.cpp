#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "goising/cfg.hpp"
#include "goising/symmetry.hpp"
#include "testsupport.hpp"

using namespace goising;
namespace ts = goising::testsupport;

namespace {

Coord xy(int col, int row) {
    return Coord{static_cast<std::int16_t>(col), static_cast<std::int16_t>(row)};
}

int count_edges(const Cfg& g, CfgEdgeKind kind) {
    int n = 0;
    for (const CfgEdge& e : g.edges) n += e.kind == kind;
    return n;
}

bool has_edge(const Cfg& g, CfgEdgeKind kind, int a, int b) {
    if (a > b) std::swap(a, b);
    for (const CfgEdge& e : g.edges)
        if (e.kind == kind && e.a == a && e.b == b) return true;
    return false;
}

}  // namespace

TEST_CASE("empty board gives the empty graph") {
    Cfg g = build_cfg(Board(19));
    CHECK(g.nodes.empty());
    CHECK(g.edges.empty());
    CHECK(g.principal_count == 0);
    CHECK(g.secondary_count == 0);
}

TEST_CASE("three-chain fixture graph") {
    Cfg g = build_cfg(ts::chain_trio_board());

    REQUIRE(g.principal_count == 3);
    // node order: ascending chain id -> white 11 (id 0), black 18 (id 9),
    // white 5 (id 76)
    CHECK(g.nodes[0].chain_id == 0);
    CHECK(g.nodes[0].color == Color::White);
    CHECK(g.nodes[0].size == 11);
    CHECK(g.nodes[1].chain_id == 9);
    CHECK(g.nodes[1].color == Color::Black);
    CHECK(g.nodes[1].size == 18);
    CHECK(g.nodes[2].chain_id == 76);
    CHECK(g.nodes[2].color == Color::White);
    CHECK(g.nodes[2].size == 5);

    // distinct liberties: 6 + 16 + 6 with two points shared once each
    CHECK(g.secondary_count == 26);

    // the 11-stone chain holds exactly six liberty edges
    int white11_liberty_edges = 0;
    for (const CfgEdge& e : g.edges)
        white11_liberty_edges += e.kind == CfgEdgeKind::ChainLiberty && e.a == 0;
    CHECK(white11_liberty_edges == 6);

    CHECK(count_edges(g, CfgEdgeKind::ChainLiberty) == 6 + 16 + 6);  // sum of liberty counts
    CHECK(count_edges(g, CfgEdgeKind::SharedLiberty) == 2);
    CHECK(count_edges(g, CfgEdgeKind::ChainAdjacency) == 1);

    // one liberty shared with the white 5-stone chain, one with the black 18
    CHECK(shared_liberties(g, 0, 76) == std::vector<Coord>{xy(0, 3)});
    CHECK(shared_liberties(g, 0, 9) == std::vector<Coord>{xy(5, 0)});
    CHECK(shared_liberties(g, 9, 76).empty());
    CHECK(has_edge(g, CfgEdgeKind::SharedLiberty, 0, 2));
    CHECK(has_edge(g, CfgEdgeKind::SharedLiberty, 0, 1));
    CHECK(!has_edge(g, CfgEdgeKind::SharedLiberty, 1, 2));

    // the black chain touches the 11-stone white chain
    CHECK(has_edge(g, CfgEdgeKind::ChainAdjacency, 0, 1));

    CHECK_THROWS_AS(shared_liberties(g, 0, 1), std::out_of_range);  // 1 is not a chain id
}

TEST_CASE("graph matches brute-force oracle on random boards") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        int size = seed % 2 ? 9 : 19;
        Board b = ts::random_board(seed * 31 + 7, size, size == 9 ? 45 : 130);
        Cfg g = build_cfg(b);
        auto oracle = ts::oracle_chains(b);

        REQUIRE(g.principal_count == static_cast<int>(oracle.size()));

        // map chain id -> oracle entry (identified by minimum stone)
        std::map<int, const ts::OracleChain*> by_id;
        for (const auto& oc : oracle) by_id[*oc.stones.begin()] = &oc;

        // union of liberties == secondary nodes, in row-major order
        std::set<int> lib_union;
        for (const auto& oc : oracle) lib_union.insert(oc.liberties.begin(), oc.liberties.end());
        REQUIRE(g.secondary_count == static_cast<int>(lib_union.size()));
        {
            auto it = lib_union.begin();
            for (int k = 0; k < g.secondary_count; ++k, ++it) {
                const CfgNode& node = g.nodes[g.principal_count + k];
                CHECK(node.kind == CfgNodeKind::Secondary);
                CHECK(coord_index(node.liberty, size) == *it);
            }
        }

        int expected_chain_liberty = 0;
        for (const auto& oc : oracle) expected_chain_liberty += static_cast<int>(oc.liberties.size());
        CHECK(count_edges(g, CfgEdgeKind::ChainLiberty) == expected_chain_liberty);

        // principals ascend by id and match the oracle labels
        for (int i = 0; i < g.principal_count; ++i) {
            const CfgNode& node = g.nodes[i];
            if (i) CHECK(node.chain_id > g.nodes[i - 1].chain_id);
            REQUIRE(by_id.count(node.chain_id));
            const ts::OracleChain& oc = *by_id[node.chain_id];
            CHECK(node.color == oc.color);
            CHECK(node.size == static_cast<int>(oc.stones.size()));
        }

        // shared-liberty and adjacency edges against pairwise set oracles
        for (int i = 0; i < g.principal_count; ++i) {
            for (int j = i + 1; j < g.principal_count; ++j) {
                const ts::OracleChain& a = *by_id[g.nodes[i].chain_id];
                const ts::OracleChain& c = *by_id[g.nodes[j].chain_id];

                std::set<int> inter;
                for (int lib : a.liberties)
                    if (c.liberties.count(lib)) inter.insert(lib);
                CHECK(has_edge(g, CfgEdgeKind::SharedLiberty, i, j) == !inter.empty());

                auto shared = shared_liberties(g, g.nodes[i].chain_id, g.nodes[j].chain_id);
                std::set<int> shared_idx;
                for (Coord lc : shared) shared_idx.insert(coord_index(lc, size));
                CHECK(shared_idx == inter);

                bool touching = false;
                for (int p : a.stones) {
                    int row = p / size, col = p % size;
                    const int deltas[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
                    for (auto& d : deltas) {
                        int r = row + d[0], cc = col + d[1];
                        if (r < 0 || cc < 0 || r >= size || cc >= size) continue;
                        if (c.stones.count(r * size + cc)) touching = true;
                    }
                }
                CHECK(has_edge(g, CfgEdgeKind::ChainAdjacency, i, j) == touching);
                if (touching) CHECK(g.nodes[i].color != g.nodes[j].color);
            }
        }

        // rebuilding yields the identical graph
        Cfg again = build_cfg(b);
        CHECK(g.nodes == again.nodes);
        CHECK(g.edges == again.edges);
    }
}

TEST_CASE("graph is invariant under dihedral symmetry up to relabeling") {
    for (std::uint64_t seed = 900; seed < 912; ++seed) {
        Board b = ts::random_board(seed, 9, 40);
        Cfg g = build_cfg(b);
        for (int sym = 0; sym < kNumSymmetries; ++sym) {
            Board tb = transform_board(b, sym);
            Cfg tg = build_cfg(tb);

            CHECK(tg.principal_count == g.principal_count);
            CHECK(tg.secondary_count == g.secondary_count);
            for (auto kind : {CfgEdgeKind::ChainLiberty, CfgEdgeKind::ChainAdjacency,
                              CfgEdgeKind::SharedLiberty})
                CHECK(count_edges(tg, kind) == count_edges(g, kind));

            // exact equivariance of shared liberties through the chain-id map
            auto mapped_id = [&](int chain_id) {
                Coord c = transform_coord(coord_from_index(chain_id, 9), 9, sym);
                int idx = tg.chains.chain_at[coord_index(c, 9)];
                REQUIRE(idx >= 0);
                return tg.chains.chains[idx].id;
            };
            for (int i = 0; i < g.principal_count; ++i) {
                for (int j = i + 1; j < g.principal_count; ++j) {
                    int id_i = g.nodes[i].chain_id, id_j = g.nodes[j].chain_id;
                    std::set<int> expect;
                    for (Coord lc : shared_liberties(g, id_i, id_j))
                        expect.insert(coord_index(transform_coord(lc, 9, sym), 9));
                    std::set<int> got;
                    for (Coord lc : shared_liberties(tg, mapped_id(id_i), mapped_id(id_j)))
                        got.insert(coord_index(lc, 9));
                    CHECK(got == expect);
                }
            }
        }
    }
}

TEST_CASE("edge list text export") {
    Board b(9);
    b.set_stone(xy(0, 0), PointState::Black);
    b.set_stone(xy(2, 0), PointState::White);
    Cfg g = build_cfg(b);
    CHECK(edge_list_text(g) ==
          "chain-liberty B1@(0,0) (1,0)\n"
          "chain-liberty B1@(0,0) (0,1)\n"
          "chain-liberty W1@(2,0) (1,0)\n"
          "chain-liberty W1@(2,0) (3,0)\n"
          "chain-liberty W1@(2,0) (2,1)\n"
          "shared-liberty B1@(0,0) W1@(2,0)\n");
}
