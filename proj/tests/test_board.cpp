#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "goising/board.hpp"
#include "goising/symmetry.hpp"
#include "testsupport.hpp"

using namespace goising;
namespace ts = goising::testsupport;

namespace {

Coord xy(int col, int row) {
    return Coord{static_cast<std::int16_t>(col), static_cast<std::int16_t>(row)};
}

std::set<int> index_set(const std::vector<Coord>& coords, int size) {
    std::set<int> out;
    for (Coord c : coords) out.insert(coord_index(c, size));
    return out;
}

}  // namespace

TEST_CASE("empty_board sizes") {
    CHECK(empty_board(19).size() == 19);
    int empties = 0;
    Board b19 = empty_board(19);
    for (int i = 0; i < 19 * 19; ++i) empties += b19.at(i) == PointState::Empty;
    CHECK(empties == 361);

    Board b9 = empty_board(9);
    empties = 0;
    for (int i = 0; i < 9 * 9; ++i) empties += b9.at(i) == PointState::Empty;
    CHECK(empties == 81);
    CHECK(b9.captures(Color::Black) == 0);
    CHECK(b9.captures(Color::White) == 0);
    CHECK(b9.to_move() == Color::Black);

    CHECK_THROWS_WITH_AS(empty_board(8), doctest::Contains("unsupported size"),
                         std::invalid_argument);
    CHECK_THROWS_AS(empty_board(0), std::invalid_argument);
}

TEST_CASE("single stone capture") {
    Board b(19);
    // black stone at (5,5) surrounded on three sides, white takes the last liberty
    b.set_stone(xy(5, 5), PointState::Black);
    b.set_stone(xy(4, 5), PointState::White);
    b.set_stone(xy(6, 5), PointState::White);
    b.set_stone(xy(5, 4), PointState::White);
    auto captured = b.play(Color::White, xy(5, 6));
    CHECK(captured == std::vector<Coord>{xy(5, 5)});
    CHECK(b.at(xy(5, 5)) == PointState::Empty);
    CHECK(b.captures(Color::White) == 1);
    CHECK(b.captures(Color::Black) == 0);
}

TEST_CASE("occupied and off-board moves") {
    Board b(9);
    b.play(Color::Black, xy(4, 4));
    CHECK_THROWS_AS(b.play(Color::White, xy(4, 4)), IllegalMove);
    try {
        b.play(Color::White, xy(4, 4));
    } catch (const IllegalMove& e) {
        CHECK(e.kind == IllegalMoveKind::Occupied);
    }
    try {
        b.play(Color::White, xy(9, 0));
    } catch (const IllegalMove& e) {
        CHECK(e.kind == IllegalMoveKind::OffBoard);
    }
}

TEST_CASE("suicide rejected") {
    Board b(9);
    // white plays inside a black diamond: zero liberties, no capture
    b.set_stone(xy(4, 3), PointState::Black);
    b.set_stone(xy(4, 5), PointState::Black);
    b.set_stone(xy(3, 4), PointState::Black);
    b.set_stone(xy(5, 4), PointState::Black);
    auto err = b.try_play(Color::White, xy(4, 4));
    REQUIRE(err.has_value());
    CHECK(*err == IllegalMoveKind::Suicide);
    CHECK(b.at(xy(4, 4)) == PointState::Empty);
    // but the same point is a legal capture for the side with outside support
    CHECK(b.legal(Color::Black, xy(4, 4)));
}

TEST_CASE("simple ko forbidden, board restored on rejection") {
    Board b(19);
    // . B W .
    // B W . W   <- black takes the marked white stone; the recapture is ko
    // . B W .
    b.set_stone(xy(1, 0), PointState::Black);
    b.set_stone(xy(0, 1), PointState::Black);
    b.set_stone(xy(1, 2), PointState::Black);
    b.set_stone(xy(2, 0), PointState::White);
    b.set_stone(xy(3, 1), PointState::White);
    b.set_stone(xy(2, 2), PointState::White);
    b.set_stone(xy(1, 1), PointState::White);  // the ko stone

    std::uint64_t h0 = b.position_hash();
    auto captured = b.play(Color::Black, xy(2, 1));  // takes the ko
    CHECK(captured == std::vector<Coord>{xy(1, 1)});

    auto err = b.try_play(Color::White, xy(1, 1));  // immediate recapture recreates h0
    REQUIRE(err.has_value());
    CHECK(*err == IllegalMoveKind::Ko);
    CHECK(b.at(xy(1, 1)) == PointState::Empty);
    CHECK(b.at(xy(2, 1)) == PointState::Black);

    // after a ko threat exchange elsewhere, the recapture is legal again
    b.play(Color::White, xy(15, 15));
    b.play(Color::Black, xy(16, 16));
    auto recaptured = b.play(Color::White, xy(1, 1));
    CHECK(recaptured == std::vector<Coord>{xy(2, 1)});
    CHECK(b.position_hash() != h0);  // extra exchange stones are on the board
}

TEST_CASE("captures match flood-fill oracle over random playouts") {
    int checked = 0;
    for (int size : {9, 19}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            std::mt19937_64 rng(seed * 977 + size);
            Board b(size);
            Color color = Color::Black;
            for (int mv = 0; mv < 120; ++mv) {
                auto at = ts::random_legal_move(rng, b, color);
                if (!at) break;
                std::set<int> expected = ts::oracle_removed_stones(b, color, *at);
                auto captured = b.play(color, *at);
                CHECK(index_set(captured, size) == expected);
                ++checked;
                color = opponent(color);
            }
        }
    }
    CHECK(checked >= 1000);
}

TEST_CASE("chains: empty board and three-chain fixture") {
    CHECK(chains(Board(19)).chains.empty());

    // 11-stone white chain in the top-left with six liberties, a 5-stone white
    // chain below sharing one of them, an 18-stone black chain at the right
    // sharing another
    Board b = ts::chain_trio_board();
    ChainSet cs = chains(b);
    REQUIRE(cs.chains.size() == 3);

    const Chain* big_white = cs.find(coord_index(xy(0, 0), 19));
    REQUIRE(big_white != nullptr);
    CHECK(big_white->color == Color::White);
    CHECK(big_white->size() == 11);
    CHECK(big_white->liberty_count() == 6);

    const Chain* small_white = cs.find(coord_index(xy(0, 4), 19));
    REQUIRE(small_white != nullptr);
    CHECK(small_white->size() == 5);

    const Chain* black = cs.find(coord_index(xy(9, 0), 19));
    REQUIRE(black != nullptr);
    CHECK(black->color == Color::Black);
    CHECK(black->size() == 18);

    // shared liberties per the figure: exactly one with each neighbor chain
    CHECK(big_white->liberty_bits.and_count(small_white->liberty_bits) == 1);
    CHECK(big_white->liberty_bits.and_count(black->liberty_bits) == 1);
}

TEST_CASE("chains partition matches oracle on random boards") {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        int size = seed % 2 ? 9 : 19;
        Board b = ts::random_board(seed, size, size == 9 ? 50 : 140);
        auto expected = ts::oracle_chains(b);
        ChainSet cs = chains(b);
        REQUIRE(cs.chains.size() == expected.size());

        std::set<int> all_stones;
        int occupied = 0;
        for (int p = 0; p < size * size; ++p) occupied += b.at(p) != PointState::Empty;
        for (const Chain& chain : cs.chains) {
            // find the oracle chain with the same minimum stone
            bool matched = false;
            for (const auto& oc : expected) {
                if (*oc.stones.begin() != chain.id) continue;
                matched = true;
                CHECK(oc.color == chain.color);
                CHECK(index_set(chain.stones, size) == oc.stones);
                CHECK(index_set(chain.liberties, size) == oc.liberties);
            }
            CHECK(matched);
            for (Coord c : chain.stones) {
                CHECK(!all_stones.count(coord_index(c, size)));  // pairwise disjoint
                all_stones.insert(coord_index(c, size));
            }
            CHECK(chain.liberty_count() >= 1);  // no zero-liberty chain on a legal board
        }
        CHECK(static_cast<int>(all_stones.size()) == occupied);
    }
}

TEST_CASE("scoring") {
    SUBCASE("empty board counts for neither") {
        Score s = Board(19).score(0.0, ScoringMethod::Area);
        CHECK(s.black_points == 0.0);
        CHECK(s.white_points == 0.0);
        CHECK(!s.winner().has_value());
    }

    SUBCASE("all black except one point, area") {
        Board b(9);
        for (int p = 1; p < 81; ++p) b.set_stone(coord_from_index(p, 9), PointState::Black);
        Score s = b.score(6.5, ScoringMethod::Area);
        CHECK(s.black_points == 81.0);
        CHECK(s.white_points == 0.0);
        CHECK(s.winner() == Color::Black);
        CHECK(s.margin() == doctest::Approx(81.0 - 6.5));
    }

    SUBCASE("two sealed territories with known sizes") {
        // col 3 black wall, col 5 white wall on a 9x9: black owns cols 0-2
        // (27 points), white owns cols 6-8 (27), col 4 is neutral
        Board b(9);
        for (int row = 0; row < 9; ++row) {
            b.set_stone(xy(3, row), PointState::Black);
            b.set_stone(xy(5, row), PointState::White);
        }
        Score area = b.score(0.0, ScoringMethod::Area);
        CHECK(area.black_points == 27 + 9);
        CHECK(area.white_points == 27 + 9);
        Score terr = b.score(0.0, ScoringMethod::TerritoryPlusCaptures);
        CHECK(terr.black_points == 27);
        CHECK(terr.white_points == 27);

        // captures feed the territory method
        b.set_stone(xy(4, 0), PointState::White);
        b.play(Color::Black, xy(4, 1));  // not a capture, just stones in the neutral zone
        Score terr2 = b.score(0.0, ScoringMethod::TerritoryPlusCaptures);
        CHECK(terr2.black_points == 27);
        CHECK(terr2.white_points == 27);
    }
}

TEST_CASE("capture counts equal stones placed minus stones on board") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        Board b(9);
        int placed[2] = {0, 0};
        auto game = ts::random_game(seed, 9, 130);
        for (auto [color, at] : game) {
            b.play(color, at);
            ++placed[static_cast<int>(color)];
        }
        CHECK(b.captures(Color::White) == placed[0] - b.stones_on_board(Color::Black));
        CHECK(b.captures(Color::Black) == placed[1] - b.stones_on_board(Color::White));
    }
}

TEST_CASE("place_stone is deterministic and chains() has no hidden state") {
    auto game = ts::random_game(7, 9, 90);
    Board a(9), b(9);
    for (auto [color, at] : game) {
        a.play(color, at);
        b.play(color, at);
    }
    CHECK(a == b);
    CHECK(a.position_hash() == b.position_hash());

    ChainSet c1 = chains(a);
    ChainSet c2 = chains(a);
    REQUIRE(c1.chains.size() == c2.chains.size());
    for (std::size_t i = 0; i < c1.chains.size(); ++i) {
        CHECK(c1.chains[i].id == c2.chains[i].id);
        CHECK(c1.chains[i].stones == c2.chains[i].stones);
        CHECK(c1.chains[i].liberties == c2.chains[i].liberties);
    }
}

TEST_CASE("dihedral equivariance of play") {
    for (std::uint64_t seed = 40; seed < 48; ++seed) {
        auto game = ts::random_game(seed, 9, 60);
        for (int sym = 0; sym < kNumSymmetries; ++sym) {
            Board plain(9), transformed(9);
            for (auto [color, at] : game) {
                plain.play(color, at);
                transformed.play(color, transform_coord(at, 9, sym));
            }
            Board expected = transform_board(plain, sym);
            for (int p = 0; p < 81; ++p) CHECK(transformed.at(p) == expected.at(p));
        }
    }
}
