#pragma once

#include "goising/board.hpp"

namespace goising {

// The 8 dihedral symmetries of the square board. 0 is the identity,
// 1..3 rotate by 90/180/270 degrees, 4..7 are the same after a horizontal flip.
constexpr int kNumSymmetries = 8;

constexpr Coord transform_coord(Coord c, int size, int sym) {
    std::int16_t col = c.col, row = c.row;
    const std::int16_t m = static_cast<std::int16_t>(size - 1);
    if (sym & 4) col = m - col;
    switch (sym & 3) {
        case 0: return Coord{col, row};
        case 1: return Coord{static_cast<std::int16_t>(m - row), col};
        case 2: return Coord{static_cast<std::int16_t>(m - col), static_cast<std::int16_t>(m - row)};
        default: return Coord{row, static_cast<std::int16_t>(m - col)};
    }
}

inline Board transform_board(const Board& b, int sym) {
    Board out(b.size());
    for (int row = 0; row < b.size(); ++row)
        for (int col = 0; col < b.size(); ++col) {
            Coord c{static_cast<std::int16_t>(col), static_cast<std::int16_t>(row)};
            PointState s = b.at(c);
            if (s != PointState::Empty) out.set_stone(transform_coord(c, b.size(), sym), s);
        }
    out.set_to_move(b.to_move());
    return out;
}

inline Board swap_colors(const Board& b) {
    Board out(b.size());
    for (int row = 0; row < b.size(); ++row)
        for (int col = 0; col < b.size(); ++col) {
            Coord c{static_cast<std::int16_t>(col), static_cast<std::int16_t>(row)};
            PointState s = b.at(c);
            if (s == PointState::Black) out.set_stone(c, PointState::White);
            else if (s == PointState::White) out.set_stone(c, PointState::Black);
        }
    out.set_to_move(opponent(b.to_move()));
    return out;
}

}  // namespace goising
