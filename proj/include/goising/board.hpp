#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace goising {

enum class Color : std::uint8_t { Black = 0, White = 1 };

constexpr Color opponent(Color c) {
    return c == Color::Black ? Color::White : Color::Black;
}

constexpr char color_char(Color c) { return c == Color::Black ? 'B' : 'W'; }

enum class PointState : std::uint8_t { Empty = 0, Black = 1, White = 2 };

constexpr PointState to_point(Color c) {
    return c == Color::Black ? PointState::Black : PointState::White;
}

struct Coord {
    std::int16_t col = 0;
    std::int16_t row = 0;

    friend constexpr bool operator==(Coord a, Coord b) {
        return a.col == b.col && a.row == b.row;
    }
    // row-major order, the canonical ordering everywhere in this project
    friend constexpr bool operator<(Coord a, Coord b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    }
};

constexpr int coord_index(Coord c, int size) { return c.row * size + c.col; }
constexpr Coord coord_from_index(int idx, int size) {
    return Coord{static_cast<std::int16_t>(idx % size), static_cast<std::int16_t>(idx / size)};
}

std::string coord_text(Coord c);  // "(col,row)"

// 361-bit set indexed by row-major point index. Works for all supported sizes.
struct PointBits {
    std::array<std::uint64_t, 6> w{};

    void set(int idx) { w[idx >> 6] |= std::uint64_t{1} << (idx & 63); }
    void clear(int idx) { w[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63)); }
    bool test(int idx) const { return (w[idx >> 6] >> (idx & 63)) & 1; }
    void or_with(const PointBits& o) {
        for (int i = 0; i < 6; ++i) w[i] |= o.w[i];
    }
    int count() const;
    bool intersects(const PointBits& o) const;
    int and_count(const PointBits& o) const;
    bool any() const;
    // visits set bits in ascending (row-major) order
    template <typename F>
    void for_each(F&& f) const {
        for (int wi = 0; wi < 6; ++wi) {
            std::uint64_t bits = w[wi];
            while (bits) {
                int b = __builtin_ctzll(bits);
                f(wi * 64 + b);
                bits &= bits - 1;
            }
        }
    }
    friend bool operator==(const PointBits&, const PointBits&) = default;
};

enum class IllegalMoveKind : std::uint8_t { OffBoard, Occupied, Suicide, Ko };

const char* illegal_move_name(IllegalMoveKind k);

class IllegalMove : public std::runtime_error {
  public:
    IllegalMove(IllegalMoveKind kind, Color color, Coord at);
    IllegalMoveKind kind;
    Color color;
    Coord at;
};

// Maximal orthogonally-connected same-color group ("compound stone").
// id = row-major index of the chain's minimum stone; stable across rebuilds
// of the same position.
struct Chain {
    int id = -1;
    Color color = Color::Black;
    std::vector<Coord> stones;     // sorted row-major
    std::vector<Coord> liberties;  // sorted row-major
    PointBits liberty_bits;
    // stone bounding box
    std::int16_t min_row = 0, max_row = 0, min_col = 0, max_col = 0;

    int size() const { return static_cast<int>(stones.size()); }
    int liberty_count() const { return static_cast<int>(liberties.size()); }
};

// Full partition of the occupied points plus a point -> chain lookup.
struct ChainSet {
    std::vector<Chain> chains;   // ordered by id
    std::vector<int> chain_at;   // size*size entries, index into chains or -1

    const Chain* find(int id) const;
    const Chain& at(int id) const;  // throws std::out_of_range on unknown id
    int index_of(int id) const;     // -1 if unknown
};

enum class ScoringMethod : std::uint8_t { Area, TerritoryPlusCaptures };

struct Score {
    double black_points = 0.0;  // komi not included
    double white_points = 0.0;
    double komi = 0.0;
    ScoringMethod method = ScoringMethod::TerritoryPlusCaptures;

    std::optional<Color> winner() const;  // nullopt on a drawn count
    double margin() const;                // |black - (white + komi)|
};

class Board {
  public:
    explicit Board(int size);  // size must be 9, 13 or 19

    static bool supported_size(int size) { return size == 9 || size == 13 || size == 19; }

    int size() const { return size_; }
    PointState at(Coord c) const { return grid_[coord_index(c, size_)]; }
    PointState at(int idx) const { return grid_[idx]; }
    bool on_board(Coord c) const {
        return c.col >= 0 && c.row >= 0 && c.col < size_ && c.row < size_;
    }
    bool is_empty(Coord c) const { return at(c) == PointState::Empty; }

    Color to_move() const { return to_move_; }
    void set_to_move(Color c) { to_move_ = c; }

    // prisoners taken BY the given color
    int captures(Color c) const { return captures_[static_cast<int>(c)]; }

    int stones_on_board(Color c) const;

    // Plays a move with full rules: merge, capture, suicide rejection, simple ko.
    // On success commits the move and returns nullopt; captured points (sorted
    // row-major) are appended to *captured when provided. On failure the board
    // is unchanged and the error kind is returned.
    std::optional<IllegalMoveKind> try_play(Color color, Coord at,
                                            std::vector<Coord>* captured = nullptr);

    // Throwing wrapper around try_play; returns the captured points.
    std::vector<Coord> play(Color color, Coord at);

    bool legal(Color color, Coord at) const;

    void pass(Color color);

    // Setup placement (SGF AB/AW, fixtures): writes the grid directly, no
    // capture processing, resets any ko context.
    void set_stone(Coord at, PointState s);

    // Zobrist hash of the stone configuration only.
    std::uint64_t position_hash() const { return hash_; }

    Score score(double komi, ScoringMethod method) const;

    std::string to_text() const;  // ascii diagram, debugging aid

    friend bool operator==(const Board& a, const Board& b) {
        return a.size_ == b.size_ && a.grid_ == b.grid_;
    }

  private:
    int liberties_and_chain(int start, int* chain_points, int* n_points) const;
    void remove_chain(const int* points, int n, Color color);

    int size_;
    std::vector<PointState> grid_;
    std::array<int, 2> captures_{0, 0};
    Color to_move_ = Color::Black;
    std::uint64_t hash_ = 0;
    // hash of the position before the last move; simple ko forbids recreating it
    std::optional<std::uint64_t> prev_position_hash_;
};

Board empty_board(int size);

// Recomputes the chain partition from the raw grid. Chains come out ordered
// by id, with stones and liberties sorted row-major.
ChainSet chains(const Board& b);

Score score(const Board& b, double komi, ScoringMethod method);

}  // namespace goising
