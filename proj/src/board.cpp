#include "goising/board.hpp"

#include <algorithm>
#include <sstream>

namespace goising {

namespace {

constexpr int kMaxPoints = 19 * 19;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct ZobristTable {
    std::array<std::array<std::uint64_t, kMaxPoints>, 2> keys;
    ZobristTable() {
        std::uint64_t state = 0x6f6973696e67ULL;  // fixed seed, reproducible hashes
        for (auto& color_keys : keys)
            for (auto& k : color_keys) k = splitmix64(state);
    }
};

const ZobristTable& zobrist() {
    static const ZobristTable table;
    return table;
}

std::uint64_t point_key(int idx, PointState s) {
    if (s == PointState::Empty) return 0;
    return zobrist().keys[s == PointState::Black ? 0 : 1][idx];
}

// Per-thread flood-fill scratch. Keeps Board itself a plain value.
struct Scratch {
    std::array<std::uint32_t, kMaxPoints> mark{};
    std::uint32_t stamp = 0;
    std::array<int, kMaxPoints> stack;

    std::uint32_t next_stamp() {
        if (++stamp == 0) {
            mark.fill(0);
            stamp = 1;
        }
        return stamp;
    }
};

Scratch& scratch() {
    thread_local Scratch s;
    return s;
}

}  // namespace

std::string coord_text(Coord c) {
    return "(" + std::to_string(c.col) + "," + std::to_string(c.row) + ")";
}

int PointBits::count() const {
    int n = 0;
    for (auto word : w) n += __builtin_popcountll(word);
    return n;
}

bool PointBits::intersects(const PointBits& o) const {
    for (int i = 0; i < 6; ++i)
        if (w[i] & o.w[i]) return true;
    return false;
}

int PointBits::and_count(const PointBits& o) const {
    int n = 0;
    for (int i = 0; i < 6; ++i) n += __builtin_popcountll(w[i] & o.w[i]);
    return n;
}

bool PointBits::any() const {
    for (auto word : w)
        if (word) return true;
    return false;
}

const char* illegal_move_name(IllegalMoveKind k) {
    switch (k) {
        case IllegalMoveKind::OffBoard: return "off board";
        case IllegalMoveKind::Occupied: return "occupied point";
        case IllegalMoveKind::Suicide: return "suicide";
        case IllegalMoveKind::Ko: return "ko violation";
    }
    return "?";
}

IllegalMove::IllegalMove(IllegalMoveKind kind_, Color color_, Coord at_)
    : std::runtime_error(std::string(illegal_move_name(kind_)) + " at " + coord_text(at_) +
                         " for " + color_char(color_)),
      kind(kind_),
      color(color_),
      at(at_) {}

const Chain* ChainSet::find(int id) const {
    auto it = std::lower_bound(chains.begin(), chains.end(), id,
                               [](const Chain& c, int v) { return c.id < v; });
    if (it == chains.end() || it->id != id) return nullptr;
    return &*it;
}

const Chain& ChainSet::at(int id) const {
    const Chain* c = find(id);
    if (!c) throw std::out_of_range("unknown chain id " + std::to_string(id));
    return *c;
}

int ChainSet::index_of(int id) const {
    const Chain* c = find(id);
    return c ? static_cast<int>(c - chains.data()) : -1;
}

std::optional<Color> Score::winner() const {
    double b = black_points;
    double w = white_points + komi;
    if (b > w) return Color::Black;
    if (w > b) return Color::White;
    return std::nullopt;
}

double Score::margin() const {
    double d = black_points - (white_points + komi);
    return d < 0 ? -d : d;
}

Board::Board(int size) : size_(size) {
    if (!supported_size(size))
        throw std::invalid_argument("unsupported size: " + std::to_string(size));
    grid_.assign(static_cast<std::size_t>(size) * size, PointState::Empty);
}

Board empty_board(int size) { return Board(size); }

int Board::stones_on_board(Color c) const {
    PointState want = to_point(c);
    int n = 0;
    for (PointState s : grid_) n += (s == want);
    return n;
}

// Flood fill from `start`, collecting the chain's points into chain_points and
// returning its liberty count. Marks visited stones and counted liberties with
// the current scratch stamp.
int Board::liberties_and_chain(int start, int* chain_points, int* n_points) const {
    Scratch& s = scratch();
    std::uint32_t stamp = s.next_stamp();
    PointState color = grid_[start];

    int libs = 0;
    int n = 0;
    int top = 0;
    s.stack[top++] = start;
    s.mark[start] = stamp;

    const int size = size_;
    while (top) {
        int p = s.stack[--top];
        chain_points[n++] = p;
        const int row = p / size, col = p % size;
        const int nbrs[4] = {col > 0 ? p - 1 : -1, col < size - 1 ? p + 1 : -1,
                             row > 0 ? p - size : -1, row < size - 1 ? p + size : -1};
        for (int q : nbrs) {
            if (q < 0 || s.mark[q] == stamp) continue;
            if (grid_[q] == PointState::Empty) {
                s.mark[q] = stamp;
                ++libs;
            } else if (grid_[q] == color) {
                s.mark[q] = stamp;
                s.stack[top++] = q;
            }
        }
    }
    *n_points = n;
    return libs;
}

void Board::remove_chain(const int* points, int n, Color color) {
    for (int i = 0; i < n; ++i) {
        hash_ ^= point_key(points[i], to_point(color));
        grid_[points[i]] = PointState::Empty;
    }
}

std::optional<IllegalMoveKind> Board::try_play(Color color, Coord at,
                                               std::vector<Coord>* captured) {
    if (!on_board(at)) return IllegalMoveKind::OffBoard;
    const int p = coord_index(at, size_);
    if (grid_[p] != PointState::Empty) return IllegalMoveKind::Occupied;

    const std::uint64_t hash_before = hash_;
    const PointState own = to_point(color);
    const PointState enemy = to_point(opponent(color));

    grid_[p] = own;
    hash_ ^= point_key(p, own);

    // capture adjacent enemy chains left with no liberties
    int removed[kMaxPoints];
    int n_removed = 0;
    int chain_buf[kMaxPoints];
    const int row = at.row, col = at.col;
    const int nbrs[4] = {col > 0 ? p - 1 : -1, col < size_ - 1 ? p + 1 : -1,
                         row > 0 ? p - size_ : -1, row < size_ - 1 ? p + size_ : -1};
    for (int q : nbrs) {
        // captured chains become Empty, so a second neighbor in the same chain is skipped
        if (q < 0 || grid_[q] != enemy) continue;
        int n = 0;
        if (liberties_and_chain(q, chain_buf, &n) == 0) {
            remove_chain(chain_buf, n, opponent(color));
            for (int i = 0; i < n; ++i) removed[n_removed++] = chain_buf[i];
        }
    }

    auto restore = [&] {
        for (int i = 0; i < n_removed; ++i) grid_[removed[i]] = enemy;
        grid_[p] = PointState::Empty;
        hash_ = hash_before;
    };

    // suicide check on the resulting own chain
    int n_own = 0;
    if (liberties_and_chain(p, chain_buf, &n_own) == 0) {
        restore();
        return IllegalMoveKind::Suicide;
    }

    // simple ko: the result may not recreate the position before the last move
    if (prev_position_hash_ && hash_ == *prev_position_hash_) {
        restore();
        return IllegalMoveKind::Ko;
    }

    captures_[static_cast<int>(color)] += n_removed;
    prev_position_hash_ = hash_before;
    to_move_ = opponent(color);

    if (captured) {
        std::sort(removed, removed + n_removed);
        for (int i = 0; i < n_removed; ++i)
            captured->push_back(coord_from_index(removed[i], size_));
    }
    return std::nullopt;
}

std::vector<Coord> Board::play(Color color, Coord at) {
    std::vector<Coord> captured;
    if (auto err = try_play(color, at, &captured)) throw IllegalMove(*err, color, at);
    return captured;
}

bool Board::legal(Color color, Coord at) const {
    if (!on_board(at) || grid_[coord_index(at, size_)] != PointState::Empty) return false;
    Board trial(*this);
    return !trial.try_play(color, at).has_value();
}

void Board::pass(Color color) {
    prev_position_hash_ = hash_;
    to_move_ = opponent(color);
}

void Board::set_stone(Coord at, PointState s) {
    if (!on_board(at)) throw IllegalMove(IllegalMoveKind::OffBoard, Color::Black, at);
    const int p = coord_index(at, size_);
    hash_ ^= point_key(p, grid_[p]);
    grid_[p] = s;
    hash_ ^= point_key(p, s);
    prev_position_hash_.reset();
}

ChainSet chains(const Board& b) {
    const int size = b.size();
    const int n_points = size * size;

    ChainSet result;
    result.chain_at.assign(n_points, -1);

    std::vector<bool> seen(n_points, false);
    std::vector<int> stack;
    stack.reserve(n_points);

    for (int start = 0; start < n_points; ++start) {
        if (seen[start] || b.at(start) == PointState::Empty) continue;
        const PointState color = b.at(start);

        Chain chain;
        chain.id = start;  // row-major scan: first point reached is the minimum
        chain.color = color == PointState::Black ? Color::Black : Color::White;
        chain.min_row = chain.max_row = static_cast<std::int16_t>(start / size);
        chain.min_col = chain.max_col = static_cast<std::int16_t>(start % size);

        stack.push_back(start);
        seen[start] = true;
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            Coord c = coord_from_index(p, size);
            chain.stones.push_back(c);
            chain.min_row = std::min(chain.min_row, c.row);
            chain.max_row = std::max(chain.max_row, c.row);
            chain.min_col = std::min(chain.min_col, c.col);
            chain.max_col = std::max(chain.max_col, c.col);

            const int row = c.row, col = c.col;
            const int nbrs[4] = {col > 0 ? p - 1 : -1, col < size - 1 ? p + 1 : -1,
                                 row > 0 ? p - size : -1, row < size - 1 ? p + size : -1};
            for (int q : nbrs) {
                if (q < 0) continue;
                if (b.at(q) == PointState::Empty) {
                    chain.liberty_bits.set(q);
                } else if (b.at(q) == color && !seen[q]) {
                    seen[q] = true;
                    stack.push_back(q);
                }
            }
        }

        std::sort(chain.stones.begin(), chain.stones.end());
        chain.liberty_bits.for_each(
            [&](int q) { chain.liberties.push_back(coord_from_index(q, size)); });
        result.chains.push_back(std::move(chain));
    }

    for (std::size_t i = 0; i < result.chains.size(); ++i)
        for (Coord c : result.chains[i].stones)
            result.chain_at[coord_index(c, size)] = static_cast<int>(i);
    return result;
}

Score Board::score(double komi, ScoringMethod method) const {
    const int n_points = size_ * size_;
    std::vector<bool> seen(n_points, false);
    std::vector<int> stack;

    double territory[2] = {0, 0};
    for (int start = 0; start < n_points; ++start) {
        if (seen[start] || grid_[start] != PointState::Empty) continue;
        // flood one empty region, recording which colors border it
        int region_size = 0;
        bool borders[2] = {false, false};
        stack.push_back(start);
        seen[start] = true;
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            ++region_size;
            const int row = p / size_, col = p % size_;
            const int nbrs[4] = {col > 0 ? p - 1 : -1, col < size_ - 1 ? p + 1 : -1,
                                 row > 0 ? p - size_ : -1, row < size_ - 1 ? p + size_ : -1};
            for (int q : nbrs) {
                if (q < 0) continue;
                if (grid_[q] == PointState::Empty) {
                    if (!seen[q]) {
                        seen[q] = true;
                        stack.push_back(q);
                    }
                } else {
                    borders[grid_[q] == PointState::Black ? 0 : 1] = true;
                }
            }
        }
        // territory only when bordered by exactly one color; a region bordered
        // by none (e.g. the empty board) counts for neither
        if (borders[0] != borders[1]) territory[borders[0] ? 0 : 1] += region_size;
    }

    Score s;
    s.komi = komi;
    s.method = method;
    if (method == ScoringMethod::Area) {
        s.black_points = territory[0] + stones_on_board(Color::Black);
        s.white_points = territory[1] + stones_on_board(Color::White);
    } else {
        s.black_points = territory[0] + captures_[0];
        s.white_points = territory[1] + captures_[1];
    }
    return s;
}

Score score(const Board& b, double komi, ScoringMethod method) {
    return b.score(komi, method);
}

std::string Board::to_text() const {
    std::ostringstream out;
    for (int row = 0; row < size_; ++row) {
        for (int col = 0; col < size_; ++col) {
            PointState s = grid_[row * size_ + col];
            out << (s == PointState::Empty ? '.' : s == PointState::Black ? 'X' : 'O');
            if (col + 1 < size_) out << ' ';
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace goising
