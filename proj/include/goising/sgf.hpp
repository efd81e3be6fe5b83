#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "goising/board.hpp"

namespace goising {

// Structured parse failure with the byte offset into the input where the
// problem was detected. The parser reports errors this way for arbitrary
// input bytes; it never aborts.
class SgfError : public std::runtime_error {
  public:
    SgfError(const std::string& what, std::size_t offset);
    std::size_t offset;
};

struct SgfProperty {
    std::string ident;                // nonempty, uppercase ASCII letters
    std::vector<std::string> values;  // unescaped raw values

    friend bool operator==(const SgfProperty&, const SgfProperty&) = default;
};

// Parsed RE property. `raw` always keeps the original text; the parsed view
// covers the common forms ("B+3.5", "W+R", "W+Resign", "0", "Draw") and
// leaves everything else as winner-unknown.
struct GameResult {
    std::optional<Color> winner;   // nullopt: draw, void result, or unparseable
    std::optional<double> margin;  // set for counted wins like "B+3.5"
    bool by_resignation = false;
    bool is_draw = false;
    std::string raw;

    bool known() const { return winner.has_value() || is_draw; }
};

GameResult parse_result(std::string_view raw);
// "B+3.5" / "W+R" / "0" for counted, resignation and drawn results.
std::string format_result(const GameResult& r);

struct Move {
    Color color = Color::Black;
    std::optional<Coord> at;  // nullopt = pass

    bool is_pass() const { return !at.has_value(); }
    friend bool operator==(const Move&, const Move&) = default;
};

struct GameRecord {
    int size = 19;
    double komi = 0.0;
    bool has_komi = false;  // true iff the record carried a KM property
    std::string black_player;
    std::string white_player;
    GameResult result;
    std::vector<Coord> setup_black;  // AB
    std::vector<Coord> setup_white;  // AW
    std::vector<Move> moves;
    std::string date;   // DT
    std::string event;  // EV
    // Root properties not interpreted above, kept in order so serialization
    // stays lossless for them.
    std::vector<SgfProperty> extra_root_properties;
};

// Parses the first game of an SGF FF[3]/FF[4] collection. At every variation
// branch the main line (first child) is taken. Throws SgfError on malformed
// bracket/parenthesis structure, illegal coordinates, or a missing root node.
GameRecord parse_sgf(std::string_view text);

std::string serialize_sgf(const GameRecord& g);

// Two-letter coordinate codec: 'a'+index columns then rows ('A'+ continues
// past 26 for large boards). Empty value decodes as a pass, as does "tt" on
// boards up to 19x19. Returns nullopt for a pass; throws SgfError (offset 0)
// for a coordinate off the given board.
std::optional<Coord> decode_sgf_coord(std::string_view value, int size);
std::string encode_sgf_coord(Coord c);

}  // namespace goising
