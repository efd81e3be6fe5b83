#pragma once

#include <optional>
#include <vector>

#include "goising/board.hpp"

namespace goising {

enum class TacticKind : std::uint8_t { Ladder, Net, Eye, SimpleLiberty, Invasion, Reduction };

const char* tactic_kind_name(TacticKind k);

// Coupling weights per pattern kind. Invasion/Reduction classify moves and
// carry no coupling weight.
struct TacticWeights {
    double ladder = 0.8;
    double net = 0.6;
    double eye = 0.4;
    double simple_liberty = 0.1;
};

double tactic_weight(const TacticWeights& w, TacticKind k);

struct TacticInstance {
    TacticKind kind = TacticKind::SimpleLiberty;
    Color color = Color::Black;  // color of the acting chain
    int acting_chain = -1;       // chain making the tactic
    int target_chain = -1;       // adversary chain for Ladder/Net, else -1
    int acting_size = 0;
    int target_size = 0;
    // the eye point's chain for Eye (= acting), the threatened chain for
    // Ladder/Net, the chain itself for SimpleLiberty
    int liberty_count = 0;
    std::vector<Coord> points;  // eye point / target liberties / own liberties
    double weight = 0.0;

    friend bool operator==(const TacticInstance&, const TacticInstance&) = default;
};

// Eye: empty point whose in-board orthogonal neighbors are all stones of one
// color, with diagonal control — a diagonal is controlled unless an enemy
// stone sits on it; interior points need >= 3 of 4 diagonals controlled,
// edge/corner points need all in-board diagonals controlled. Each eye is
// attributed to the largest adjacent chain (ties to the smallest chain id).
// One instance per eye point, ordered row-major.
std::vector<TacticInstance> detect_eyes(const Board& b, const ChainSet& cs,
                                        const TacticWeights& w = {});

// Ladder (atari condition): one instance per chain with exactly one liberty.
// The acting chain is the largest adjacent adversary chain (ties to the
// smallest id); when the position has no adversary neighbor the instance
// degenerates to acting = target. Ordered by target chain id.
std::vector<TacticInstance> detect_ladders(const Board& b, const ChainSet& cs,
                                           const TacticWeights& w = {});

// Net: one instance per chain with >= 2 liberties, every one of which is
// orthogonally adjacent to an adversary stone (all escape routes blocked).
// Acting chain as for ladders, falling back to the largest adversary chain
// touching the target's liberties. Ordered by target chain id.
std::vector<TacticInstance> detect_nets(const Board& b, const ChainSet& cs,
                                        const TacticWeights& w = {});

// |liberties| of the chain; throws std::out_of_range on an unknown id.
int simple_liberty_count(const ChainSet& cs, int chain_id);

// Union of eye, ladder and net instances plus one SimpleLiberty instance per
// chain carrying its liberty count. Order: ladders, nets, eyes, simple
// liberties, each in their detector's order.
std::vector<TacticInstance> detect_all(const Board& b, const ChainSet& cs,
                                       const TacticWeights& w = {});

struct MoveClassParams {
    int invasion_radius = 2;   // Chebyshev neighborhood radius
    int reduction_window = 6;  // how many recent moves can justify a reduction
};

struct RecentMove {
    Color color = Color::Black;
    Coord at{};
    bool invasion = false;
};

// Invasion: every point within the Chebyshev radius of `at` is empty before
// the move. Reduction: not an invasion, and an adversary move classified as
// an invasion within the last `reduction_window` entries of `history` lies
// within the same radius. Anything else: nullopt. `history` holds prior moves
// oldest-first; only its tail is examined.
std::optional<TacticKind> classify_move(const Board& before, Color color, Coord at,
                                        const std::vector<RecentMove>& history,
                                        const MoveClassParams& p = {});

// Strongest tactic role per chain under the precedence
// Ladder > Net > Eye > SimpleLiberty; a chain with no pattern instance holds
// SimpleLiberty. Indexed alongside cs.chains.
std::vector<TacticKind> chain_roles(const ChainSet& cs,
                                    const std::vector<TacticInstance>& instances);

}  // namespace goising
