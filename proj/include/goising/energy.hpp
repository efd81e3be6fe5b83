#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "goising/board.hpp"
#include "goising/sgf.hpp"
#include "goising/tactics.hpp"

namespace goising {

// Parameters of the position energy model. The Hamiltonian is
//
//     H = sum_{i<j} w_ij x_i x_j  -  field_scale * sum_i h_i x_i
//
// over chains i, where h_i is the chain's liberty count and x_i its stone
// descriptor: c_i * n_i plus an eye bonus of eye_base^k_i for a chain holding
// k_i >= 1 eyes (no bonus at k = 0), with c_i = +1 for white and -1 for
// black. With signed_eye_term the bonus is multiplied by c_i, which keeps H
// exactly antisymmetric under a color swap even when the bonus is active.
struct EnergyParams {
    double eye_base = 2.0;  // 0 disables the eye bonus; otherwise must be > 1
    TacticWeights tactic_weights{};
    double field_scale = 1.0;
    bool signed_eye_term = false;

    // Throws std::invalid_argument when eye_base is outside {0} union (1, inf).
    void validate() const;
};

// x_i for one chain given how many eyes it holds.
double stone_descriptor(const Chain& c, int eye_count, const EnergyParams& p);

// Coupling w_ij between two chains, identified by chain id.
//
// The interaction region is the closed axis-aligned bounding box spanning
// every stone pair (one stone from each chain) at the minimal squared
// Euclidean distance; spanning all minimal pairs keeps the region, and
// therefore H, invariant under board symmetries. Every other chain with a
// stone inside the region contributes weight(role) * x, where role is the
// strongest tactic the chain is a candidate actor for (Ladder > Net > Eye >
// SimpleLiberty). Each endpoint chain additionally contributes
// weight(kind) * x when it acts against the other endpoint: candidate actor
// of a Ladder or Net targeting it, or holder of an eye while the two chains
// are orthogonally adjacent. SimpleLiberty never qualifies an endpoint.
//
// Candidacy is structural, never tie-broken: a ladder or net credits every
// adversary chain orthogonally adjacent to the threatened chain (a net with
// no adjacent adversary credits the chains touching its liberties), and an
// eye credits every chain adjacent to the eye point — the same chains also
// carry the eye count k in their descriptor. Instance attribution picks one
// acting chain by size with an id tie-break, and ids change under board
// symmetries; crediting all candidates is what keeps H orientation-free.
//
// Throws std::invalid_argument when chain_i == chain_j and std::out_of_range
// on an unknown chain id.
double coupling(const Board& b, const ChainSet& cs, const std::vector<TacticInstance>& instances,
                int chain_i, int chain_j, const EnergyParams& p);

double hamiltonian(const Board& b, const EnergyParams& p);

// Per-player strength: the player's share of H in magnitudes,
//
//     S_c = field_scale * sum_{i in c} h_i |x_i|
//         + sum_{i<j in c} |w_ij x_i x_j|,
//
// returned as (black, white). Scaling all tactic weights and field_scale by
// a common factor scales both strengths by it, so the comparison between the
// players is invariant under that reparameterization.
std::pair<double, double> player_strengths(const Board& b, const EnergyParams& p);

struct PhaseTransitionEvent {
    int move_index = 0;   // 1-based index into the evaluated series
    double delta_h = 0.0; // H jump at that move
    double z = 0.0;       // jump / window sigma; signed infinity when sigma = 0

    friend bool operator==(const PhaseTransitionEvent&, const PhaseTransitionEvent&) = default;
};

struct TransitionParams {
    double z_threshold = 3.0;  // must be > 0
    int window = 30;           // must be >= 2
};

// Scans an energy series for abrupt jumps. Move t (1-based, eligible from
// t = window + 1) is an event when |H_t - H_{t-1}| exceeds z_threshold times
// the population standard deviation of the window - 1 consecutive
// differences over moves t-window .. t-1. A zero-sigma window makes any
// nonzero jump an event. Throws std::invalid_argument on a non-positive
// z_threshold or window < 2.
std::vector<PhaseTransitionEvent> detect_transitions(const std::vector<double>& h,
                                                     double z_threshold, int window);

// One evaluated (non-pass) move of a replayed game.
struct MovePoint {
    int move_index = 0;  // 1-based among placed stones; passes are skipped
    Color color = Color::Black;
    TacticKind kind = TacticKind::SimpleLiberty;
    double h = 0.0;
    double black_strength = 0.0;
    double white_strength = 0.0;
    bool event = false;  // phase-transition flag for this move
};

struct WinnerPrediction {
    std::optional<Color> winner;  // nullopt: equal strengths or empty series
    double margin = 0.0;          // |final black strength - final white strength|
};

struct EnergySeries {
    std::string game_id;
    std::vector<MovePoint> moves;
    std::vector<PhaseTransitionEvent> transitions;
    WinnerPrediction prediction;
};

// Replay failure: an illegal move inside a game record. move_index is the
// 1-based position in the record's move list, passes included.
class ReplayError : public std::runtime_error {
  public:
    ReplayError(const std::string& what, int move_index);
    int move_index;
};

// Replays a record (setup stones first, then the main line) and evaluates H
// and both strengths after every placed stone. Passes advance the turn but
// produce no series entry and never enter the move-classification history.
// Each entry's tactic kind is the move's Invasion/Reduction classification
// when present, otherwise the played chain's strongest role in the resulting
// position. Throws ReplayError on an illegal move and std::invalid_argument
// on bad parameters or an unsupported board size.
EnergySeries energy_series(const GameRecord& g, const EnergyParams& p,
                           const TransitionParams& tp = {}, std::string game_id = {});

// Compares final-move strengths; equal strengths or an empty series give an
// unknown winner with margin 0.
WinnerPrediction predict_winner(const EnergySeries& s);

// CSV with header move,H,black_strength,white_strength,event_flag; floats
// use 6 significant digits.
void write_series_csv(std::ostream& out, const EnergySeries& s);

// JSON document carrying the full series, the parameter echo and the
// prediction. Content-addressable: no timestamps or other ambient state.
void write_series_json(std::ostream& out, const EnergySeries& s, const EnergyParams& p,
                       const TransitionParams& tp);

}  // namespace goising
