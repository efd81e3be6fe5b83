#include "goising/energy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <utility>

#include "goising/kernels.hpp"
#include "json.hpp"

namespace goising {

namespace {

// Column/row copies of one chain's stones for the distance kernel.
struct ChainPoints {
    std::vector<std::int32_t> cols;
    std::vector<std::int32_t> rows;
};

TacticKind kind_of_rank(int rank) {
    switch (rank) {
        case 3: return TacticKind::Ladder;
        case 2: return TacticKind::Net;
        case 1: return TacticKind::Eye;
        default: return TacticKind::SimpleLiberty;
    }
}

// Everything pair evaluation needs, derived once per position.
//
// Tactic credit here is structural: every candidate actor of an instance is
// credited, not just the one the instance's tie-break attributed. Chain ids
// change under board symmetries, so any id-tie-broken choice would make H
// depend on the board's orientation; candidacy is orientation-free.
struct EnergyContext {
    const ChainSet* cs = nullptr;
    int board_size = 0;
    std::vector<int> eye_counts;  // eye points the chain touches
    std::vector<int> ranks;       // strongest candidacy per chain
    std::vector<double> x;
    std::vector<double> member_contrib;  // weight(rank) * x, per chain
    std::vector<ChainPoints> pts;
    // Directed ladder/net candidacy: (actor index, target index) -> max rank.
    std::map<std::pair<int, int>, int> threats;
};

// Distinct chains orthogonally adjacent to a point, appended to `out`.
void point_neighbor_chains(const ChainSet& cs, int size, Coord q, std::vector<int>& out) {
    out.clear();
    const Coord nbs[4] = {{static_cast<std::int16_t>(q.col - 1), q.row},
                          {static_cast<std::int16_t>(q.col + 1), q.row},
                          {q.col, static_cast<std::int16_t>(q.row - 1)},
                          {q.col, static_cast<std::int16_t>(q.row + 1)}};
    for (Coord nb : nbs) {
        if (nb.col < 0 || nb.row < 0 || nb.col >= size || nb.row >= size) continue;
        const int idx = cs.chain_at[coord_index(nb, size)];
        if (idx >= 0 && std::find(out.begin(), out.end(), idx) == out.end()) out.push_back(idx);
    }
}

EnergyContext make_context(const Board& b, const ChainSet& cs,
                           const std::vector<TacticInstance>& instances, const EnergyParams& p) {
    EnergyContext ctx;
    ctx.cs = &cs;
    ctx.board_size = b.size();
    const std::size_t n = cs.chains.size();
    ctx.eye_counts.assign(n, 0);
    ctx.ranks.assign(n, 0);

    std::vector<int> nb_chains;
    std::vector<int> actors;
    for (const auto& t : instances) {
        if (t.kind == TacticKind::Eye) {
            point_neighbor_chains(cs, ctx.board_size, t.points.front(), nb_chains);
            for (int s : nb_chains) {
                ++ctx.eye_counts[s];
                ctx.ranks[s] = std::max(ctx.ranks[s], 1);
            }
        } else if (t.kind == TacticKind::Ladder || t.kind == TacticKind::Net) {
            const int oi = cs.index_of(t.target_chain);
            const Chain& target = cs.chains[oi];
            actors.clear();
            for (Coord s : target.stones) {
                point_neighbor_chains(cs, ctx.board_size, s, nb_chains);
                for (int e : nb_chains) {
                    if (e != oi && cs.chains[e].color != target.color &&
                        std::find(actors.begin(), actors.end(), e) == actors.end())
                        actors.push_back(e);
                }
            }
            if (actors.empty() && t.kind == TacticKind::Net) {
                for (Coord lib : target.liberties) {
                    point_neighbor_chains(cs, ctx.board_size, lib, nb_chains);
                    for (int e : nb_chains) {
                        if (e != oi && cs.chains[e].color != target.color &&
                            std::find(actors.begin(), actors.end(), e) == actors.end())
                            actors.push_back(e);
                    }
                }
            }
            const int rank = t.kind == TacticKind::Ladder ? 3 : 2;
            for (int e : actors) {
                ctx.ranks[e] = std::max(ctx.ranks[e], rank);
                int& slot = ctx.threats[{e, oi}];
                slot = std::max(slot, rank);
            }
        }
    }

    ctx.x.reserve(n);
    ctx.member_contrib.reserve(n);
    ctx.pts.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Chain& c = cs.chains[i];
        ctx.x.push_back(stone_descriptor(c, ctx.eye_counts[i], p));
        ctx.member_contrib.push_back(
            tactic_weight(p.tactic_weights, kind_of_rank(ctx.ranks[i])) * ctx.x[i]);
        ctx.pts[i].cols.reserve(c.stones.size());
        ctx.pts[i].rows.reserve(c.stones.size());
        for (Coord s : c.stones) {
            ctx.pts[i].cols.push_back(s.col);
            ctx.pts[i].rows.push_back(s.row);
        }
    }
    return ctx;
}

bool chains_adjacent(const EnergyContext& ctx, int ei, int oi) {
    const int size = ctx.board_size;
    const std::vector<int>& chain_at = ctx.cs->chain_at;
    for (Coord s : ctx.cs->chains[ei].stones) {
        if (s.col > 0 && chain_at[coord_index({static_cast<std::int16_t>(s.col - 1), s.row},
                                              size)] == oi)
            return true;
        if (s.col + 1 < size &&
            chain_at[coord_index({static_cast<std::int16_t>(s.col + 1), s.row}, size)] == oi)
            return true;
        if (s.row > 0 && chain_at[coord_index({s.col, static_cast<std::int16_t>(s.row - 1)},
                                              size)] == oi)
            return true;
        if (s.row + 1 < size &&
            chain_at[coord_index({s.col, static_cast<std::int16_t>(s.row + 1)}, size)] == oi)
            return true;
    }
    return false;
}

// weight(kind) * x for chain e when it acts against chain o.
double endpoint_term(const EnergyContext& ctx, int e, int o, const EnergyParams& p) {
    int best_rank = 0;
    const auto it = ctx.threats.find({e, o});
    if (it != ctx.threats.end()) best_rank = it->second;
    if (best_rank < 1 && ctx.eye_counts[e] > 0 && chains_adjacent(ctx, e, o)) best_rank = 1;
    return best_rank > 0 ? tactic_weight(p.tactic_weights, kind_of_rank(best_rank)) * ctx.x[e]
                         : 0.0;
}

double pair_coupling(const EnergyContext& ctx, int i, int j, const EnergyParams& p) {
    if (i > j) std::swap(i, j);  // canonical orientation: w_ij is exactly symmetric

    const ChainPoints& A = ctx.pts[i];
    const ChainPoints& B = ctx.pts[j];
    const int na = static_cast<int>(A.cols.size());
    const int nb = static_cast<int>(B.cols.size());
    const std::int32_t best =
        kernels::closest_pair(A.cols.data(), A.rows.data(), na, B.cols.data(), B.rows.data(), nb)
            .dist2;

    // Closed box spanning the endpoints of every stone pair at the minimal
    // distance; ties widen the box instead of picking one pair arbitrarily,
    // which keeps the region equivariant under board symmetries.
    std::int32_t lo_col = std::numeric_limits<std::int32_t>::max(), hi_col = -1;
    std::int32_t lo_row = std::numeric_limits<std::int32_t>::max(), hi_row = -1;
    for (int a = 0; a < na; ++a) {
        for (int b2 = 0; b2 < nb; ++b2) {
            const std::int32_t dx = A.cols[a] - B.cols[b2];
            const std::int32_t dy = A.rows[a] - B.rows[b2];
            if (dx * dx + dy * dy != best) continue;
            lo_col = std::min({lo_col, A.cols[a], B.cols[b2]});
            hi_col = std::max({hi_col, A.cols[a], B.cols[b2]});
            lo_row = std::min({lo_row, A.rows[a], B.rows[b2]});
            hi_row = std::max({hi_row, A.rows[a], B.rows[b2]});
        }
    }

    double w = 0.0;
    const auto& chains_vec = ctx.cs->chains;
    for (std::size_t s = 0; s < chains_vec.size(); ++s) {
        if (static_cast<int>(s) == i || static_cast<int>(s) == j) continue;
        const Chain& c = chains_vec[s];
        if (c.max_col < lo_col || c.min_col > hi_col || c.max_row < lo_row || c.min_row > hi_row)
            continue;
        for (Coord st : c.stones) {
            if (st.col >= lo_col && st.col <= hi_col && st.row >= lo_row && st.row <= hi_row) {
                w += ctx.member_contrib[s];
                break;
            }
        }
    }
    w += endpoint_term(ctx, i, j, p);
    w += endpoint_term(ctx, j, i, p);
    return w;
}

struct Evaluation {
    double h = 0.0;
    double black = 0.0;
    double white = 0.0;
};

Evaluation evaluate(const Board& b, const ChainSet& cs,
                    const std::vector<TacticInstance>& instances, const EnergyParams& p) {
    const EnergyContext ctx = make_context(b, cs, instances, p);
    const std::size_t n = cs.chains.size();

    Evaluation out;
    double field = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lib = cs.chains[i].liberty_count();
        field += lib * ctx.x[i];
        double& slot = cs.chains[i].color == Color::Black ? out.black : out.white;
        slot += p.field_scale * lib * std::abs(ctx.x[i]);
    }
    double pair_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double term = pair_coupling(ctx, static_cast<int>(i), static_cast<int>(j), p) *
                                ctx.x[i] * ctx.x[j];
            pair_sum += term;
            if (cs.chains[i].color == cs.chains[j].color) {
                double& slot = cs.chains[i].color == Color::Black ? out.black : out.white;
                slot += std::abs(term);
            }
        }
    }
    out.h = pair_sum - p.field_scale * field;
    return out;
}

std::string format_g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void EnergyParams::validate() const {
    if (!(eye_base == 0.0 || eye_base > 1.0))
        throw std::invalid_argument("eye_base must be 0 or greater than 1, got " +
                                    std::to_string(eye_base));
}

double stone_descriptor(const Chain& c, int eye_count, const EnergyParams& p) {
    const double sign = c.color == Color::White ? 1.0 : -1.0;
    double x = sign * c.size();
    if (eye_count >= 1 && p.eye_base > 0.0) {
        double bonus = 1.0;
        for (int k = 0; k < eye_count; ++k) bonus *= p.eye_base;
        x += p.signed_eye_term ? sign * bonus : bonus;
    }
    return x;
}

double coupling(const Board& b, const ChainSet& cs, const std::vector<TacticInstance>& instances,
                int chain_i, int chain_j, const EnergyParams& p) {
    p.validate();
    if (chain_i == chain_j)
        throw std::invalid_argument("coupling requires two distinct chains, got id " +
                                    std::to_string(chain_i) + " twice");
    const int i = cs.index_of(chain_i);
    const int j = cs.index_of(chain_j);
    if (i < 0) throw std::out_of_range("unknown chain id " + std::to_string(chain_i));
    if (j < 0) throw std::out_of_range("unknown chain id " + std::to_string(chain_j));
    const EnergyContext ctx = make_context(b, cs, instances, p);
    return pair_coupling(ctx, i, j, p);
}

double hamiltonian(const Board& b, const EnergyParams& p) {
    p.validate();
    const ChainSet cs = chains(b);
    return evaluate(b, cs, detect_all(b, cs), p).h;
}

std::pair<double, double> player_strengths(const Board& b, const EnergyParams& p) {
    p.validate();
    const ChainSet cs = chains(b);
    const Evaluation e = evaluate(b, cs, detect_all(b, cs), p);
    return {e.black, e.white};
}

std::vector<PhaseTransitionEvent> detect_transitions(const std::vector<double>& h,
                                                     double z_threshold, int window) {
    if (!(z_threshold > 0.0))
        throw std::invalid_argument("z_threshold must be positive, got " +
                                    std::to_string(z_threshold));
    if (window < 2)
        throw std::invalid_argument("window must be at least 2, got " + std::to_string(window));

    std::vector<PhaseTransitionEvent> out;
    const int n = static_cast<int>(h.size());
    std::vector<double> diffs(static_cast<std::size_t>(window - 1));
    for (int t = window + 1; t <= n; ++t) {
        for (int m = t - window + 1; m <= t - 1; ++m)
            diffs[static_cast<std::size_t>(m - (t - window + 1))] = h[m - 1] - h[m - 2];
        const kernels::Moments mom = kernels::moments(diffs.data(), window - 1);
        const double sigma = std::sqrt(mom.variance);
        const double jump = h[t - 1] - h[t - 2];
        if (std::abs(jump) > z_threshold * sigma) {
            const double z = sigma > 0.0
                                 ? jump / sigma
                                 : std::copysign(std::numeric_limits<double>::infinity(), jump);
            out.push_back({t, jump, z});
        }
    }
    return out;
}

ReplayError::ReplayError(const std::string& what, int index)
    : std::runtime_error(what), move_index(index) {}

EnergySeries energy_series(const GameRecord& g, const EnergyParams& p, const TransitionParams& tp,
                           std::string game_id) {
    p.validate();
    EnergySeries series;
    series.game_id = std::move(game_id);

    Board b = empty_board(g.size);
    for (Coord c : g.setup_black) b.set_stone(c, PointState::Black);
    for (Coord c : g.setup_white) b.set_stone(c, PointState::White);

    std::vector<RecentMove> history;
    const MoveClassParams mp{};
    int placed = 0;
    for (std::size_t k = 0; k < g.moves.size(); ++k) {
        const Move& mv = g.moves[k];
        if (mv.is_pass()) {
            b.pass(mv.color);
            continue;
        }
        const Coord at = *mv.at;
        const std::optional<TacticKind> cls = classify_move(b, mv.color, at, history, mp);
        if (const auto err = b.try_play(mv.color, at)) {
            throw ReplayError("move " + std::to_string(k + 1) + " (" +
                                  std::string(1, color_char(mv.color)) + " " + coord_text(at) +
                                  "): " + illegal_move_name(*err),
                              static_cast<int>(k) + 1);
        }
        history.push_back({mv.color, at, cls.has_value() && *cls == TacticKind::Invasion});
        ++placed;

        const ChainSet cs = chains(b);
        const auto instances = detect_all(b, cs);
        const Evaluation e = evaluate(b, cs, instances, p);

        TacticKind kind;
        if (cls.has_value()) {
            kind = *cls;
        } else {
            const auto roles = chain_roles(cs, instances);
            kind = roles[cs.chain_at[coord_index(at, b.size())]];
        }
        series.moves.push_back({placed, mv.color, kind, e.h, e.black, e.white, false});
    }

    std::vector<double> h;
    h.reserve(series.moves.size());
    for (const auto& m : series.moves) h.push_back(m.h);
    series.transitions = detect_transitions(h, tp.z_threshold, tp.window);
    for (const auto& ev : series.transitions) series.moves[ev.move_index - 1].event = true;
    series.prediction = predict_winner(series);
    return series;
}

WinnerPrediction predict_winner(const EnergySeries& s) {
    if (s.moves.empty()) return {};
    const MovePoint& last = s.moves.back();
    if (last.black_strength > last.white_strength)
        return {Color::Black, last.black_strength - last.white_strength};
    if (last.white_strength > last.black_strength)
        return {Color::White, last.white_strength - last.black_strength};
    return {};
}

void write_series_csv(std::ostream& out, const EnergySeries& s) {
    out << "move,H,black_strength,white_strength,event_flag\n";
    for (const auto& m : s.moves) {
        out << m.move_index << ',' << format_g6(m.h) << ',' << format_g6(m.black_strength) << ','
            << format_g6(m.white_strength) << ',' << (m.event ? 1 : 0) << '\n';
    }
}

void write_series_json(std::ostream& out, const EnergySeries& s, const EnergyParams& p,
                       const TransitionParams& tp) {
    nlohmann::json doc;
    doc["game_id"] = s.game_id;
    doc["params"] = {
        {"eye_base", p.eye_base},
        {"w_ladder", p.tactic_weights.ladder},
        {"w_net", p.tactic_weights.net},
        {"w_eye", p.tactic_weights.eye},
        {"w_slb", p.tactic_weights.simple_liberty},
        {"field_scale", p.field_scale},
        {"signed_eye_term", p.signed_eye_term},
        {"z_threshold", tp.z_threshold},
        {"window", tp.window},
    };
    doc["moves"] = nlohmann::json::array();
    for (const auto& m : s.moves) {
        doc["moves"].push_back({
            {"move", m.move_index},
            {"color", std::string(1, color_char(m.color))},
            {"kind", tactic_kind_name(m.kind)},
            {"H", m.h},
            {"black_strength", m.black_strength},
            {"white_strength", m.white_strength},
            {"event", m.event},
        });
    }
    doc["transitions"] = nlohmann::json::array();
    for (const auto& t : s.transitions) {
        doc["transitions"].push_back({
            {"move", t.move_index},
            {"delta_h", t.delta_h},
            {"z", t.z},
        });
    }
    doc["prediction"] = {
        {"winner", s.prediction.winner.has_value()
                       ? nlohmann::json(std::string(1, color_char(*s.prediction.winner)))
                       : nlohmann::json(nullptr)},
        {"margin", s.prediction.margin},
    };
    out << doc.dump(2) << '\n';
}

}  // namespace goising
