#include "goising/tactics.hpp"

#include <algorithm>
#include <stdexcept>

namespace goising {

namespace {

int chebyshev(Coord a, Coord b) {
    return std::max(std::abs(a.col - b.col), std::abs(a.row - b.row));
}

// Adversary chain (relative to `target`) with the largest size among those
// orthogonally touching a stone of `target`; ties to the smallest id. -1 when
// none touches.
int largest_touching_adversary(const Board& b, const ChainSet& cs, const Chain& target) {
    const PointState enemy = to_point(opponent(target.color));
    int best = -1, best_size = 0;
    PointBits seen;
    for (Coord stone : target.stones) {
        const int p = coord_index(stone, b.size());
        const int nbrs[4] = {stone.row > 0 ? p - b.size() : -1,
                             stone.row + 1 < b.size() ? p + b.size() : -1,
                             stone.col > 0 ? p - 1 : -1,
                             stone.col + 1 < b.size() ? p + 1 : -1};
        for (int q : nbrs) {
            if (q < 0 || b.at(q) != enemy) continue;
            const Chain& c = cs.chains[cs.chain_at[q]];
            if (seen.test(c.id)) continue;
            seen.set(c.id);
            if (c.size() > best_size || (c.size() == best_size && (best < 0 || c.id < best))) {
                best = c.id;
                best_size = c.size();
            }
        }
    }
    return best;
}

// Same selection among adversary chains touching any liberty of `target`.
int largest_liberty_adversary(const Board& b, const ChainSet& cs, const Chain& target) {
    const PointState enemy = to_point(opponent(target.color));
    int best = -1, best_size = 0;
    PointBits seen;
    for (Coord lib : target.liberties) {
        const int p = coord_index(lib, b.size());
        const int nbrs[4] = {lib.row > 0 ? p - b.size() : -1,
                             lib.row + 1 < b.size() ? p + b.size() : -1,
                             lib.col > 0 ? p - 1 : -1,
                             lib.col + 1 < b.size() ? p + 1 : -1};
        for (int q : nbrs) {
            if (q < 0 || b.at(q) != enemy) continue;
            const Chain& c = cs.chains[cs.chain_at[q]];
            if (seen.test(c.id)) continue;
            seen.set(c.id);
            if (c.size() > best_size || (c.size() == best_size && (best < 0 || c.id < best))) {
                best = c.id;
                best_size = c.size();
            }
        }
    }
    return best;
}

TacticInstance threat_instance(TacticKind kind, const ChainSet& cs, const Chain& target,
                               int acting_id, double weight) {
    TacticInstance t;
    t.kind = kind;
    t.target_chain = target.id;
    t.target_size = target.size();
    t.liberty_count = target.liberty_count();
    t.points = target.liberties;
    t.weight = weight;
    if (acting_id >= 0) {
        const Chain& acting = cs.at(acting_id);
        t.color = acting.color;
        t.acting_chain = acting.id;
        t.acting_size = acting.size();
    } else {
        // no adversary anywhere near: the instance degenerates to the chain
        // acting for itself (it assigns no role, see chain_roles)
        t.color = target.color;
        t.acting_chain = target.id;
        t.acting_size = target.size();
    }
    return t;
}

}  // namespace

const char* tactic_kind_name(TacticKind k) {
    switch (k) {
        case TacticKind::Ladder: return "ladder";
        case TacticKind::Net: return "net";
        case TacticKind::Eye: return "eye";
        case TacticKind::SimpleLiberty: return "simple-liberty";
        case TacticKind::Invasion: return "invasion";
        case TacticKind::Reduction: return "reduction";
    }
    return "?";
}

double tactic_weight(const TacticWeights& w, TacticKind k) {
    switch (k) {
        case TacticKind::Ladder: return w.ladder;
        case TacticKind::Net: return w.net;
        case TacticKind::Eye: return w.eye;
        case TacticKind::SimpleLiberty: return w.simple_liberty;
        default: return 0.0;  // Invasion/Reduction are move classes, not couplings
    }
}

std::vector<TacticInstance> detect_eyes(const Board& b, const ChainSet& cs,
                                        const TacticWeights& w) {
    std::vector<TacticInstance> out;
    const int size = b.size();
    for (int p = 0; p < size * size; ++p) {
        if (b.at(p) != PointState::Empty) continue;
        const int row = p / size, col = p % size;

        // all in-board orthogonal neighbors must be stones of one color
        PointState owner = PointState::Empty;
        bool enclosed = true;
        const int orth[4] = {row > 0 ? p - size : -1, row + 1 < size ? p + size : -1,
                             col > 0 ? p - 1 : -1, col + 1 < size ? p + 1 : -1};
        for (int q : orth) {
            if (q < 0) continue;
            PointState s = b.at(q);
            if (s == PointState::Empty || (owner != PointState::Empty && s != owner)) {
                enclosed = false;
                break;
            }
            owner = s;
        }
        if (!enclosed || owner == PointState::Empty) continue;

        // diagonal control: an enemy stone on a diagonal breaks it; interior
        // points tolerate one, edge/corner points none
        const PointState enemy = owner == PointState::Black ? PointState::White
                                                            : PointState::Black;
        int in_board = 0, hostile = 0;
        for (int dr : {-1, 1}) {
            for (int dc : {-1, 1}) {
                int r = row + dr, c = col + dc;
                if (r < 0 || c < 0 || r >= size || c >= size) continue;
                ++in_board;
                hostile += b.at(r * size + c) == enemy;
            }
        }
        if (in_board == 4 ? hostile > 1 : hostile > 0) continue;

        // attribute to the largest adjacent chain, ties to the smallest id
        int best = -1, best_size = 0;
        for (int q : orth) {
            if (q < 0) continue;
            const Chain& c = cs.chains[cs.chain_at[q]];
            if (c.size() > best_size || (c.size() == best_size && (best < 0 || c.id < best))) {
                best = c.id;
                best_size = c.size();
            }
        }
        const Chain& owner_chain = cs.at(best);
        TacticInstance t;
        t.kind = TacticKind::Eye;
        t.color = owner_chain.color;
        t.acting_chain = owner_chain.id;
        t.acting_size = owner_chain.size();
        t.liberty_count = owner_chain.liberty_count();
        t.points = {coord_from_index(p, size)};
        t.weight = w.eye;
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<TacticInstance> detect_ladders(const Board& b, const ChainSet& cs,
                                           const TacticWeights& w) {
    std::vector<TacticInstance> out;
    for (const Chain& target : cs.chains) {
        if (target.liberty_count() != 1) continue;
        int acting = largest_touching_adversary(b, cs, target);
        out.push_back(threat_instance(TacticKind::Ladder, cs, target, acting, w.ladder));
    }
    return out;
}

std::vector<TacticInstance> detect_nets(const Board& b, const ChainSet& cs,
                                        const TacticWeights& w) {
    std::vector<TacticInstance> out;
    const int size = b.size();
    for (const Chain& target : cs.chains) {
        if (target.liberty_count() < 2) continue;
        const PointState enemy = to_point(opponent(target.color));
        bool blocked = true;
        for (Coord lib : target.liberties) {
            const int p = coord_index(lib, size);
            const int nbrs[4] = {lib.row > 0 ? p - size : -1, lib.row + 1 < size ? p + size : -1,
                                 lib.col > 0 ? p - 1 : -1, lib.col + 1 < size ? p + 1 : -1};
            bool guarded = false;
            for (int q : nbrs) guarded = guarded || (q >= 0 && b.at(q) == enemy);
            if (!guarded) {
                blocked = false;
                break;
            }
        }
        if (!blocked) continue;
        int acting = largest_touching_adversary(b, cs, target);
        if (acting < 0) acting = largest_liberty_adversary(b, cs, target);
        out.push_back(threat_instance(TacticKind::Net, cs, target, acting, w.net));
    }
    return out;
}

int simple_liberty_count(const ChainSet& cs, int chain_id) {
    return cs.at(chain_id).liberty_count();
}

std::vector<TacticInstance> detect_all(const Board& b, const ChainSet& cs,
                                       const TacticWeights& w) {
    std::vector<TacticInstance> out = detect_ladders(b, cs, w);
    for (TacticInstance& t : detect_nets(b, cs, w)) out.push_back(std::move(t));
    for (TacticInstance& t : detect_eyes(b, cs, w)) out.push_back(std::move(t));
    for (const Chain& c : cs.chains) {
        TacticInstance t;
        t.kind = TacticKind::SimpleLiberty;
        t.color = c.color;
        t.acting_chain = c.id;
        t.acting_size = c.size();
        t.liberty_count = c.liberty_count();
        t.points = c.liberties;
        t.weight = w.simple_liberty;
        out.push_back(std::move(t));
    }
    return out;
}

std::optional<TacticKind> classify_move(const Board& before, Color color, Coord at,
                                        const std::vector<RecentMove>& history,
                                        const MoveClassParams& p) {
    const int radius = p.invasion_radius;
    bool neighborhood_empty = true;
    for (int dr = -radius; dr <= radius && neighborhood_empty; ++dr) {
        for (int dc = -radius; dc <= radius; ++dc) {
            Coord q{static_cast<std::int16_t>(at.col + dc), static_cast<std::int16_t>(at.row + dr)};
            if (!before.on_board(q) || before.is_empty(q)) continue;
            neighborhood_empty = false;
            break;
        }
    }
    if (neighborhood_empty) return TacticKind::Invasion;

    const int n = static_cast<int>(history.size());
    for (int i = std::max(0, n - p.reduction_window); i < n; ++i) {
        const RecentMove& m = history[i];
        if (m.invasion && m.color == opponent(color) && chebyshev(m.at, at) <= radius)
            return TacticKind::Reduction;
    }
    return std::nullopt;
}

std::vector<TacticKind> chain_roles(const ChainSet& cs,
                                    const std::vector<TacticInstance>& instances) {
    auto rank = [](TacticKind k) {
        switch (k) {
            case TacticKind::Ladder: return 3;
            case TacticKind::Net: return 2;
            case TacticKind::Eye: return 1;
            default: return 0;
        }
    };
    std::vector<TacticKind> roles(cs.chains.size(), TacticKind::SimpleLiberty);
    for (const TacticInstance& t : instances) {
        if (t.kind != TacticKind::Ladder && t.kind != TacticKind::Net &&
            t.kind != TacticKind::Eye)
            continue;
        if (t.acting_chain == t.target_chain) continue;  // degenerate self-threat
        int idx = cs.index_of(t.acting_chain);
        if (idx >= 0 && rank(t.kind) > rank(roles[idx])) roles[idx] = t.kind;
    }
    return roles;
}

}  // namespace goising
