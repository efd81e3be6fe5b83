#pragma once

// Aggregate statistics over analyzed games: tactic counts grouped by color
// or player label, z-scored frequency tables, usage histograms over move
// indices, an optional Gaussian kernel density estimate, and CSV exports.
//
// Determinism contract: groups are emitted in sorted (byte) order and all
// aggregation is commutative, so results are independent of the order in
// which games are supplied. Floating-point CSV fields use six significant
// digits (%.6g).

#include "goising/energy.hpp"
#include "goising/tactics.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace goising {

inline constexpr int kTacticKindCount = 6;

enum class GroupBy { Color, Player };

// One fully analyzed game: its identity plus the replayed energy series.
struct GameAnalysis {
    std::string path;
    std::string black_player;
    std::string white_player;
    EnergySeries series;
};

// Maps a raw player name (PB/PW value) to a reporting label. Names without
// a mapping fall back to the raw name itself.
using PlayerLabels = std::map<std::string, std::string>;

// Per-group tactic counts on a contiguous 1-based move axis:
// counts[m - 1][kind] is the number of moves of that kind the group played
// at move index m. The axis extends to the group's largest move index.
struct TacticCountSeries {
    std::string group;
    std::vector<std::array<std::int64_t, kTacticKindCount>> counts;
};

// Tallies per-move tactic kinds across games, grouped by mover color ("B" /
// "W") or by player label. Groups are sorted by byte order; aggregation is
// permutation-invariant and conserves the total number of evaluated moves.
std::vector<TacticCountSeries> count_tactics(const std::vector<GameAnalysis>& games,
                                             GroupBy group_by,
                                             const PlayerLabels& labels = {});

// Population z-scores: (v - mean) / sigma with sigma the population standard
// deviation. A constant (or single-element, or empty) input yields zeros.
std::vector<double> zscores(const std::vector<double>& values);

// Equal-width histogram. edges has counts.size() + 1 strictly increasing
// entries; every bin is right-open except the last, which is closed, so the
// counts always sum to the number of input values.
struct Histogram {
    std::vector<double> edges;
    std::vector<std::int64_t> counts;
    double bin_width = 0.0;
};

// Bins values into `bins` equal-width bins spanning [min, max]. A constant
// input collapses to a single unit-width bin centered on the value. Throws
// std::invalid_argument on empty input or bins < 1.
Histogram histogram(const std::vector<double>& values, int bins);

// Per-group share of each tactic kind among the group's moves, plus the
// z-scores of those shares (and the mean/sigma they were computed from).
struct FrequencyTable {
    std::string group;
    std::array<double, kTacticKindCount> frequency{};
    std::array<double, kTacticKindCount> zscore{};
    double mean = 0.0;
    double sigma = 0.0;
};

std::vector<FrequencyTable> frequency_tables(const std::vector<TacticCountSeries>& counts);

// Distribution of move indices at which a group used one tactic kind.
struct KindHistogram {
    std::string group;
    TacticKind kind = TacticKind::Ladder;
    Histogram hist;
};

// Histograms each (group, kind) with at least one occurrence: the samples
// are the 1-based move indices, repeated by count. Entries follow the input
// group order, kinds in enum order.
std::vector<KindHistogram> usage_histograms(const std::vector<TacticCountSeries>& counts,
                                            int bins);

// Gaussian kernel density estimate on an evenly spaced grid.
struct DensityEstimate {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
};

// Evaluates a Gaussian KDE at grid_points evenly spaced points spanning
// [min, max], with Scott's-rule bandwidth h = sigma * n^(-1/5) (population
// sigma). Throws std::invalid_argument on empty input, grid_points < 2, or
// zero variance.
DensityEstimate gaussian_kde(const std::vector<double>& values, int grid_points);

// CSV exports. Headers match the column lists; rows are dense (every kind
// appears for every move / group) except histograms, which only cover the
// (group, kind) pairs present in the input.
void write_tactic_counts_csv(std::ostream& out, const std::vector<TacticCountSeries>& counts);
void write_frequencies_csv(std::ostream& out, const std::vector<FrequencyTable>& tables);
void write_histogram_csv(std::ostream& out, const std::vector<KindHistogram>& hists);

}  // namespace goising
