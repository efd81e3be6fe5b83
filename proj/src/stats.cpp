#include "goising/stats.hpp"

#include "goising/board.hpp"
#include "goising/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace goising {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Shared standardization core so zscores() and frequency_tables() produce
// bit-identical z values for the same inputs.
void standardize(const double* v, int n, double* out, double* mean_out, double* sigma_out) {
    // The sigma-zero rule must fire for every constant input, including
    // constants whose repeated sum rounds (0.1, 1/3, ...), where the moment
    // pass would report a tiny spurious variance and blow the scores up.
    const bool constant = n > 0 && std::all_of(v, v + n, [&](double x) { return x == v[0]; });
    if (constant) {
        *mean_out = v[0];
        *sigma_out = 0.0;
        std::fill(out, out + n, 0.0);
        return;
    }
    const kernels::Moments m = kernels::moments(v, n);
    const double sigma = std::sqrt(std::max(m.variance, 0.0));
    *mean_out = m.mean;
    *sigma_out = sigma;
    for (int i = 0; i < n; ++i) out[i] = sigma == 0.0 ? 0.0 : (v[i] - m.mean) / sigma;
}

}  // namespace

std::vector<TacticCountSeries> count_tactics(const std::vector<GameAnalysis>& games,
                                             GroupBy group_by, const PlayerLabels& labels) {
    std::map<std::string, std::vector<std::array<std::int64_t, kTacticKindCount>>> acc;
    for (const GameAnalysis& g : games) {
        for (const MovePoint& mp : g.series.moves) {
            std::string key;
            if (group_by == GroupBy::Color) {
                key.assign(1, color_char(mp.color));
            } else {
                const std::string& raw =
                    mp.color == Color::Black ? g.black_player : g.white_player;
                const auto it = labels.find(raw);
                key = it != labels.end() ? it->second : raw;
            }
            auto& rows = acc[key];
            if (static_cast<int>(rows.size()) < mp.move_index) rows.resize(mp.move_index);
            rows[mp.move_index - 1][static_cast<int>(mp.kind)] += 1;
        }
    }
    std::vector<TacticCountSeries> out;
    out.reserve(acc.size());
    for (auto& [group, rows] : acc) out.push_back({group, std::move(rows)});
    return out;
}

std::vector<double> zscores(const std::vector<double>& values) {
    std::vector<double> out(values.size());
    if (values.empty()) return out;
    double mean = 0.0;
    double sigma = 0.0;
    standardize(values.data(), static_cast<int>(values.size()), out.data(), &mean, &sigma);
    return out;
}

Histogram histogram(const std::vector<double>& values, int bins) {
    if (values.empty()) throw std::invalid_argument("histogram: empty input");
    if (bins < 1) throw std::invalid_argument("histogram: bins must be positive");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const auto n = static_cast<std::int64_t>(values.size());

    Histogram h;
    if (lo == hi) {
        h.edges = {lo - 0.5, lo + 0.5};
        h.counts = {n};
        h.bin_width = 1.0;
        return h;
    }

    const double width = (hi - lo) / bins;
    h.edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) h.edges[i] = lo + i * width;
    h.edges[bins] = hi;
    for (int i = 1; i <= bins; ++i) {
        if (!(h.edges[i - 1] < h.edges[i])) {  // span too small for this bin count
            h.edges = {lo, hi};
            h.counts = {n};
            h.bin_width = hi - lo;
            return h;
        }
    }

    h.counts.assign(bins, 0);
    for (double v : values) {
        int idx = static_cast<int>((v - lo) / width);
        idx = std::clamp(idx, 0, bins - 1);
        ++h.counts[idx];
    }
    h.bin_width = width;
    return h;
}

std::vector<FrequencyTable> frequency_tables(const std::vector<TacticCountSeries>& counts) {
    std::vector<FrequencyTable> out;
    out.reserve(counts.size());
    for (const TacticCountSeries& s : counts) {
        FrequencyTable ft;
        ft.group = s.group;
        std::array<std::int64_t, kTacticKindCount> totals{};
        std::int64_t grand = 0;
        for (const auto& row : s.counts) {
            for (int k = 0; k < kTacticKindCount; ++k) {
                totals[k] += row[k];
                grand += row[k];
            }
        }
        if (grand > 0) {
            for (int k = 0; k < kTacticKindCount; ++k)
                ft.frequency[k] = static_cast<double>(totals[k]) / static_cast<double>(grand);
        }
        standardize(ft.frequency.data(), kTacticKindCount, ft.zscore.data(), &ft.mean,
                    &ft.sigma);
        out.push_back(std::move(ft));
    }
    return out;
}

std::vector<KindHistogram> usage_histograms(const std::vector<TacticCountSeries>& counts,
                                            int bins) {
    std::vector<KindHistogram> out;
    for (const TacticCountSeries& s : counts) {
        for (int k = 0; k < kTacticKindCount; ++k) {
            std::vector<double> samples;
            for (std::size_t m = 0; m < s.counts.size(); ++m) {
                for (std::int64_t r = 0; r < s.counts[m][k]; ++r)
                    samples.push_back(static_cast<double>(m + 1));
            }
            if (samples.empty()) continue;
            out.push_back({s.group, static_cast<TacticKind>(k), histogram(samples, bins)});
        }
    }
    return out;
}

DensityEstimate gaussian_kde(const std::vector<double>& values, int grid_points) {
    if (values.empty()) throw std::invalid_argument("gaussian_kde: empty input");
    if (grid_points < 2) throw std::invalid_argument("gaussian_kde: need at least 2 grid points");
    const int n = static_cast<int>(values.size());
    const kernels::Moments m = kernels::moments(values.data(), n);
    const double sigma = std::sqrt(std::max(m.variance, 0.0));
    if (sigma == 0.0) throw std::invalid_argument("gaussian_kde: zero variance");

    DensityEstimate d;
    d.bandwidth = sigma * std::pow(static_cast<double>(n), -0.2);  // Scott's rule

    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double step = (hi - lo) / (grid_points - 1);
    d.grid.resize(grid_points);
    for (int i = 0; i < grid_points; ++i) d.grid[i] = lo + i * step;
    d.grid[grid_points - 1] = hi;

    const double norm = 1.0 / (n * d.bandwidth * std::sqrt(2.0 * kPi));
    d.density.resize(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        double sum = 0.0;
        for (double v : values) {
            const double u = (d.grid[i] - v) / d.bandwidth;
            sum += std::exp(-0.5 * u * u);
        }
        d.density[i] = sum * norm;
    }
    return d;
}

void write_tactic_counts_csv(std::ostream& out, const std::vector<TacticCountSeries>& counts) {
    out << "group,move,kind,count\n";
    for (const TacticCountSeries& s : counts) {
        for (std::size_t m = 0; m < s.counts.size(); ++m) {
            for (int k = 0; k < kTacticKindCount; ++k) {
                out << s.group << ',' << m + 1 << ','
                    << tactic_kind_name(static_cast<TacticKind>(k)) << ',' << s.counts[m][k]
                    << '\n';
            }
        }
    }
}

void write_frequencies_csv(std::ostream& out, const std::vector<FrequencyTable>& tables) {
    out << "group,kind,frequency,zscore\n";
    for (const FrequencyTable& ft : tables) {
        for (int k = 0; k < kTacticKindCount; ++k) {
            out << ft.group << ',' << tactic_kind_name(static_cast<TacticKind>(k)) << ','
                << format_g6(ft.frequency[k]) << ',' << format_g6(ft.zscore[k]) << '\n';
        }
    }
}

void write_histogram_csv(std::ostream& out, const std::vector<KindHistogram>& hists) {
    out << "group,kind,bin_lo,bin_hi,count\n";
    for (const KindHistogram& kh : hists) {
        for (std::size_t i = 0; i < kh.hist.counts.size(); ++i) {
            out << kh.group << ',' << tactic_kind_name(kh.kind) << ','
                << format_g6(kh.hist.edges[i]) << ',' << format_g6(kh.hist.edges[i + 1]) << ','
                << kh.hist.counts[i] << '\n';
        }
    }
}

}  // namespace goising
