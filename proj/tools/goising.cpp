// goising — Go game analysis front end.
//
// Subcommands: analyze (one game), batch (a corpus, cached and resumable),
// stats (aggregate CSVs from the cache), validate (SGF lint). Data files
// never contain timestamps; floats use six significant digits. Exit code 0
// means every requested artifact was written.

#include "goising/board.hpp"
#include "goising/corpus.hpp"
#include "goising/energy.hpp"
#include "goising/sgf.hpp"
#include "goising/stats.hpp"
#include "goising/tactics.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace goising;

namespace {

constexpr int kHistogramBins = 10;

struct CliOptions {
    EnergyParams energy;
    TransitionParams transitions;
    double komi = std::numeric_limits<double>::quiet_NaN();  // NaN: use the record's komi
    std::string scoring = "area";
    std::string format = "csv";
    std::string out_dir = "goising-out";
    std::string group_by = "color";
    int jobs = 1;
};

void add_shared_flags(CLI::App* cmd, CliOptions* o) {
    cmd->add_option("--eye-base", o->energy.eye_base,
                    "Eye bonus base; 0 disables the eye term");
    cmd->add_option("--w-ladder", o->energy.tactic_weights.ladder, "Ladder tactic weight");
    cmd->add_option("--w-net", o->energy.tactic_weights.net, "Net tactic weight");
    cmd->add_option("--w-eye", o->energy.tactic_weights.eye, "Eye tactic weight");
    cmd->add_option("--w-slb", o->energy.tactic_weights.simple_liberty,
                    "Simple-liberty tactic weight");
    cmd->add_option("--field-scale", o->energy.field_scale, "External field scale");
    cmd->add_flag("--signed-eye-term", o->energy.signed_eye_term,
                  "Keep the eye bonus signed by chain color");
    cmd->add_option("--z-threshold", o->transitions.z_threshold,
                    "Phase transition z-score threshold");
    cmd->add_option("--window", o->transitions.window, "Phase transition trailing window");
    cmd->add_option("--komi", o->komi, "Komi override (default: the record's KM, else 6.5)");
    cmd->add_option("--scoring", o->scoring, "Scoring method")
        ->check(CLI::IsMember({"area", "territory"}));
    cmd->add_option("--format", o->format, "Output format for analyze")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o->out_dir, "Output directory");
    cmd->add_option("--jobs", o->jobs, "Worker threads for batch");
    cmd->add_option("--group-by", o->group_by, "Grouping for stats")
        ->check(CLI::IsMember({"color", "player"}));
}

std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

json params_json(const EnergyParams& p, const TransitionParams& t) {
    return {{"eye_base", p.eye_base},
            {"w_ladder", p.tactic_weights.ladder},
            {"w_net", p.tactic_weights.net},
            {"w_eye", p.tactic_weights.eye},
            {"w_slb", p.tactic_weights.simple_liberty},
            {"field_scale", p.field_scale},
            {"signed_eye_term", p.signed_eye_term},
            {"z_threshold", t.z_threshold},
            {"window", t.window}};
}

bool read_file(const std::string& path, std::string* out) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) return false;
    out->assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return !in.bad();
}

// Writes content to path, failing loudly: exit-code-0 means artifacts exist.
bool write_artifact(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out.good()) {
        std::cerr << "error: cannot write " << path.string() << "\n";
        return false;
    }
    return true;
}

std::string color_str(Color c) { return std::string(1, color_char(c)); }

// Replays a validated record to its final position for scoring.
Board final_board(const GameRecord& rec) {
    Board b(rec.size);
    for (Coord c : rec.setup_black) b.set_stone(c, PointState::Black);
    for (Coord c : rec.setup_white) b.set_stone(c, PointState::White);
    for (const Move& m : rec.moves) {
        if (m.is_pass())
            b.pass(m.color);
        else
            b.play(m.color, *m.at);
    }
    return b;
}

int cmd_analyze(const std::string& file, const CliOptions& opts) {
    std::string bytes;
    if (!read_file(file, &bytes)) {
        std::cerr << "error: cannot read file: " << file << "\n";
        return 1;
    }
    GameRecord rec;
    try {
        rec = parse_sgf(bytes);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    EnergySeries series;
    try {
        series = energy_series(rec, opts.energy, opts.transitions, file);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }

    const double komi = std::isnan(opts.komi) ? (rec.has_komi ? rec.komi : 6.5) : opts.komi;
    const ScoringMethod method = opts.scoring == "territory"
                                     ? ScoringMethod::TerritoryPlusCaptures
                                     : ScoringMethod::Area;
    const Score final_score = final_board(rec).score(komi, method);

    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory: " << opts.out_dir << "\n";
        return 1;
    }
    const fs::path out(opts.out_dir);

    if (opts.format == "json") {
        std::ostringstream doc;
        write_series_json(doc, series, opts.energy, opts.transitions);
        if (!write_artifact(out / "energy.json", doc.str())) return 1;
    } else {
        std::ostringstream energy_csv;
        write_series_csv(energy_csv, series);
        if (!write_artifact(out / "energy.csv", energy_csv.str())) return 1;

        std::ostringstream tactics_csv;
        tactics_csv << "move,color,kind\n";
        for (const MovePoint& m : series.moves)
            tactics_csv << m.move_index << ',' << color_char(m.color) << ','
                        << tactic_kind_name(m.kind) << '\n';
        if (!write_artifact(out / "tactics.csv", tactics_csv.str())) return 1;

        std::ostringstream transitions_csv;
        transitions_csv << "move,delta_h,z\n";
        for (const PhaseTransitionEvent& t : series.transitions)
            transitions_csv << t.move_index << ',' << format_g6(t.delta_h) << ','
                            << format_g6(t.z) << '\n';
        if (!write_artifact(out / "transitions.csv", transitions_csv.str())) return 1;
    }

    json summary;
    summary["game_id"] = series.game_id;
    summary["params"] = params_json(opts.energy, opts.transitions);
    summary["komi"] = komi;
    summary["scoring"] = opts.scoring;
    summary["prediction"]["winner"] =
        series.prediction.winner ? json(color_str(*series.prediction.winner)) : json(nullptr);
    summary["prediction"]["margin"] = series.prediction.margin;
    summary["score"]["black_points"] = final_score.black_points;
    summary["score"]["white_points"] = final_score.white_points;
    summary["score"]["winner"] =
        final_score.winner() ? json(color_str(*final_score.winner())) : json(nullptr);
    summary["result"] = rec.result.raw;
    if (!write_artifact(out / "summary.json", summary.dump(2) + "\n")) return 1;

    std::cout << "winner="
              << (series.prediction.winner ? color_str(*series.prediction.winner) : "none")
              << " margin=" << format_g6(series.prediction.margin) << "\n";
    return 0;
}

int cmd_batch(const std::string& root, const CliOptions& opts) {
    BatchReport report;
    try {
        const std::vector<CorpusEntry> entries = scan(root);
        BatchParams bp;
        bp.energy = opts.energy;
        bp.transitions = opts.transitions;
        bp.jobs = opts.jobs;
        bp.corpus_root = root;
        report = run_batch(entries, bp, default_cache_dir());
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }

    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory: " << opts.out_dir << "\n";
        return 1;
    }
    json doc;
    doc["params"] = params_json(opts.energy, opts.transitions);
    doc["corpus_root"] = root;
    doc["analyzed"] = report.analyzed;
    doc["cached"] = report.cached;
    doc["failed"] = report.failed;
    json games = json::array();
    for (const GameResultRecord& g : report.games) {
        json row = {{"path", g.path}};
        switch (g.outcome) {
            case BatchOutcome::Analyzed: row["outcome"] = "analyzed"; break;
            case BatchOutcome::Cached: row["outcome"] = "cached"; break;
            case BatchOutcome::Failed:
                row["outcome"] = "failed";
                row["error"] = g.error;
                break;
        }
        games.push_back(std::move(row));
    }
    doc["games"] = std::move(games);
    if (!write_artifact(fs::path(opts.out_dir) / "report.json", doc.dump(2) + "\n")) return 1;

    std::cout << "analyzed=" << report.analyzed << " cached=" << report.cached
              << " failed=" << report.failed << "\n";
    return 0;
}

int cmd_stats(const CliOptions& opts) {
    const std::string cache_dir = default_cache_dir();
    const std::string phash = params_hash_hex(opts.energy, opts.transitions);
    const std::vector<GameAnalysis> analyses = load_cached_analyses(cache_dir, phash);
    if (analyses.empty()) {
        std::cerr << "error: no analyzed games in cache: " << cache_dir << "\n";
        return 1;
    }
    const GroupBy group_by = opts.group_by == "player" ? GroupBy::Player : GroupBy::Color;
    const std::vector<TacticCountSeries> tables = count_tactics(analyses, group_by);

    std::error_code ec;
    fs::create_directories(opts.out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create output directory: " << opts.out_dir << "\n";
        return 1;
    }
    const fs::path out(opts.out_dir);

    std::ostringstream counts_csv;
    write_tactic_counts_csv(counts_csv, tables);
    if (!write_artifact(out / "tactic_counts.csv", counts_csv.str())) return 1;

    std::ostringstream freq_csv;
    write_frequencies_csv(freq_csv, frequency_tables(tables));
    if (!write_artifact(out / "frequencies.csv", freq_csv.str())) return 1;

    std::ostringstream hist_csv;
    write_histogram_csv(hist_csv, usage_histograms(tables, kHistogramBins));
    if (!write_artifact(out / "histogram.csv", hist_csv.str())) return 1;

    json echo;
    echo["params"] = params_json(opts.energy, opts.transitions);
    echo["group_by"] = opts.group_by;
    echo["games"] = static_cast<std::int64_t>(analyses.size());
    if (!write_artifact(out / "params.json", echo.dump(2) + "\n")) return 1;

    std::cout << "games=" << analyses.size() << " groups=" << tables.size() << "\n";
    return 0;
}

int lint_one(const std::string& path) {
    std::string bytes;
    if (!read_file(path, &bytes)) {
        std::cout << "FAIL " << path << ": cannot read file\n";
        return 1;
    }
    try {
        (void)parse_sgf(bytes);
    } catch (const std::exception& ex) {
        std::cout << "FAIL " << path << ": " << ex.what() << "\n";
        return 1;
    }
    std::cout << "OK " << path << "\n";
    return 0;
}

int cmd_validate(const std::string& path) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
        std::vector<std::string> files;
        for (const fs::directory_entry& de :
             fs::recursive_directory_iterator(path, fs::directory_options::skip_permission_denied,
                                              ec)) {
            if (de.is_regular_file(ec) && !ec && de.path().extension() == ".sgf")
                files.push_back(de.path().string());
        }
        std::sort(files.begin(), files.end());
        int bad = 0;
        for (const std::string& f : files) bad += lint_one(f);
        return bad > 0 ? 1 : 0;
    }
    if (fs::is_regular_file(path, ec)) return lint_one(path);
    std::cerr << "error: no such file or directory: " << path << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Go game analysis: tactics, Ising energy series, and corpus statistics"};
    app.require_subcommand(1);

    CliOptions opts;
    std::string analyze_file;
    std::string batch_root;
    std::string validate_path;

    CLI::App* analyze = app.add_subcommand("analyze", "Analyze a single SGF game");
    analyze->add_option("file", analyze_file, "SGF file")->required();
    add_shared_flags(analyze, &opts);

    CLI::App* batch = app.add_subcommand("batch", "Analyze a corpus directory with caching");
    batch->add_option("root", batch_root, "Corpus root directory")->required();
    add_shared_flags(batch, &opts);

    CLI::App* stats = app.add_subcommand("stats", "Aggregate statistics from the cache");
    add_shared_flags(stats, &opts);

    CLI::App* validate = app.add_subcommand("validate", "Lint SGF files");
    validate->add_option("path", validate_path, "SGF file or directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        opts.energy.validate();
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }

    if (analyze->parsed()) return cmd_analyze(analyze_file, opts);
    if (batch->parsed()) return cmd_batch(batch_root, opts);
    if (stats->parsed()) return cmd_stats(opts);
    if (validate->parsed()) return cmd_validate(validate_path);
    return 1;
}
