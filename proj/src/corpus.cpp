#include "goising/corpus.hpp"

#include "goising/board.hpp"
#include "goising/tactics.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace goising {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

bool read_file(const std::string& path, std::string* out) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) return false;
    out->assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return !in.bad();
}

bool passes(const CorpusEntry& e, const CorpusFilters& f) {
    if (!f.date_from.empty() || !f.date_to.empty()) {
        if (e.date.empty()) return false;
        if (!f.date_from.empty() && e.date < f.date_from) return false;
        if (!f.date_to.empty() && !(e.date <= f.date_to || e.date.starts_with(f.date_to)))
            return false;
    }
    if (!f.player.empty() && e.black_player.find(f.player) == std::string::npos &&
        e.white_player.find(f.player) == std::string::npos)
        return false;
    if (!f.result.empty() && !e.result.raw.starts_with(f.result)) return false;
    return true;
}

json series_to_json(const EnergySeries& s) {
    json moves = json::array();
    for (const MovePoint& m : s.moves) {
        moves.push_back({{"move", m.move_index},
                         {"color", std::string(1, color_char(m.color))},
                         {"kind", tactic_kind_name(m.kind)},
                         {"H", m.h},
                         {"black_strength", m.black_strength},
                         {"white_strength", m.white_strength},
                         {"event", m.event}});
    }
    json trans = json::array();
    for (const PhaseTransitionEvent& t : s.transitions) {
        // JSON has no infinity literal; non-finite z round-trips as a string.
        json z;
        if (std::isinf(t.z))
            z = t.z > 0 ? "inf" : "-inf";
        else
            z = t.z;
        trans.push_back({{"move", t.move_index}, {"delta_h", t.delta_h}, {"z", z}});
    }
    json pred;
    if (s.prediction.winner)
        pred["winner"] = std::string(1, color_char(*s.prediction.winner));
    else
        pred["winner"] = nullptr;
    pred["margin"] = s.prediction.margin;
    return {{"game_id", s.game_id},
            {"moves", std::move(moves)},
            {"transitions", std::move(trans)},
            {"prediction", std::move(pred)}};
}

bool kind_from_name(const std::string& name, TacticKind* out) {
    for (int k = 0; k < kTacticKindCount; ++k) {
        if (name == tactic_kind_name(static_cast<TacticKind>(k))) {
            *out = static_cast<TacticKind>(k);
            return true;
        }
    }
    return false;
}

EnergySeries series_from_json(const json& j) {
    EnergySeries s;
    s.game_id = j.at("game_id").get<std::string>();
    for (const json& m : j.at("moves")) {
        MovePoint mp;
        mp.move_index = m.at("move").get<int>();
        mp.color = m.at("color").get<std::string>() == "B" ? Color::Black : Color::White;
        if (!kind_from_name(m.at("kind").get<std::string>(), &mp.kind))
            throw std::runtime_error("unknown tactic kind in cache record");
        mp.h = m.at("H").get<double>();
        mp.black_strength = m.at("black_strength").get<double>();
        mp.white_strength = m.at("white_strength").get<double>();
        mp.event = m.at("event").get<bool>();
        s.moves.push_back(mp);
    }
    for (const json& t : j.at("transitions")) {
        PhaseTransitionEvent ev;
        ev.move_index = t.at("move").get<int>();
        ev.delta_h = t.at("delta_h").get<double>();
        const json& z = t.at("z");
        if (z.is_string())
            ev.z = z.get<std::string>() == "-inf" ? -std::numeric_limits<double>::infinity()
                                                  : std::numeric_limits<double>::infinity();
        else
            ev.z = z.get<double>();
        s.transitions.push_back(ev);
    }
    const json& pred = j.at("prediction");
    if (!pred.at("winner").is_null())
        s.prediction.winner =
            pred.at("winner").get<std::string>() == "B" ? Color::Black : Color::White;
    s.prediction.margin = pred.at("margin").get<double>();
    return s;
}

json params_to_json(const EnergyParams& p, const TransitionParams& t) {
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

struct CachedGame {
    std::string key;
    std::string path;
    std::string black_player;
    std::string white_player;
    EnergySeries series;
};

// Reads every valid record with the given params hash, in line order.
// Corrupt or alien lines (e.g. a record cut short by an interrupt) are
// skipped; the re-run simply recomputes those games.
std::vector<CachedGame> load_cache_records(const fs::path& file, const std::string& phash,
                                           bool* ends_with_newline) {
    std::vector<CachedGame> out;
    if (ends_with_newline) *ends_with_newline = true;
    std::string all;
    if (!read_file(file.string(), &all)) return out;
    if (ends_with_newline && !all.empty() && all.back() != '\n') *ends_with_newline = false;

    std::size_t pos = 0;
    while (pos < all.size()) {
        const std::size_t nl = all.find('\n', pos);
        const std::size_t end = nl == std::string::npos ? all.size() : nl;
        const std::string_view line(all.data() + pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        const json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) continue;
        try {
            if (j.at("params_hash").get<std::string>() != phash) continue;
            CachedGame g;
            g.key = j.at("content_hash").get<std::string>() + ":" + phash;
            g.path = j.at("path").get<std::string>();
            g.black_player = j.at("black_player").get<std::string>();
            g.white_player = j.at("white_player").get<std::string>();
            g.series = series_from_json(j.at("series"));
            out.push_back(std::move(g));
        } catch (const std::exception&) {
            continue;  // structurally invalid record
        }
    }
    return out;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

}  // namespace

std::string content_hash_hex(std::string_view bytes) { return hex16(fnv1a64(bytes)); }

std::string params_hash_hex(const EnergyParams& params, const TransitionParams& transitions) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "eye_base=%.17g;w_ladder=%.17g;w_net=%.17g;w_eye=%.17g;w_slb=%.17g;"
                  "field_scale=%.17g;signed_eye_term=%d;z_threshold=%.17g;window=%d",
                  params.eye_base, params.tactic_weights.ladder, params.tactic_weights.net,
                  params.tactic_weights.eye, params.tactic_weights.simple_liberty,
                  params.field_scale, params.signed_eye_term ? 1 : 0, transitions.z_threshold,
                  transitions.window);
    return hex16(fnv1a64(buf));
}

std::string default_cache_dir() {
    const char* env = std::getenv("GOISING_CACHE");
    return env && *env ? env : ".goising-cache";
}

std::vector<CorpusEntry> scan(const std::string& root, const CorpusFilters& filters) {
    std::error_code ec;
    if (!fs::is_directory(root, ec) || ec)
        throw std::runtime_error("corpus root is not a readable directory: " + root);

    std::vector<std::string> paths;
    fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
    if (ec) throw std::runtime_error("cannot open corpus root: " + root + ": " + ec.message());
    for (const fs::directory_entry& de : it) {
        if (de.is_regular_file(ec) && !ec && de.path().extension() == ".sgf")
            paths.push_back(de.path().string());
    }
    std::sort(paths.begin(), paths.end());

    std::vector<CorpusEntry> out;
    for (const std::string& path : paths) {
        CorpusEntry e;
        e.path = path;
        std::string bytes;
        if (!read_file(path, &bytes)) {
            e.status = ParseStatus::Failed;
            e.error = "cannot read file";
            out.push_back(std::move(e));  // failures are retained regardless of filters
            continue;
        }
        e.content_hash = content_hash_hex(bytes);
        try {
            const GameRecord rec = parse_sgf(bytes);
            e.black_player = rec.black_player;
            e.white_player = rec.white_player;
            e.date = rec.date;
            e.result = rec.result;
            e.size = rec.size;
        } catch (const std::exception& ex) {
            e.status = ParseStatus::Failed;
            e.error = ex.what();
            out.push_back(std::move(e));
            continue;
        }
        if (passes(e, filters)) out.push_back(std::move(e));
    }
    return out;
}

BatchReport run_batch(const std::vector<CorpusEntry>& entries, const BatchParams& params,
                      const std::string& cache_dir) {
    params.energy.validate();
    const std::string phash = params_hash_hex(params.energy, params.transitions);

    const fs::path dir(cache_dir);
    std::error_code ec;
    if (fs::exists(dir, ec) && !fs::is_directory(dir, ec))
        throw std::runtime_error("cache path is not a directory: " + cache_dir);
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create cache directory: " + cache_dir);

    const fs::path results_path = dir / "results.jsonl";
    bool ends_with_newline = true;
    std::map<std::string, CachedGame> cache;
    for (CachedGame& g : load_cache_records(results_path, phash, &ends_with_newline))
        cache[g.key] = std::move(g);  // later records win

    std::ofstream out(results_path, std::ios::binary | std::ios::app);
    if (!out.good()) throw std::runtime_error("cannot open cache for writing: " + cache_dir);
    if (!ends_with_newline) out << '\n';  // repair a record cut short by an interrupt

    std::vector<GameResultRecord> results(entries.size());
    std::mutex write_mu;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> write_failed{false};
    std::string failure_message;

    const auto process = [&](std::size_t i) {
        const CorpusEntry& e = entries[i];
        GameResultRecord& r = results[i];
        r.path = e.path;
        r.black_player = e.black_player;
        r.white_player = e.white_player;
        if (e.status == ParseStatus::Failed) {
            r.outcome = BatchOutcome::Failed;
            r.error = e.error;
            return;
        }
        std::string bytes;
        if (!read_file(e.path, &bytes)) {
            r.outcome = BatchOutcome::Failed;
            r.error = "cannot read file";
            return;
        }
        const std::string chash = content_hash_hex(bytes);
        const std::string key = chash + ":" + phash;
        if (const auto it = cache.find(key); it != cache.end()) {
            r.outcome = BatchOutcome::Cached;
            r.series = it->second.series;
            r.series.game_id = e.path;
            return;
        }
        try {
            const GameRecord rec = parse_sgf(bytes);
            r.series = energy_series(rec, params.energy, params.transitions, e.path);
            r.outcome = BatchOutcome::Analyzed;
        } catch (const std::exception& ex) {
            r.outcome = BatchOutcome::Failed;
            r.error = ex.what();
            return;
        }
        json record = {{"content_hash", chash},
                       {"params_hash", phash},
                       {"path", e.path},
                       {"black_player", e.black_player},
                       {"white_player", e.white_player},
                       {"series", series_to_json(r.series)}};
        const std::string line = record.dump();
        const std::lock_guard<std::mutex> lock(write_mu);
        if (write_failed.load()) return;
        out << line << '\n';
        out.flush();
        if (!out.good()) {
            write_failed.store(true);
            failure_message = "cache write failed: " + results_path.string();
        }
    };

    const std::size_t n = entries.size();
    const int jobs = std::clamp(params.jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
    std::string worker_error;
    std::mutex error_mu;
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || write_failed.load()) return;
            try {
                process(i);
            } catch (const std::exception& ex) {
                const std::lock_guard<std::mutex> lock(error_mu);
                if (worker_error.empty()) worker_error = ex.what();
                return;
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (write_failed.load()) throw std::runtime_error(failure_message);
    if (!worker_error.empty()) throw std::runtime_error("batch worker failed: " + worker_error);

    BatchReport report;
    report.games = std::move(results);
    std::sort(report.games.begin(), report.games.end(),
              [](const GameResultRecord& a, const GameResultRecord& b) { return a.path < b.path; });
    for (const GameResultRecord& g : report.games) {
        switch (g.outcome) {
            case BatchOutcome::Analyzed: ++report.analyzed; break;
            case BatchOutcome::Cached: ++report.cached; break;
            case BatchOutcome::Failed: ++report.failed; break;
        }
    }

    json manifest = {{"tool_version", kToolVersion},
                     {"corpus_root", params.corpus_root},
                     {"params", params_to_json(params.energy, params.transitions)},
                     {"params_hash", phash},
                     {"entries", static_cast<std::int64_t>(entries.size())},
                     {"analyzed", report.analyzed},
                     {"cached", report.cached},
                     {"failed", report.failed},
                     {"generated_at", utc_timestamp()}};
    std::ofstream mf(dir / "manifest.json", std::ios::binary | std::ios::trunc);
    mf << manifest.dump(2) << '\n';
    mf.flush();
    if (!mf.good()) throw std::runtime_error("cannot write manifest: " + cache_dir);

    return report;
}

std::vector<GameAnalysis> load_cached_analyses(const std::string& cache_dir,
                                               const std::string& params_hash) {
    const auto records = load_cache_records(fs::path(cache_dir) / "results.jsonl", params_hash,
                                            nullptr);
    std::map<std::string, const CachedGame*> by_path;  // last record per path wins
    for (const CachedGame& g : records) by_path[g.path] = &g;

    std::vector<GameAnalysis> out;
    out.reserve(by_path.size());
    for (const auto& [path, g] : by_path) {
        GameAnalysis a;
        a.path = path;
        a.black_player = g->black_player;
        a.white_player = g->white_player;
        a.series = g->series;
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace goising
