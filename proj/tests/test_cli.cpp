#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "goising/corpus.hpp"
#include "goising/stats.hpp"

#include "json.hpp"

#include <sys/wait.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace goising;
namespace fs = std::filesystem;

#ifndef GOISING_CLI_PATH
#error "GOISING_CLI_PATH must point at the goising binary"
#endif

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static std::uint64_t counter = 0;
        static const std::uint64_t run_tag = std::random_device{}();
        path = fs::temp_directory_path() /
               ("goising-cli-" + std::to_string(run_tag) + "-" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str() const { return path.string(); }
};

void write_file(const fs::path& p, const std::string& body) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << body;
    REQUIRE(out.good());
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    TempDir cap;
    const fs::path so = cap.path / "stdout.txt";
    const fs::path se = cap.path / "stderr.txt";
    const std::string cmd = std::string("'") + GOISING_CLI_PATH + "' " + args + " >'" +
                            so.string() + "' 2>'" + se.string() + "'";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = status == -1 ? -1 : WEXITSTATUS(status);
    r.out = read_file(so);
    r.err = read_file(se);
    return r;
}

std::string game_sgf(const std::string& pb, const std::string& pw, const std::string& dt,
                     const std::string& re, const std::string& moves) {
    return "(;GM[1]FF[4]SZ[9]PB[" + pb + "]PW[" + pw + "]" + (dt.empty() ? "" : "DT[" + dt + "]") +
           "RE[" + re + "]KM[6.5]" + moves + ")";
}

const char* kCaptureMoves = ";B[ba];W[aa];B[ab]";

void make_three_game_corpus(const fs::path& root) {
    write_file(root / "a.sgf", game_sgf("Alice", "Bob", "2020-01-15", "B+R", kCaptureMoves));
    write_file(root / "b" / "d.sgf",
               game_sgf("Carol", "Dan", "2020-06-15", "W+3.5", ";B[cc];W[gg];B[ee];W[cg]"));
    write_file(root / "c.sgf", game_sgf("Alice", "Erin", "2021-01-01", "B+1.5", ";B[dd];W[ff];B[gc]"));
}

bool contains_timestampish_key(const std::string& body) {
    return body.find("generated_at") != std::string::npos ||
           body.find("timestamp") != std::string::npos;
}

int count_lines(const std::string& body) {
    int n = 0;
    for (char c : body)
        if (c == '\n') ++n;
    return n;
}

struct EnvGuard {
    std::string name;
    EnvGuard(const std::string& n, const std::string& value) : name(n) {
        ::setenv(name.c_str(), value.c_str(), 1);
    }
    ~EnvGuard() { ::unsetenv(name.c_str()); }
};

}  // namespace

TEST_CASE("analyze: artifacts, headers, params echo, prediction line") {
    TempDir work;
    const fs::path game = work.path / "g.sgf";
    write_file(game, game_sgf("Alice", "Bob", "2020-01-15", "B+R", kCaptureMoves));
    const fs::path out = work.path / "out";

    const RunResult r =
        run_cli("analyze '" + game.string() + "' --out '" + out.string() + "'");
    CHECK(r.code == 0);
    CHECK(r.out.find("winner=") != std::string::npos);

    const std::string energy = read_file(out / "energy.csv");
    CHECK(energy.rfind("move,H,black_strength,white_strength,event_flag\n", 0) == 0);
    CHECK(count_lines(energy) == 4);  // header + three placed stones

    const std::string tactics = read_file(out / "tactics.csv");
    CHECK(tactics.rfind("move,color,kind\n", 0) == 0);
    CHECK(count_lines(tactics) == 4);

    const std::string transitions = read_file(out / "transitions.csv");
    CHECK(transitions.rfind("move,delta_h,z\n", 0) == 0);

    const auto summary = nlohmann::json::parse(read_file(out / "summary.json"));
    CHECK(summary.at("game_id").get<std::string>() == game.string());
    CHECK(summary.at("params").at("eye_base").get<double>() == 2.0);
    CHECK(summary.at("params").at("w_ladder").get<double>() == 0.8);
    CHECK(summary.at("params").at("window").get<int>() == 30);
    CHECK(summary.at("prediction").contains("winner"));
    CHECK(summary.at("prediction").contains("margin"));

    for (const char* name : {"energy.csv", "tactics.csv", "transitions.csv", "summary.json"})
        CHECK(!contains_timestampish_key(read_file(out / name)));
}

TEST_CASE("analyze: flag overrides are echoed into the output") {
    TempDir work;
    const fs::path game = work.path / "g.sgf";
    write_file(game, game_sgf("A", "B", "2020-01-01", "B+R", ";B[aa];W[bb]"));
    const fs::path out = work.path / "out";

    const RunResult r = run_cli("analyze '" + game.string() + "' --out '" + out.string() +
                                "' --eye-base 0 --w-net 0.7 --z-threshold 2.5 --window 5");
    CHECK(r.code == 0);
    const auto summary = nlohmann::json::parse(read_file(out / "summary.json"));
    CHECK(summary.at("params").at("eye_base").get<double>() == 0.0);
    CHECK(summary.at("params").at("w_net").get<double>() == 0.7);
    CHECK(summary.at("params").at("z_threshold").get<double>() == 2.5);
    CHECK(summary.at("params").at("window").get<int>() == 5);
}

TEST_CASE("analyze: JSON format emits the full document plus the summary") {
    TempDir work;
    const fs::path game = work.path / "g.sgf";
    write_file(game, game_sgf("Alice", "Bob", "2020-01-15", "B+R", kCaptureMoves));
    const fs::path out = work.path / "out";

    const RunResult r = run_cli("analyze '" + game.string() + "' --out '" + out.string() +
                                "' --format json");
    CHECK(r.code == 0);
    CHECK(!fs::exists(out / "energy.csv"));
    const auto doc = nlohmann::json::parse(read_file(out / "energy.json"));
    CHECK(doc.at("params").at("eye_base").get<double>() == 2.0);
    CHECK(doc.at("moves").size() == 3);
    CHECK(doc.at("prediction").contains("winner"));
    CHECK(!contains_timestampish_key(read_file(out / "energy.json")));
    CHECK(fs::exists(out / "summary.json"));
}

TEST_CASE("analyze: komi and scoring flags drive the final-position score") {
    TempDir work;
    const fs::path game = work.path / "g.sgf";
    write_file(game, game_sgf("A", "B", "2020-01-01", "B+R", ";B[ee]"));
    const fs::path out = work.path / "out";

    const RunResult r = run_cli("analyze '" + game.string() + "' --out '" + out.string() +
                                "' --komi 0.5 --scoring area");
    CHECK(r.code == 0);
    const auto summary = nlohmann::json::parse(read_file(out / "summary.json"));
    CHECK(summary.at("komi").get<double>() == 0.5);
    CHECK(summary.at("scoring").get<std::string>() == "area");
    CHECK(summary.at("score").at("winner").get<std::string>() == "B");
    CHECK(summary.at("score").at("black_points").get<double>() == 81.0);
}

TEST_CASE("analyze: identical invocations produce byte-identical artifacts") {
    TempDir work;
    const fs::path game = work.path / "g.sgf";
    write_file(game, game_sgf("Alice", "Bob", "2020-01-15", "B+R", kCaptureMoves));
    const fs::path out1 = work.path / "out1";
    const fs::path out2 = work.path / "out2";

    CHECK(run_cli("analyze '" + game.string() + "' --out '" + out1.string() + "'").code == 0);
    CHECK(run_cli("analyze '" + game.string() + "' --out '" + out2.string() + "'").code == 0);
    for (const char* name : {"energy.csv", "tactics.csv", "transitions.csv", "summary.json"})
        CHECK(read_file(out1 / name) == read_file(out2 / name));
}

TEST_CASE("analyze: replay failure exits 1 and names the move") {
    TempDir work;
    const fs::path game = work.path / "bad.sgf";
    write_file(game, game_sgf("A", "B", "2020-01-01", "B+R", ";B[aa];W[bb];B[aa]"));

    const RunResult r =
        run_cli("analyze '" + game.string() + "' --out '" + (work.path / "out").string() + "'");
    CHECK(r.code == 1);
    CHECK(r.err.find("move 3") != std::string::npos);
}

TEST_CASE("analyze: parse failure exits 1; missing file is an error") {
    TempDir work;
    const fs::path game = work.path / "broken.sgf";
    write_file(game, "(;GM[1]SZ[9];B[aa");
    const RunResult r =
        run_cli("analyze '" + game.string() + "' --out '" + (work.path / "out").string() + "'");
    CHECK(r.code == 1);
    CHECK(!r.err.empty());

    const RunResult missing = run_cli("analyze '" + (work.path / "absent.sgf").string() +
                                      "' --out '" + (work.path / "out").string() + "'");
    CHECK(missing.code != 0);
}

TEST_CASE("batch: analyzes a corpus, reruns hit the cache, report echoes params") {
    TempDir root;
    TempDir cache;
    TempDir out;
    make_three_game_corpus(root.path);
    const EnvGuard env("GOISING_CACHE", cache.str());

    const RunResult r = run_cli("batch '" + root.str() + "' --out '" + out.str() + "'");
    CHECK(r.code == 0);
    const auto report = nlohmann::json::parse(read_file(out.path / "report.json"));
    CHECK(report.at("analyzed").get<int>() == 3);
    CHECK(report.at("cached").get<int>() == 0);
    CHECK(report.at("failed").get<int>() == 0);
    CHECK(report.at("corpus_root").get<std::string>() == root.str());
    CHECK(report.at("params").at("eye_base").get<double>() == 2.0);
    REQUIRE(report.at("games").size() == 3);
    CHECK(report.at("games")[0].at("path").get<std::string>() ==
          (root.path / "a.sgf").string());
    CHECK(report.at("games")[0].at("outcome").get<std::string>() == "analyzed");
    CHECK(!contains_timestampish_key(read_file(out.path / "report.json")));

    const RunResult again = run_cli("batch '" + root.str() + "' --out '" + out.str() + "'");
    CHECK(again.code == 0);
    const auto rerun = nlohmann::json::parse(read_file(out.path / "report.json"));
    CHECK(rerun.at("cached").get<int>() == 3);
    CHECK(rerun.at("analyzed").get<int>() == 0);
}

TEST_CASE("batch: per-game failures are reported but the batch still succeeds") {
    TempDir root;
    TempDir cache;
    TempDir out;
    write_file(root.path / "ok.sgf", game_sgf("A", "B", "2020-01-01", "B+R", ";B[aa];W[bb]"));
    write_file(root.path / "bad.sgf", "(;GM[1]SZ[9];B[aa");
    const EnvGuard env("GOISING_CACHE", cache.str());

    const RunResult r = run_cli("batch '" + root.str() + "' --out '" + out.str() + "'");
    CHECK(r.code == 0);  // the report artifact was written
    const auto report = nlohmann::json::parse(read_file(out.path / "report.json"));
    CHECK(report.at("analyzed").get<int>() == 1);
    CHECK(report.at("failed").get<int>() == 1);
    CHECK(report.at("games")[0].at("outcome").get<std::string>() == "failed");
    CHECK(!report.at("games")[0].at("error").get<std::string>().empty());
}

TEST_CASE("batch: --jobs 1 and --jobs 8 produce byte-identical reports") {
    TempDir root;
    make_three_game_corpus(root.path);
    write_file(root.path / "e.sgf", game_sgf("P", "Q", "2020-02-02", "W+R", ";B[ha];W[hb];B[hc]"));

    TempDir cache1, cache2, out1, out2;
    {
        const EnvGuard env("GOISING_CACHE", cache1.str());
        CHECK(run_cli("batch '" + root.str() + "' --out '" + out1.str() + "' --jobs 1").code == 0);
    }
    {
        const EnvGuard env("GOISING_CACHE", cache2.str());
        CHECK(run_cli("batch '" + root.str() + "' --out '" + out2.str() + "' --jobs 8").code == 0);
    }
    CHECK(read_file(out1.path / "report.json") == read_file(out2.path / "report.json"));
}

TEST_CASE("stats: CSV artifacts match the library pipeline exactly") {
    TempDir root;
    TempDir cache;
    TempDir batch_out;
    TempDir stats_out;
    make_three_game_corpus(root.path);
    const EnvGuard env("GOISING_CACHE", cache.str());
    REQUIRE(run_cli("batch '" + root.str() + "' --out '" + batch_out.str() + "'").code == 0);

    const RunResult r = run_cli("stats --out '" + stats_out.str() + "' --group-by color");
    CHECK(r.code == 0);

    const std::string counts_csv = read_file(stats_out.path / "tactic_counts.csv");
    const std::string freq_csv = read_file(stats_out.path / "frequencies.csv");
    const std::string hist_csv = read_file(stats_out.path / "histogram.csv");
    CHECK(counts_csv.rfind("group,move,kind,count\n", 0) == 0);
    CHECK(freq_csv.rfind("group,kind,frequency,zscore\n", 0) == 0);
    CHECK(hist_csv.rfind("group,kind,bin_lo,bin_hi,count\n", 0) == 0);
    CHECK(counts_csv.find("\nB,1,") != std::string::npos);
    CHECK(counts_csv.find("\nW,1,") != std::string::npos);
    for (const auto& body : {counts_csv, freq_csv, hist_csv})
        CHECK(!contains_timestampish_key(body));

    // Pipeline equals library: rebuild the same CSVs in-process from the cache.
    const EnergyParams defaults;
    const TransitionParams tdefaults;
    const auto analyses =
        load_cached_analyses(cache.str(), params_hash_hex(defaults, tdefaults));
    REQUIRE(analyses.size() == 3);
    const auto tables = count_tactics(analyses, GroupBy::Color);
    std::ostringstream counts_ref, freq_ref, hist_ref;
    write_tactic_counts_csv(counts_ref, tables);
    write_frequencies_csv(freq_ref, frequency_tables(tables));
    write_histogram_csv(hist_ref, usage_histograms(tables, 10));
    CHECK(counts_csv == counts_ref.str());
    CHECK(freq_csv == freq_ref.str());
    CHECK(hist_csv == hist_ref.str());

    const auto params_echo = nlohmann::json::parse(read_file(stats_out.path / "params.json"));
    CHECK(params_echo.at("params").at("eye_base").get<double>() == 2.0);
    CHECK(params_echo.at("group_by").get<std::string>() == "color");
}

TEST_CASE("stats: player grouping uses the recorded player names") {
    TempDir root;
    TempDir cache;
    TempDir batch_out;
    TempDir stats_out;
    make_three_game_corpus(root.path);
    const EnvGuard env("GOISING_CACHE", cache.str());
    REQUIRE(run_cli("batch '" + root.str() + "' --out '" + batch_out.str() + "'").code == 0);

    const RunResult r = run_cli("stats --out '" + stats_out.str() + "' --group-by player");
    CHECK(r.code == 0);
    const std::string counts_csv = read_file(stats_out.path / "tactic_counts.csv");
    CHECK(counts_csv.find("\nAlice,") != std::string::npos);
    CHECK(counts_csv.find("\nBob,") != std::string::npos);
}

TEST_CASE("stats: empty cache exits 1 with a clear message") {
    TempDir cache;
    TempDir out;
    const EnvGuard env("GOISING_CACHE", cache.str());
    const RunResult r = run_cli("stats --out '" + out.str() + "'");
    CHECK(r.code == 1);
    CHECK(r.err.find("no analyzed games") != std::string::npos);
}

TEST_CASE("stats: parameter flags select the matching cache generation") {
    TempDir root;
    TempDir cache;
    TempDir batch_out;
    TempDir stats_out;
    make_three_game_corpus(root.path);
    const EnvGuard env("GOISING_CACHE", cache.str());
    REQUIRE(run_cli("batch '" + root.str() + "' --out '" + batch_out.str() + "'").code == 0);

    // The cache holds only default-parameter results; asking for another
    // generation finds nothing.
    const RunResult r = run_cli("stats --out '" + stats_out.str() + "' --eye-base 0");
    CHECK(r.code == 1);
    CHECK(r.err.find("no analyzed games") != std::string::npos);
}

TEST_CASE("validate: lints files and directories") {
    TempDir work;
    write_file(work.path / "good.sgf", game_sgf("A", "B", "2020-01-01", "B+R", ";B[aa]"));
    const RunResult ok = run_cli("validate '" + (work.path / "good.sgf").string() + "'");
    CHECK(ok.code == 0);
    CHECK(ok.out.find("OK") != std::string::npos);

    write_file(work.path / "broken.sgf", "(;GM[1]SZ[9];B[aa");
    const RunResult dir = run_cli("validate '" + work.str() + "'");
    CHECK(dir.code == 1);
    CHECK(dir.out.find("OK") != std::string::npos);
    CHECK(dir.out.find("FAIL") != std::string::npos);

    const RunResult missing = run_cli("validate '" + (work.path / "nope.sgf").string() + "'");
    CHECK(missing.code != 0);
}

TEST_CASE("cli: bad flag values are rejected") {
    TempDir work;
    write_file(work.path / "g.sgf", game_sgf("A", "B", "2020-01-01", "B+R", ";B[aa]"));
    CHECK(run_cli("analyze '" + (work.path / "g.sgf").string() + "' --scoring bogus").code != 0);
    CHECK(run_cli("analyze '" + (work.path / "g.sgf").string() + "' --format bogus").code != 0);
    CHECK(run_cli("stats --group-by bogus").code != 0);
    CHECK(run_cli("frobnicate").code != 0);
}
