#pragma once

// Corpus ingestion and resumable batch analysis: recursive SGF discovery
// with metadata filters, a line-delimited JSON cache keyed by content hash
// plus parameter hash, and parallel batch runs whose reports are
// independent of discovery order and parallelism degree.

#include "goising/energy.hpp"
#include "goising/sgf.hpp"
#include "goising/stats.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace goising {

inline constexpr const char* kToolVersion = "0.1.0";

// All filters are conjunctive; empty fields match everything.
struct CorpusFilters {
    std::string date_from;  // inclusive lower bound, lexicographic on ISO dates
    std::string date_to;    // inclusive upper bound; a prefix (e.g. "2020") matches the period
    std::string player;     // substring of either player name
    std::string result;     // prefix of the raw RE value (e.g. "B+" = all black wins)
};

enum class ParseStatus { Ok, Failed };

struct CorpusEntry {
    std::string path;
    ParseStatus status = ParseStatus::Ok;
    std::string error;  // set when status == Failed

    // Game metadata, valid when status == Ok.
    std::string black_player;
    std::string white_player;
    std::string date;
    GameResult result;
    int size = 19;

    // FNV-1a 64 over the file bytes, hex; set whenever the file was readable.
    std::string content_hash;
};

// Recursively discovers *.sgf files under root (sorted by path), parses
// their metadata, and applies the filters. Unreadable or unparseable files
// become Failed entries (always retained); an unreadable root throws
// std::runtime_error.
std::vector<CorpusEntry> scan(const std::string& root, const CorpusFilters& filters = {});

// Cache keys: FNV-1a 64 in fixed 16-digit hex. Not cryptographic — these
// key a local cache, they do not authenticate it.
std::string content_hash_hex(std::string_view bytes);
// Covers every EnergyParams, TacticWeights and TransitionParams field, so
// the cache never serves results computed under different parameters.
std::string params_hash_hex(const EnergyParams& params, const TransitionParams& transitions);

// GOISING_CACHE if set, else ".goising-cache".
std::string default_cache_dir();

enum class BatchOutcome { Analyzed, Cached, Failed };

struct GameResultRecord {
    std::string path;
    std::string black_player;
    std::string white_player;
    BatchOutcome outcome = BatchOutcome::Failed;
    std::string error;   // set when outcome == Failed
    EnergySeries series;  // set when outcome != Failed
};

struct BatchParams {
    EnergyParams energy;
    TransitionParams transitions;
    int jobs = 1;             // worker threads; values < 1 behave as 1
    std::string corpus_root;  // echoed into the manifest
};

struct BatchReport {
    int analyzed = 0;
    int cached = 0;
    int failed = 0;
    std::vector<GameResultRecord> games;  // sorted by path
};

// Analyzes every entry, serving unchanged (content, params) pairs from
// <cache_dir>/results.jsonl and appending newly computed records to it
// (flushed per record, so completed games survive an interrupt). Writes
// <cache_dir>/manifest.json describing the run. Per-game failures are
// reported in the result; cache write failures throw std::runtime_error.
BatchReport run_batch(const std::vector<CorpusEntry>& entries, const BatchParams& params,
                      const std::string& cache_dir);

// Rebuilds statistics input purely from the cache: all records whose
// params hash matches, sorted by path, duplicates collapsed (last record
// per (path, key) wins). Missing cache files yield an empty list.
std::vector<GameAnalysis> load_cached_analyses(const std::string& cache_dir,
                                               const std::string& params_hash);

}  // namespace goising
