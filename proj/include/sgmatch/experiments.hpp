#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sgmatch/graph.hpp"
#include "sgmatch/graph_model.hpp"
#include "sgmatch/matcher.hpp"

namespace sgmatch::experiments {

// ---- edge lists -------------------------------------------------------------

struct EdgeListFile {
    Graph graph;
    std::size_t duplicates_removed = 0;
    /// original_id[v] is the id vertex v had in the file; identity unless compacted.
    std::vector<std::size_t> original_id;
    bool compacted = false;
};

/// One "u v" pair of non-negative integers per line; blank lines and text after '#' ignored.
/// Without compaction the order is max id + 1. With it, ids that occur are renumbered 0..k-1 in
/// increasing order. Throws ParseError (with line number) on malformed lines and self-loops.
EdgeListFile parse_edge_list(std::istream& in, bool compact = false);
EdgeListFile ingest_edge_list(const std::filesystem::path& path, bool compact = false);

/// "g h" lines, same comment rules.
std::vector<std::pair<std::size_t, std::size_t>> parse_seed_pairs(std::istream& in);

// ---- key = value configs ------------------------------------------------------

/// Flat `key = value` text with '#' comments. Keys are case-sensitive; later lines override.
class Config {
public:
    static Config parse(std::istream& in);
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    std::size_t get_size(const std::string& key, std::size_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::vector<std::size_t> get_sizes(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const;
    /// Throws ParseError naming any key outside `known`.
    void require_known(const std::vector<std::string>& known) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, std::size_t> lines_;
};

// ---- harness ----------------------------------------------------------------

struct SweepSpec {
    std::vector<std::size_t> m{150}, n{150}, k{50};
    std::vector<double> p{0.1, 0.3, 0.5};
    std::vector<double> rho{0.5, 0.8};
    std::vector<std::size_t> s{5, 15, 25};
    std::size_t reps = 50;
    SolverOptions solver;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    /// When false the wall-time column is written as 0 so that output is reproducible byte for byte.
    bool timing = true;

    /// Keys: n (sets m and n), m, K, p, rho, s (comma lists), reps, seed, threads, tol,
    /// max_iters, diag, restarts, timing (on/off).
    static SweepSpec from_config(const Config& cfg);
};

struct RealSplitSpec {
    std::filesystem::path source;
    std::size_t k = 0;
    std::vector<std::size_t> s;
    std::size_t reps = 10;
    SolverOptions solver;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    bool timing = true;
    bool compact = false;

    /// Keys: source, K, s, reps, seed, threads, tol, max_iters, diag, restarts, timing, compact.
    /// A relative source path resolves against `base_dir`.
    static RealSplitSpec from_config(const Config& cfg, const std::filesystem::path& base_dir = {});
};

struct ResultRow {
    std::size_t m = 0, n = 0, k = 0;
    double p = 0.0, rho = 0.0;
    std::size_t s = 0;
    std::string algorithm;  // "ssSGM", "SGM", or "skipped:<reason>"
    std::size_t reps = 0;
    double mean_match_ratio = 0.0;
    double stderr_ = 0.0;
    double mean_iters = 0.0;
    double mean_wall_ms = 0.0;
};

inline constexpr const char* kCsvHeader =
    "m,n,K,p,rho,s,algorithm,reps,mean_match_ratio,stderr,mean_iters,mean_wall_ms";

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_csv(std::istream& in);

/// One replication: both algorithms on the same pair.
struct ReplicationOutcome {
    double ratio_sub = 0.0, ratio_full = 0.0;
    std::size_t iters_sub = 0, iters_full = 0;
    double ms_sub = 0.0, ms_full = 0.0;
    bool full_feasible = true;
};

/// ssSGM with the given K, and the full-graph baseline (K = m = n) when m == n.
ReplicationOutcome run_replication(const model::GraphPair& pair, std::size_t k,
                                   const SolverOptions& opts);

/// Every cell of the grid, in the order m, n, K, p, rho, s (outermost first); two rows per cell
/// (ssSGM, then SGM). Replication r of cell c samples with seed derive(seed, {c, r}).
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

struct RealSplitReport {
    std::size_t source_order = 0;
    std::size_t source_edges = 0;
    double source_density = 0.0;
    std::size_t dropped_vertices = 0;  // 1 when order - K is odd
    std::vector<ResultRow> rows;
};

/// One split: K random core vertices, the rest halved between G and H, s seeds from the core,
/// nonseeds shuffled. Returned as a GraphPair whose true_alignment is the shared core.
model::GraphPair split_graph(const Graph& source, std::size_t k, std::size_t s, std::uint64_t seed);

RealSplitReport run_real_split(const RealSplitSpec& spec);
RealSplitReport run_real_split(const Graph& source, const RealSplitSpec& spec);

}  // namespace sgmatch::experiments
