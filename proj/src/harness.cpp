#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "sgmatch/error.hpp"
#include "sgmatch/experiments.hpp"
#include "sgmatch/parallel.hpp"
#include "sgmatch/rng.hpp"

namespace sgmatch::experiments {
namespace {

SolverOptions solver_from_config(const Config& cfg) {
    SolverOptions opts;
    opts.tol = cfg.get_double("tol", 0.0);
    opts.max_iters = cfg.get_size("max_iters", opts.max_iters);
    opts.diag_value = cfg.get_double("diag", -1.0);
    opts.restarts = cfg.get_size("restarts", 1);
    if (opts.diag_value != -1.0 && opts.diag_value != 0.0)
        throw ParseError("key 'diag': must be -1 or 0", 0);
    if (opts.max_iters == 0) throw ParseError("key 'max_iters': must be at least 1", 0);
    return opts;
}

bool flag(const Config& cfg, const std::string& key, bool fallback) {
    if (!cfg.has(key)) return fallback;
    const std::string v = cfg.get(key);
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ParseError("key '" + key + "': expected on/off", 0);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

struct Stats {
    double mean = 0.0, stderr_ = 0.0;
};

Stats summarize(const std::vector<double>& xs) {
    Stats st;
    if (xs.empty()) return st;
    const double n = double(xs.size());
    st.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - st.mean) * (x - st.mean);
        st.stderr_ = std::sqrt(ss / (n - 1.0) / n);
    }
    return st;
}

double mean_of(const std::vector<double>& xs) { return summarize(xs).mean; }

// Folds per-replication outcomes into the ssSGM and SGM rows of one cell.
void aggregate(const ResultRow& cell, const std::vector<ReplicationOutcome>& reps, bool timing,
               std::vector<ResultRow>& out) {
    std::vector<double> r_sub, r_full, i_sub, i_full, t_sub, t_full;
    bool full_ok = true;
    for (const auto& o : reps) {
        r_sub.push_back(o.ratio_sub);
        i_sub.push_back(double(o.iters_sub));
        t_sub.push_back(o.ms_sub);
        full_ok = full_ok && o.full_feasible;
        r_full.push_back(o.ratio_full);
        i_full.push_back(double(o.iters_full));
        t_full.push_back(o.ms_full);
    }
    ResultRow sub = cell;
    sub.algorithm = "ssSGM";
    sub.reps = reps.size();
    const Stats s1 = summarize(r_sub);
    sub.mean_match_ratio = s1.mean;
    sub.stderr_ = s1.stderr_;
    sub.mean_iters = mean_of(i_sub);
    sub.mean_wall_ms = timing ? mean_of(t_sub) : 0.0;
    out.push_back(sub);

    ResultRow full = cell;
    if (!full_ok) {
        full.algorithm = "skipped:m!=n";
        full.reps = 0;
        full.mean_match_ratio = full.stderr_ = full.mean_iters = full.mean_wall_ms = std::nan("");
    } else {
        full.algorithm = "SGM";
        full.reps = reps.size();
        const Stats s2 = summarize(r_full);
        full.mean_match_ratio = s2.mean;
        full.stderr_ = s2.stderr_;
        full.mean_iters = mean_of(i_full);
        full.mean_wall_ms = timing ? mean_of(t_full) : 0.0;
    }
    out.push_back(full);
}

void push_skipped(ResultRow cell, const std::string& reason, std::vector<ResultRow>& out) {
    cell.reps = 0;
    cell.mean_match_ratio = cell.stderr_ = cell.mean_iters = cell.mean_wall_ms = std::nan("");
    cell.algorithm = "skipped:" + reason;
    out.push_back(cell);
}

}  // namespace

SweepSpec SweepSpec::from_config(const Config& cfg) {
    cfg.require_known({"n", "m", "K", "p", "rho", "s", "reps", "seed", "threads", "tol",
                       "max_iters", "diag", "restarts", "timing"});
    SweepSpec spec;
    if (cfg.has("n")) spec.m = spec.n = cfg.get_sizes("n");
    if (cfg.has("m")) spec.m = cfg.get_sizes("m");
    if (cfg.has("K")) spec.k = cfg.get_sizes("K");
    if (cfg.has("p")) spec.p = cfg.get_doubles("p");
    if (cfg.has("rho")) spec.rho = cfg.get_doubles("rho");
    if (cfg.has("s")) spec.s = cfg.get_sizes("s");
    spec.reps = cfg.get_size("reps", spec.reps);
    if (spec.reps == 0) throw ParseError("key 'reps': must be at least 1", 0);
    spec.seed = cfg.get_size("seed", spec.seed);
    spec.threads = cfg.get_size("threads", spec.threads);
    spec.solver = solver_from_config(cfg);
    spec.timing = flag(cfg, "timing", true);
    return spec;
}

RealSplitSpec RealSplitSpec::from_config(const Config& cfg, const std::filesystem::path& base_dir) {
    cfg.require_known({"source", "K", "s", "reps", "seed", "threads", "tol", "max_iters", "diag",
                       "restarts", "timing", "compact"});
    RealSplitSpec spec;
    spec.source = cfg.get("source");
    if (spec.source.is_relative() && !base_dir.empty()) spec.source = base_dir / spec.source;
    spec.k = cfg.get_size("K", 0);
    if (!cfg.has("K")) throw ParseError("missing key 'K'", 0);
    spec.s = cfg.get_sizes("s");
    spec.reps = cfg.get_size("reps", spec.reps);
    if (spec.reps == 0) throw ParseError("key 'reps': must be at least 1", 0);
    spec.seed = cfg.get_size("seed", spec.seed);
    spec.threads = cfg.get_size("threads", spec.threads);
    spec.solver = solver_from_config(cfg);
    spec.timing = flag(cfg, "timing", true);
    spec.compact = flag(cfg, "compact", false);
    return spec;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows)
        out << fmt::format("{},{},{},{:g},{:g},{},{},{},{:.6f},{:.6f},{:.3f},{:.3f}\n", r.m, r.n,
                           r.k, r.p, r.rho, r.s, r.algorithm, r.reps, r.mean_match_ratio,
                           r.stderr_, r.mean_iters, r.mean_wall_ms);
}

std::vector<ResultRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("unexpected CSV header", 1);
    std::vector<ResultRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(item);
        if (f.size() != 12) throw ParseError("expected 12 fields", line_no);
        try {
            ResultRow r;
            r.m = std::stoull(f[0]);
            r.n = std::stoull(f[1]);
            r.k = std::stoull(f[2]);
            r.p = std::stod(f[3]);
            r.rho = std::stod(f[4]);
            r.s = std::stoull(f[5]);
            r.algorithm = f[6];
            r.reps = std::stoull(f[7]);
            r.mean_match_ratio = std::stod(f[8]);
            r.stderr_ = std::stod(f[9]);
            r.mean_iters = std::stod(f[10]);
            r.mean_wall_ms = std::stod(f[11]);
            rows.push_back(r);
        } catch (const std::logic_error&) {
            throw ParseError("malformed numeric field", line_no);
        }
    }
    return rows;
}

ReplicationOutcome run_replication(const model::GraphPair& pair, std::size_t k,
                                   const SolverOptions& opts) {
    ReplicationOutcome o;
    const auto a = build_signed_adjacency(pair.g, opts.diag_value);
    const auto b = build_signed_adjacency(pair.h, opts.diag_value);

    auto start = std::chrono::steady_clock::now();
    const MatchResult sub = ssgm(a, b, k, pair.s, opts);
    o.ms_sub = elapsed_ms(start);
    o.ratio_sub = model::match_ratio(sub, pair);
    o.iters_sub = sub.iterations;

    if (a.order() != b.order()) {
        o.full_feasible = false;
        return o;
    }
    start = std::chrono::steady_clock::now();
    const MatchResult full = ssgm(a, b, a.order(), pair.s, opts);
    o.ms_full = elapsed_ms(start);
    o.ratio_full = model::match_ratio(full, pair);
    o.iters_full = full.iterations;
    return o;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) {
    struct Cell {
        ResultRow row;
        std::string skip;
    };
    std::vector<Cell> cells;
    for (std::size_t m : spec.m)
        for (std::size_t n : spec.n)
            for (std::size_t k : spec.k)
                for (double p : spec.p)
                    for (double rho : spec.rho)
                        for (std::size_t s : spec.s) {
                            Cell c;
                            c.row = ResultRow{m, n, k, p, rho, s, "", 0, 0, 0, 0, 0};
                            if (k > std::min(m, n)) c.skip = "K>min(m,n)";
                            else if (s > k) c.skip = "s>K";
                            else if (!(p >= 0.0 && p <= 1.0)) c.skip = "p-out-of-range";
                            else if (!(rho >= 0.0 && rho <= 1.0)) c.skip = "rho-out-of-range";
                            cells.push_back(c);
                        }

    const std::size_t reps = spec.reps;
    std::vector<ReplicationOutcome> outcomes(cells.size() * reps);
    parallel_for(outcomes.size(), spec.threads, [&](std::size_t task) {
        const std::size_t ci = task / reps, r = task % reps;
        const Cell& c = cells[ci];
        if (!c.skip.empty()) return;
        model::CorrelatedPairSpec ps;
        ps.m = c.row.m;
        ps.n = c.row.n;
        ps.k = c.row.k;
        ps.s = c.row.s;
        ps.edge_prob = c.row.p;
        ps.correlation = c.row.rho;
        ps.rng_seed = rng::derive(spec.seed, {ci, r});
        SolverOptions opts = spec.solver;
        opts.restart_seed = rng::derive(ps.rng_seed, {3});
        outcomes[task] = run_replication(model::sample_pair(ps), c.row.k, opts);
    });

    std::vector<ResultRow> rows;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        if (!cells[ci].skip.empty()) {
            push_skipped(cells[ci].row, cells[ci].skip, rows);
            continue;
        }
        std::vector<ReplicationOutcome> cell_reps(outcomes.begin() + ci * reps,
                                                  outcomes.begin() + (ci + 1) * reps);
        aggregate(cells[ci].row, cell_reps, spec.timing, rows);
    }
    return rows;
}

model::GraphPair split_graph(const Graph& source, std::size_t k, std::size_t s, std::uint64_t seed) {
    const std::size_t order = source.order();
    if (k > order) throw ParameterError("real split: K exceeds source order");
    if (s > k) throw ParameterError("real split: more seeds than core vertices");

    std::vector<std::size_t> perm(order);
    std::iota(perm.begin(), perm.end(), 0);
    rng::Stream(seed, {1}).shuffle(std::span(perm));
    const std::size_t half = (order - k) / 2;

    // perm[0, s) are seeds, perm[s, k) the rest of the core, then the two noncore halves.
    auto side = [&](std::size_t half_begin, std::uint64_t tag) {
        std::vector<std::size_t> verts(perm.begin(), perm.begin() + s);
        std::vector<std::size_t> rest(perm.begin() + s, perm.begin() + k);
        rest.insert(rest.end(), perm.begin() + half_begin, perm.begin() + half_begin + half);
        rng::Stream(seed, {tag}).shuffle(std::span(rest));
        verts.insert(verts.end(), rest.begin(), rest.end());
        return verts;
    };
    const auto gv = side(k, 2);
    const auto hv = side(k + half, 3);

    std::vector<std::size_t> pos_g(order, order), pos_h(order, order);
    for (std::size_t i = 0; i < gv.size(); ++i) pos_g[gv[i]] = i;
    for (std::size_t i = 0; i < hv.size(); ++i) pos_h[hv[i]] = i;

    model::GraphPair pair;
    pair.g = source.induced(gv);
    pair.h = source.induced(hv);
    pair.s = s;
    for (std::size_t i = 0; i < k; ++i) {
        pair.true_alignment.emplace_back(pos_g[perm[i]], pos_h[perm[i]]);
        pair.core_g.push_back(pos_g[perm[i]]);
        pair.core_h.push_back(pos_h[perm[i]]);
    }
    std::sort(pair.true_alignment.begin(), pair.true_alignment.end());
    std::sort(pair.core_g.begin(), pair.core_g.end());
    std::sort(pair.core_h.begin(), pair.core_h.end());
    return pair;
}

RealSplitReport run_real_split(const RealSplitSpec& spec) {
    return run_real_split(ingest_edge_list(spec.source, spec.compact).graph, spec);
}

RealSplitReport run_real_split(const Graph& source, const RealSplitSpec& spec) {
    if (spec.k > source.order())
        throw ParameterError("real split: K=" + std::to_string(spec.k) + " exceeds source order " +
                             std::to_string(source.order()));
    for (std::size_t s : spec.s)
        if (s > spec.k) throw ParameterError("real split: s=" + std::to_string(s) + " exceeds K");

    RealSplitReport report;
    report.source_order = source.order();
    report.source_edges = source.edge_count();
    report.source_density = source.density();
    report.dropped_vertices = (source.order() - spec.k) % 2;
    if (report.dropped_vertices)
        std::cerr << "note: order - K is odd; one random noncore vertex is left out of each split\n";

    const std::size_t side = spec.k + (source.order() - spec.k) / 2;
    const std::size_t reps = spec.reps;
    std::vector<ReplicationOutcome> outcomes(spec.s.size() * reps);
    parallel_for(outcomes.size(), spec.threads, [&](std::size_t task) {
        const std::size_t si = task / reps, r = task % reps;
        const std::uint64_t seed = rng::derive(spec.seed, {si, r});
        SolverOptions opts = spec.solver;
        opts.restart_seed = rng::derive(seed, {3});
        outcomes[task] = run_replication(split_graph(source, spec.k, spec.s[si], seed), spec.k, opts);
    });

    for (std::size_t si = 0; si < spec.s.size(); ++si) {
        ResultRow cell{side, side, spec.k, report.source_density, 1.0, spec.s[si], "", 0, 0, 0, 0, 0};
        std::vector<ReplicationOutcome> cell_reps(outcomes.begin() + si * reps,
                                                  outcomes.begin() + (si + 1) * reps);
        aggregate(cell, cell_reps, spec.timing, report.rows);
    }
    return report;
}

}  // namespace sgmatch::experiments
