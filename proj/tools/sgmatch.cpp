#include <CLI11.hpp>
#include <json.hpp>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "sgmatch/error.hpp"
#include "sgmatch/experiments.hpp"
#include "sgmatch/graph_model.hpp"
#include "sgmatch/kernels.hpp"
#include "sgmatch/matcher.hpp"
#include "sgmatch/oracle.hpp"

using namespace sgmatch;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kBudget = 3 };

// Thrown for problems with the command line itself that CLI11 cannot see.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw ParseError("cannot write " + path, 0);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct SolverFlags {
    double tol = 0.0;
    std::size_t max_iters = 100;
    double diag = -1.0;
    std::size_t restarts = 1;
    std::uint64_t restart_seed = 0;

    void attach(CLI::App* app) {
        app->add_option("--tol", tol, "Stopping threshold on the iterate change (0: automatic)")
            ->check(CLI::NonNegativeNumber);
        app->add_option("--max-iters", max_iters, "Frank-Wolfe iteration cap")->check(CLI::PositiveNumber);
        app->add_option("--diag", diag, "Diagonal of the signed matrices")->check(CLI::IsMember({-1.0, 0.0}));
        app->add_option("--restarts", restarts, "Number of Frank-Wolfe starts")->check(CLI::PositiveNumber);
        app->add_option("--restart-seed", restart_seed, "Seed for restart perturbations");
    }
    SolverOptions options() const {
        SolverOptions o;
        o.tol = tol;
        o.max_iters = max_iters;
        o.diag_value = diag;
        o.restarts = restarts;
        o.restart_seed = restart_seed;
        return o;
    }
};

// ---- match ------------------------------------------------------------------

struct MatchArgs {
    std::string g_path, h_path, seeds_path, output;
    std::size_t k = 0;
    bool compact = false;
    SolverFlags solver;
};

// Seeds first in seed-file order, then the remaining vertices in increasing order.
std::vector<std::size_t> seeds_first(std::size_t order, const std::vector<std::size_t>& seeds) {
    std::vector<std::size_t> order_out = seeds;
    std::vector<char> taken(order, 0);
    for (std::size_t v : seeds) taken[v] = 1;
    for (std::size_t v = 0; v < order; ++v)
        if (!taken[v]) order_out.push_back(v);
    return order_out;
}

int run_match(const MatchArgs& args) {
    const auto gf = experiments::ingest_edge_list(args.g_path, args.compact);
    const auto hf = experiments::ingest_edge_list(args.h_path, args.compact);

    std::vector<std::pair<std::size_t, std::size_t>> seed_pairs;
    if (!args.seeds_path.empty()) {
        std::ifstream in(args.seeds_path);
        if (!in) throw ParseError("cannot open " + args.seeds_path, 0);
        seed_pairs = experiments::parse_seed_pairs(in);
    }

    // Seed ids are file ids; translate through compaction.
    auto to_internal = [](const experiments::EdgeListFile& f, std::size_t id, const char* side) {
        auto it = std::lower_bound(f.original_id.begin(), f.original_id.end(), id);
        if (it == f.original_id.end() || *it != id)
            throw DomainError(fmt::format("seed vertex {} does not occur in {}", id, side));
        return std::size_t(it - f.original_id.begin());
    };
    std::vector<std::size_t> gs, hs;
    for (auto [g, h] : seed_pairs) {
        gs.push_back(to_internal(gf, g, "G"));
        hs.push_back(to_internal(hf, h, "H"));
    }
    auto check_distinct = [](std::vector<std::size_t> v, const char* side) {
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
            throw DomainError(fmt::format("seed vertices of {} repeat", side));
    };
    check_distinct(gs, "G");
    check_distinct(hs, "H");

    const std::size_t s = seed_pairs.size();
    const std::size_t m = gf.graph.order(), n = hf.graph.order();
    if (args.k < s || args.k > std::min(m, n))
        throw UsageError(fmt::format("K={} must lie between the seed count {} and min(m, n) = {}",
                                     args.k, s, std::min(m, n)));

    const auto gorder = seeds_first(m, gs), horder = seeds_first(n, hs);
    std::vector<std::size_t> gpos(m), hpos(n);
    for (std::size_t i = 0; i < m; ++i) gpos[gorder[i]] = i;
    for (std::size_t i = 0; i < n; ++i) hpos[horder[i]] = i;
    const Graph g = gf.graph.relabeled(gpos), h = hf.graph.relabeled(hpos);

    const MatchResult r = ssgm(g, h, args.k, s, args.solver.options());

    Output out(args.output);
    auto& os = out.stream();
    fmt::print(os, "# objective {:g}\n# disagreements {}\n# iterations {}\n# converged {}\n",
               r.objective, r.disagreements, r.iterations, r.converged ? "yes" : "no");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (auto [u, v] : r.phi)
        pairs.emplace_back(gf.original_id[gorder[u]], hf.original_id[horder[v]]);
    std::sort(pairs.begin(), pairs.end());
    for (auto [u, v] : pairs) fmt::print(os, "{} {}\n", u, v);
    return kOk;
}

// ---- simulate -----------------------------------------------------------------

struct SimArgs {
    std::size_t m = 0, n = 0, k = 0, s = 0;
    double p = 0.5, rho = 0.0;
    std::uint64_t seed = 1;
    std::string output;
};

int run_simulate(const SimArgs& args) {
    model::CorrelatedPairSpec spec;
    spec.m = args.m;
    spec.n = args.n ? args.n : args.m;
    spec.k = args.k;
    spec.s = args.s;
    spec.edge_prob = args.p;
    spec.correlation = args.rho;
    spec.rng_seed = args.seed;
    const auto pair = model::sample_pair(spec);
    const auto diag = model::diagnostics(spec);

    Output out(args.output);
    auto& os = out.stream();
    fmt::print(os, "# m {} n {} K {} s {} p {:g} rho {:g} seed {}\n", spec.m, spec.n, spec.k,
               spec.s, args.p, args.rho, args.seed);
    fmt::print(os, "# q {:g} epsilon {:g} theorem1_applicable {}\n", diag.q, diag.epsilon,
               diag.theorem1_applicable ? "yes" : "no");
    for (const Edge& e : pair.g.edges()) fmt::print(os, "g {} {}\n", e.u, e.v);
    for (const Edge& e : pair.h.edges()) fmt::print(os, "h {} {}\n", e.u, e.v);
    for (auto [u, v] : pair.true_alignment) fmt::print(os, "align {} {}\n", u, v);
    return kOk;
}

// ---- bench / real -----------------------------------------------------------------

struct HarnessArgs {
    std::string config, output;
    std::vector<std::string> overrides;
};

experiments::Config load_with_overrides(const HarnessArgs& args) {
    auto cfg = args.config.empty() ? experiments::Config{} : experiments::Config::load(args.config);
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

int run_bench(const HarnessArgs& args) {
    const auto spec = experiments::SweepSpec::from_config(load_with_overrides(args));
    const auto rows = experiments::run_sweep(spec);
    Output out(args.output);
    experiments::write_csv(out.stream(), rows);
    return kOk;
}

int run_real(const HarnessArgs& args) {
    const auto cfg = load_with_overrides(args);
    const std::filesystem::path base =
        args.config.empty() ? std::filesystem::current_path()
                            : std::filesystem::absolute(args.config).parent_path();
    const auto spec = experiments::RealSplitSpec::from_config(cfg, base);
    const auto report = experiments::run_real_split(spec);
    fmt::print(std::cerr, "source: order {} edges {} density {:.4f}\n", report.source_order,
               report.source_edges, report.source_density);
    Output out(args.output);
    experiments::write_csv(out.stream(), report.rows);
    return kOk;
}

// ---- oracle -------------------------------------------------------------------

struct OracleMatchArgs {
    std::string g_path, h_path, output;
    std::size_t k = 0;
    double diag = 0.0;
    std::uint64_t budget = oracle::kDefaultBudget;
    bool pq = false;
};

json pairs_json(const PartialPermutation& x) {
    json out = json::array();
    for (auto [r, c] : x.pairs()) out.push_back({r, c});
    return out;
}

int run_oracle_match(const OracleMatchArgs& args) {
    const auto g = experiments::ingest_edge_list(args.g_path).graph;
    const auto h = experiments::ingest_edge_list(args.h_path).graph;
    if (args.k > std::min(g.order(), h.order()))
        throw UsageError(fmt::format("K={} exceeds min(m, n) = {}", args.k, std::min(g.order(), h.order())));
    const auto a = build_signed_adjacency(g, args.diag), b = build_signed_adjacency(h, args.diag);
    json doc;
    doc["m"] = g.order();
    doc["n"] = h.order();
    doc["K"] = args.k;
    doc["diag"] = args.diag;
    const auto opt = oracle::brute_force_match(a, b, args.k, args.budget);
    doc["value"] = opt.value;
    doc["argmax"] = json::array();
    for (const auto& x : opt.argmax) doc["argmax"].push_back(pairs_json(x));
    if (args.pq) {
        const auto pq = oracle::brute_force_pq(a, b, args.k, args.budget);
        doc["pq_value"] = pq.value;
        doc["pq_argmax"] = json::array();
        for (const auto& [p, q] : pq.argmax) doc["pq_argmax"].push_back({pairs_json(p), pairs_json(q)});
    }
    Output out(args.output);
    out.stream() << doc.dump(2) << '\n';
    return kOk;
}

struct OracleTheoremArgs {
    SimArgs model;
    oracle::Theorem1Options opts;
};

int run_oracle_theorem1(OracleTheoremArgs args) {
    model::CorrelatedPairSpec spec;
    spec.m = args.model.m;
    spec.n = args.model.n ? args.model.n : args.model.m;
    spec.k = args.model.k;
    spec.s = 0;
    spec.edge_prob = args.model.p;
    spec.correlation = args.model.rho;
    spec.rng_seed = args.model.seed;
    const auto report = oracle::verify_theorem1(spec, args.opts);
    const auto diag = model::diagnostics(spec);
    json doc;
    doc["m"] = spec.m;
    doc["n"] = spec.n;
    doc["K"] = spec.k;
    doc["p"] = args.model.p;
    doc["rho"] = args.model.rho;
    doc["seed"] = spec.rng_seed;
    doc["diag"] = args.opts.diag_value;
    doc["trials"] = report.trials;
    doc["recovered"] = report.recovered;
    doc["frequency"] = report.frequency();
    if (args.opts.check_pq) {
        doc["recovered_pq"] = report.recovered_pq;
        doc["frequency_pq"] = report.frequency_pq();
    }
    doc["epsilon"] = diag.epsilon;
    doc["theorem1_applicable"] = diag.theorem1_applicable;
    Output out(args.model.output);
    out.stream() << doc.dump(2) << '\n';
    return kOk;
}

void model_flags(CLI::App* app, SimArgs& a, bool seeds) {
    app->add_option("-m", a.m, "Order of G")->required();
    app->add_option("-n", a.n, "Order of H (default: m)");
    app->add_option("-K", a.k, "Core size")->required();
    if (seeds) app->add_option("-s", a.s, "Seed count");
    app->add_option("-p", a.p, "Edge probability")->check(CLI::Range(0.0, 1.0));
    app->add_option("--rho", a.rho, "Core edge correlation")->check(CLI::Range(0.0, 1.0));
    app->add_option("--seed", a.seed, "RNG seed");
    app->add_option("-o,--output", a.output, "Output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seeded subgraph-subgraph matching"};
    app.require_subcommand(1);
    std::string kernels;
    app.add_option("--kernels", kernels, "Force a kernel backend (scalar, avx2, neon)");

    MatchArgs match;
    auto* m = app.add_subcommand("match", "Align two edge-list graphs");
    m->add_option("G", match.g_path, "Edge list of G")->required()->check(CLI::ExistingFile);
    m->add_option("H", match.h_path, "Edge list of H")->required()->check(CLI::ExistingFile);
    m->add_option("-K", match.k, "Core size")->required();
    m->add_option("--seeds", match.seeds_path, "Seed pairs file (\"g h\" per line)")->check(CLI::ExistingFile);
    m->add_flag("--compact", match.compact, "Renumber vertex ids that occur to 0..k-1");
    m->add_option("-o,--output", match.output, "Output file (default: stdout)");
    match.solver.attach(m);

    SimArgs sim;
    auto* sm = app.add_subcommand("simulate", "Sample one correlated graph pair");
    model_flags(sm, sim, true);

    HarnessArgs bench, real;
    auto* bm = app.add_subcommand("bench", "Synthetic sweep to CSV");
    bm->add_option("config", bench.config, "Sweep config (key = value)")->check(CLI::ExistingFile);
    bm->add_option("--set", bench.overrides, "Override a config key (key=value)");
    bm->add_option("-o,--output", bench.output, "CSV file (default: stdout)");

    auto* rm = app.add_subcommand("real", "Core/noncore split of a real graph to CSV");
    rm->add_option("config", real.config, "Split config (key = value)")->check(CLI::ExistingFile);
    rm->add_option("--set", real.overrides, "Override a config key (key=value)");
    rm->add_option("-o,--output", real.output, "CSV file (default: stdout)");

    auto* om = app.add_subcommand("oracle", "Exhaustive solves on tiny instances");
    om->require_subcommand(1);
    OracleMatchArgs omatch;
    auto* omm = om->add_subcommand("match", "Exact optimum and argmax set for two edge lists");
    omm->add_option("G", omatch.g_path)->required()->check(CLI::ExistingFile);
    omm->add_option("H", omatch.h_path)->required()->check(CLI::ExistingFile);
    omm->add_option("-K", omatch.k)->required();
    omm->add_option("--diag", omatch.diag)->check(CLI::IsMember({-1.0, 0.0}));
    omm->add_option("--budget", omatch.budget);
    omm->add_flag("--pq", omatch.pq, "Also solve the P, Q search");
    omm->add_option("-o,--output", omatch.output);

    OracleTheoremArgs oth;
    auto* omt = om->add_subcommand("theorem1", "Exact-recovery frequency on sampled pairs");
    model_flags(omt, oth.model, false);
    omt->add_option("--trials", oth.opts.trials)->check(CLI::PositiveNumber);
    omt->add_option("--diag", oth.opts.diag_value)->check(CLI::IsMember({-1.0, 0.0}));
    omt->add_option("--budget", oth.opts.budget);
    omt->add_option("--threads", oth.opts.threads);
    omt->add_flag("--pq", oth.opts.check_pq, "Also check the P, Q optimum");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (!kernels.empty()) {
            bool found = false;
            for (const auto* t : kernels::available_tables())
                if (kernels::to_string(t->backend) == kernels) {
                    kernels::select(t->backend);
                    found = true;
                }
            if (!found) throw UsageError("kernel backend '" + kernels + "' is not available here");
        }
        if (m->parsed()) return run_match(match);
        if (sm->parsed()) return run_simulate(sim);
        if (bm->parsed()) return run_bench(bench);
        if (rm->parsed()) return run_real(real);
        if (omm->parsed()) return run_oracle_match(omatch);
        if (omt->parsed()) return run_oracle_theorem1(oth);
    } catch (const UsageError& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return kUsage;
    } catch (const ParameterError& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return kUsage;
    } catch (const BudgetExceeded& e) {
        fmt::print(std::cerr, "refused: {}\n", e.what());
        return kBudget;
    } catch (const std::exception& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return kData;
    }
    return kUsage;
}
