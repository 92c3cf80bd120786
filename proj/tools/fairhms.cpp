// Command-line harness: dataset generation, skyline preprocessing, single
// solves, parameter sweeps and report conversion.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fairhms/baselines.hpp"
#include "fairhms/bigreedy.hpp"
#include "fairhms/csv.hpp"
#include "fairhms/generator.hpp"
#include "fairhms/intcov.hpp"
#include "fairhms/report.hpp"
#include "fairhms/rng.hpp"

namespace {

using namespace fairhms;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

uint64_t default_seed() {
    if (const char* env = std::getenv("FAIRHMS_SEED")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 1;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

struct GenSpec {
    int n = 1000, d = 2, c_groups = 2;
    std::optional<uint64_t> seed;
};

// "anticor:n=1000,d=2,C=3[,seed=7]"
GenSpec parse_gen_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || text.substr(0, colon) != "anticor")
        throw std::invalid_argument("gen: expected 'anticor:n=..,d=..,C=..[,seed=..]'");
    GenSpec g;
    for (const std::string& kv : split(text.substr(colon + 1), ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("gen: bad parameter '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const long long value = std::stoll(kv.substr(eq + 1));
        if (key == "n")
            g.n = static_cast<int>(value);
        else if (key == "d")
            g.d = static_cast<int>(value);
        else if (key == "C")
            g.c_groups = static_cast<int>(value);
        else if (key == "seed")
            g.seed = static_cast<uint64_t>(value);
        else
            throw std::invalid_argument("gen: unknown parameter '" + key + "'");
    }
    return g;
}

struct BoundsSpec {
    std::string kind;  // exact | prop | bal | none
    double alpha = 0.0;
    std::vector<int> quotas;
};

// "exact:1,1", "prop:alpha=0.1", "bal:alpha=0.1", "none"
BoundsSpec parse_bounds(const std::string& text) {
    BoundsSpec b;
    if (text == "none") {
        b.kind = "none";
        return b;
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bounds: expected exact:.., prop:alpha=.., bal:alpha=.. or none");
    b.kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    if (b.kind == "exact") {
        for (const std::string& q : split(rest, ',')) b.quotas.push_back(std::stoi(q));
        if (b.quotas.empty()) throw std::invalid_argument("bounds: exact needs quotas");
    } else if (b.kind == "prop" || b.kind == "bal") {
        const auto eq = rest.find('=');
        if (eq == std::string::npos || rest.substr(0, eq) != "alpha")
            throw std::invalid_argument("bounds: expected " + b.kind + ":alpha=..");
        b.alpha = std::stod(rest.substr(eq + 1));
    } else {
        throw std::invalid_argument("bounds: unknown kind '" + b.kind + "'");
    }
    return b;
}

struct RunOptions {
    std::string data_path;
    std::string gen_spec;
    std::string numeric;
    std::string group_col;
    std::string id_col;
    bool no_normalize = false;
    bool no_skyline = false;

    std::string alg = "bigreedy+";
    int k = 0;
    std::string bounds = "none";

    int m = 0;
    double delta = 0.0;
    double epsilon = 0.02;
    double lambda = 0.04;
    int m0 = 0;
    int big_m = 0;
    bool feasible = false;
    uint64_t seed = 1;
    bool include_prep_time = false;
};

struct EvalOutcome {
    double mhr = 0.0;
    std::string method;
};

EvalOutcome evaluate_solution(const Dataset& ds, const std::vector<int>& ids, int m,
                              uint64_t seed) {
    EvalOutcome out;
    if (ds.dim() == 2) {
        out.mhr = mhr_exact_2d(ids, ds);
        out.method = "exact-2d";
        return out;
    }
    const int vm = 4 * m;
    const uint64_t vseed = mix_seed(seed, 0xb16e);
    const UtilityNet vnet = sample_net(ds.dim(), vm, vseed);
    out.mhr = mhr_on_net(ids, ds, vnet);
    out.method = "validation-net:m=" + std::to_string(vm) + ";seed=" + std::to_string(vseed);
    return out;
}

RunReport execute_run(const RunOptions& opt) {
    const auto t_prep = Clock::now();

    Dataset raw = [&] {
        if (!opt.data_path.empty()) {
            if (opt.numeric.empty() || opt.group_col.empty())
                throw std::invalid_argument("run: --data requires --numeric and --group");
            return load_csv(opt.data_path, split(opt.numeric, ','), opt.group_col, opt.id_col);
        }
        if (opt.gen_spec.empty())
            throw std::invalid_argument("run: either --data or --gen is required");
        GenSpec g = parse_gen_spec(opt.gen_spec);
        return generate_anticorrelated(g.n, g.d, g.c_groups, g.seed.value_or(opt.seed));
    }();

    const Dataset full = opt.no_normalize ? raw : normalize(raw);

    RunReport report;
    report.algorithm = opt.alg;
    report.source = !opt.data_path.empty() ? opt.data_path : opt.gen_spec;
    report.n = full.size();
    report.d = full.dim();
    report.c_groups = full.group_count();
    report.seed = opt.seed;

    const BoundsSpec bounds = parse_bounds(opt.bounds);
    if (opt.k < 1) throw std::invalid_argument("run: --k must be positive");
    const FairnessSpec spec = [&] {
        if (bounds.kind == "exact") {
            FairnessSpec s = exact_bounds(full, bounds.quotas);
            if (s.k != opt.k)
                throw std::invalid_argument("run: exact quotas sum to " + std::to_string(s.k) +
                                            " but --k is " + std::to_string(opt.k));
            return s;
        }
        if (bounds.kind == "prop") return proportional_bounds(full, opt.k, bounds.alpha);
        if (bounds.kind == "bal") return balanced_bounds(full, opt.k, bounds.alpha);
        return unconstrained_bounds(full, opt.k);
    }();
    report.k = spec.k;
    report.bound_kind = bounds.kind;
    report.alpha = bounds.alpha;
    report.lower = spec.lower;
    report.upper = spec.upper;

    const Dataset solve_ds = opt.no_skyline ? full : group_skyline(full);
    report.skyline_sizes = group_skyline(full).group_sizes();

    const int m = opt.m > 0 ? opt.m : 10 * spec.k * full.dim();
    const int big_m = opt.big_m > 0 ? opt.big_m : m;
    const int m0 = opt.m0 > 0 ? opt.m0 : std::max(1, (big_m + 19) / 20);  // ceil(0.05 M)
    report.epsilon = opt.epsilon;
    report.delta = opt.delta;
    report.feasible_mode = opt.feasible;

    const double prep_ms = ms_since(t_prep);

    std::vector<int> solution;
    EvalOutcome eval;
    double solve_ms = 0.0;
    std::vector<std::string> flags;

    if (opt.alg == "intcov") {
        report.m = 0;
        const auto t0 = Clock::now();
        IntcovResult res = intcov(solve_ds, spec);
        solve_ms = ms_since(t0);
        solution = res.ids;
        eval = evaluate_solution(solve_ds, solution, m, opt.seed);
    } else if (opt.alg == "bigreedy" || opt.alg == "bigreedy+") {
        GreedyConfig cfg;
        cfg.epsilon = opt.epsilon;
        cfg.m = opt.delta > 0.0 ? 0 : m;
        cfg.delta = opt.delta;
        cfg.feasible_mode = opt.feasible;
        cfg.seed = opt.seed;
        SolveResult res;
        const auto t0 = Clock::now();
        if (opt.alg == "bigreedy") {
            report.m = cfg.m;
            res = bigreedy(solve_ds, spec, cfg);
        } else {
            AdaptiveConfig acfg;
            acfg.base = cfg;
            acfg.base.m = 0;  // sizes come from the schedule
            acfg.m0 = m0;
            acfg.big_m = big_m;
            acfg.lambda = opt.lambda;
            report.m = 0;
            report.m0 = m0;
            report.big_m = big_m;
            report.lambda = opt.lambda;
            res = bigreedy_plus(solve_ds, spec, acfg);
        }
        solve_ms = ms_since(t0) - (opt.include_prep_time ? 0.0 : res.diag.net_sampling_ms);
        solution = res.ids;
        eval.mhr = res.mhr;
        eval.method = res.eval_method;
        flags = res.diag.flags;
        if (opt.alg == "bigreedy") report.m = res.diag.net_m;
    } else if (opt.alg == "greedy" || opt.alg == "fgreedy" || opt.alg == "ggreedy") {
        report.m = m;
        const UtilityNet net = sample_net(full.dim(), m, opt.seed);
        const auto t0 = Clock::now();
        if (opt.alg == "greedy")
            solution = greedy_unfair(solve_ds, spec.k, net);
        else if (opt.alg == "fgreedy")
            solution = f_greedy(solve_ds, spec, net);
        else
            solution = per_group_adapt(BaselineKind::GreedyUnfair, solve_ds, spec, net);
        solve_ms = ms_since(t0);
        eval = evaluate_solution(solve_ds, solution, m, opt.seed);
    } else {
        throw std::invalid_argument("run: unknown algorithm '" + opt.alg + "'");
    }

    report.lambda = opt.alg == "bigreedy+" ? opt.lambda : 0.0;
    report.wall_ms = round_sig(solve_ms + (opt.include_prep_time ? prep_ms : 0.0));
    report.mhr = round_sig(eval.mhr);
    report.eval_method = eval.method;
    for (int i : solution) report.ids.push_back(solve_ds.point(i).id);
    report.group_counts = group_counts(solution, solve_ds);
    report.err_count = counts_err(report.group_counts, spec);
    report.flags = flags;
    return report;
}

void write_reports(const std::vector<RunReport>& reports, const std::string& format,
                   const std::string& path) {
    std::ostringstream buf;
    if (format == "csv")
        emit_csv(reports, buf);
    else
        emit_json(reports, buf);
    if (path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("emit: cannot write '" + path + "'");
        out << buf.str();
    }
}

// ---- sweep ----

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

// "k=2:10[:2]" or "epsilon=0.01,0.02,0.04"
SweepAxis parse_axis(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("sweep: expected axis 'name=v1,v2' or 'name=lo:hi[:step]'");
    SweepAxis axis;
    axis.name = text.substr(0, eq);
    const std::string rest = text.substr(eq + 1);
    if (rest.find(':') != std::string::npos) {
        const auto parts = split(rest, ':');
        if (parts.size() < 2 || parts.size() > 3)
            throw std::invalid_argument("sweep: bad range '" + rest + "'");
        const double lo = std::stod(parts[0]);
        const double hi = std::stod(parts[1]);
        const double step = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
        if (step <= 0.0) throw std::invalid_argument("sweep: step must be positive");
        for (double v = lo; v <= hi + 1e-12; v += step) axis.values.push_back(v);
    } else {
        for (const std::string& v : split(rest, ',')) axis.values.push_back(std::stod(v));
    }
    if (axis.values.empty()) throw std::invalid_argument("sweep: axis has no values");
    return axis;
}

void apply_axis(RunOptions& opt, const std::string& name, double value) {
    auto as_int = [&] { return static_cast<int>(value + 0.5); };
    if (name == "k") {
        opt.k = as_int();
    } else if (name == "m") {
        opt.m = as_int();
    } else if (name == "epsilon") {
        opt.epsilon = value;
    } else if (name == "lambda") {
        opt.lambda = value;
    } else if (name == "n" || name == "d" || name == "C") {
        if (opt.gen_spec.empty())
            throw std::invalid_argument("sweep: axis '" + name + "' requires --gen");
        GenSpec g = parse_gen_spec(opt.gen_spec);
        if (name == "n")
            g.n = as_int();
        else if (name == "d")
            g.d = as_int();
        else
            g.c_groups = as_int();
        std::ostringstream ss;
        ss << "anticor:n=" << g.n << ",d=" << g.d << ",C=" << g.c_groups;
        if (g.seed) ss << ",seed=" << *g.seed;
        opt.gen_spec = ss.str();
    } else {
        throw std::invalid_argument("sweep: unknown axis '" + name + "'");
    }
}

int run_sweep(const RunOptions& base, const std::vector<std::string>& axes_text,
              bool paired_unfair, const std::string& out_path) {
    if (axes_text.empty() || axes_text.size() > 2)
        throw std::invalid_argument("sweep: exactly one or two axes required");
    std::vector<SweepAxis> axes;
    for (const auto& t : axes_text) axes.push_back(parse_axis(t));

    std::vector<std::vector<double>> combos;
    if (axes.size() == 1) {
        for (double v : axes[0].values) combos.push_back({v});
    } else {
        for (double a : axes[0].values)
            for (double b : axes[1].values) combos.push_back({a, b});
    }

    std::ostringstream buf;
    buf << csv_header();
    if (paired_unfair) buf << ",mhr_unfair,delta_mhr";
    buf << '\n';

    for (const auto& combo : combos) {
        RunOptions opt = base;
        for (size_t i = 0; i < combo.size(); ++i) apply_axis(opt, axes[i].name, combo[i]);
        RunReport report;
        std::string paired_cols;
        try {
            report = execute_run(opt);
            if (paired_unfair) {
                RunOptions unfair = opt;
                unfair.alg = "greedy";
                unfair.bounds = "none";
                const RunReport ur = execute_run(unfair);
                std::ostringstream pc;
                pc << ',' << round_sig(ur.mhr) << ',' << round_sig(ur.mhr - report.mhr);
                paired_cols = pc.str();
            }
        } catch (const std::exception& ex) {
            report = RunReport{};
            report.algorithm = opt.alg;
            report.source = !opt.data_path.empty() ? opt.data_path : opt.gen_spec;
            report.k = opt.k;
            report.seed = opt.seed;
            report.error = ex.what();
            for (char& ch : report.error)
                if (ch == ',' || ch == '\n') ch = ';';
            if (paired_unfair) paired_cols = ",,";
        }
        buf << report_to_csv_row(report) << paired_cols << '\n';
    }

    if (out_path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("sweep: cannot write '" + out_path + "'");
        out << buf.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FairHMS: fair happiness maximizing sets"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an anti-correlated dataset CSV");
    int gen_n = 1000, gen_d = 2, gen_c = 2;
    uint64_t gen_seed = default_seed();
    std::string gen_out;
    gen->add_option("--n", gen_n, "number of points")->required();
    gen->add_option("--d", gen_d, "dimensionality");
    gen->add_option("--C", gen_c, "number of groups");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output CSV path")->required();

    // skyline
    auto* sky = app.add_subcommand("skyline", "normalize and reduce a CSV to per-group skylines");
    std::string sky_data, sky_numeric, sky_group, sky_id, sky_out;
    bool sky_no_normalize = false;
    sky->add_option("--data", sky_data, "input CSV")->required();
    sky->add_option("--numeric", sky_numeric, "comma-separated numeric columns")->required();
    sky->add_option("--group", sky_group, "group column")->required();
    sky->add_option("--id", sky_id, "id column (default: row index)");
    sky->add_flag("--no-normalize", sky_no_normalize, "keep raw attribute values");
    sky->add_option("--out", sky_out, "output CSV path")->required();

    // run
    RunOptions opt;
    opt.seed = default_seed();
    std::string run_format = "json", run_out;
    auto* run = app.add_subcommand("run", "solve one FairHMS instance");
    run->add_option("--data", opt.data_path, "input CSV");
    run->add_option("--gen", opt.gen_spec, "generator spec anticor:n=..,d=..,C=..[,seed=..]");
    run->add_option("--numeric", opt.numeric, "comma-separated numeric columns");
    run->add_option("--group", opt.group_col, "group column");
    run->add_option("--id", opt.id_col, "id column");
    run->add_flag("--no-normalize", opt.no_normalize, "data is already in [0,1]");
    run->add_flag("--no-skyline", opt.no_skyline, "skip skyline preprocessing");
    run->add_option("--alg", opt.alg,
                    "intcov | bigreedy | bigreedy+ | greedy | fgreedy | ggreedy")
        ->required();
    run->add_option("--k", opt.k, "solution size")->required();
    run->add_option("--bounds", opt.bounds, "exact:q1,q2,.. | prop:alpha=x | bal:alpha=x | none");
    run->add_option("--m", opt.m, "net size (default 10*k*d)");
    run->add_option("--delta", opt.delta, "net angular radius (overrides --m)");
    run->add_option("--epsilon", opt.epsilon, "cap-search accuracy");
    run->add_option("--lambda", opt.lambda, "adaptive stall threshold");
    run->add_option("--m0", opt.m0, "adaptive initial net size (default ceil(0.05*M))");
    run->add_option("--M", opt.big_m, "adaptive net size limit (default --m)");
    run->add_flag("--feasible", opt.feasible, "bigreedy: solve at k' and repair to size k");
    run->add_option("--seed", opt.seed, "random seed (default $FAIRHMS_SEED or 1)");
    run->add_flag("--include-prep-time", opt.include_prep_time,
                  "count data loading and net sampling in wall_ms");
    run->add_option("--format", run_format, "json | csv");
    run->add_option("--out", run_out, "output path (default stdout)");

    // sweep
    RunOptions sweep_base;
    sweep_base.seed = default_seed();
    std::vector<std::string> sweep_axes;
    bool sweep_paired = false;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "cross-product of runs over one or two axes");
    sweep->add_option("--data", sweep_base.data_path, "input CSV");
    sweep->add_option("--gen", sweep_base.gen_spec, "generator spec");
    sweep->add_option("--numeric", sweep_base.numeric, "comma-separated numeric columns");
    sweep->add_option("--group", sweep_base.group_col, "group column");
    sweep->add_option("--id", sweep_base.id_col, "id column");
    sweep->add_flag("--no-normalize", sweep_base.no_normalize, "data is already in [0,1]");
    sweep->add_flag("--no-skyline", sweep_base.no_skyline, "skip skyline preprocessing");
    sweep->add_option("--alg", sweep_base.alg, "algorithm")->required();
    sweep->add_option("--k", sweep_base.k, "solution size");
    sweep->add_option("--bounds", sweep_base.bounds, "bound scheme");
    sweep->add_option("--m", sweep_base.m, "net size");
    sweep->add_option("--epsilon", sweep_base.epsilon, "cap-search accuracy");
    sweep->add_option("--lambda", sweep_base.lambda, "adaptive stall threshold");
    sweep->add_option("--m0", sweep_base.m0, "adaptive initial net size");
    sweep->add_option("--M", sweep_base.big_m, "adaptive net size limit");
    sweep->add_flag("--feasible", sweep_base.feasible, "bigreedy feasible mode");
    sweep->add_option("--seed", sweep_base.seed, "random seed");
    sweep->add_option("--sweep", sweep_axes, "axis spec name=v1,v2 or name=lo:hi[:step] (1 or 2)")
        ->required();
    sweep->add_flag("--paired-unfair", sweep_paired,
                    "also run unconstrained greedy and report delta-mhr");
    sweep->add_option("--out", sweep_out, "output CSV path (default stdout)");

    // emit
    std::vector<std::string> emit_in;
    std::string emit_format = "csv", emit_out;
    auto* emit = app.add_subcommand("emit", "convert report JSON files to CSV or JSON");
    emit->add_option("--in", emit_in, "input report JSON file(s)")->required();
    emit->add_option("--format", emit_format, "csv | json");
    emit->add_option("--out", emit_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            write_csv(generate_anticorrelated(gen_n, gen_d, gen_c, gen_seed), gen_out);
        } else if (sky->parsed()) {
            Dataset ds = load_csv(sky_data, split(sky_numeric, ','), sky_group, sky_id);
            if (!sky_no_normalize) ds = normalize(ds);
            write_csv(group_skyline(ds), sky_out);
        } else if (run->parsed()) {
            write_reports({execute_run(opt)}, run_format, run_out);
        } else if (sweep->parsed()) {
            return run_sweep(sweep_base, sweep_axes, sweep_paired, sweep_out);
        } else if (emit->parsed()) {
            std::vector<RunReport> all;
            for (const std::string& path : emit_in) {
                std::ifstream in(path);
                if (!in) throw std::runtime_error("emit: cannot open '" + path + "'");
                std::stringstream ss;
                ss << in.rdbuf();
                for (auto& r : reports_from_json(ss.str())) all.push_back(std::move(r));
            }
            write_reports(all, emit_format, emit_out);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 0;
}
