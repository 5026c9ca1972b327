// Command-line front end: placement files, analytic bounds, slot traces, and
// Monte Carlo experiment sweeps. Every file is assembled in memory and moved
// into place whole, so a failing run never leaves partial output behind.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "csim/bounds.hpp"
#include "csim/csvio.hpp"
#include "csim/matching.hpp"
#include "csim/placement.hpp"
#include "csim/popularity.hpp"
#include "csim/rng.hpp"
#include "csim/sim.hpp"
#include "csim/version.hpp"

namespace {

using namespace csim;

void write_file_whole(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp(path + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file_whole(out_path, content);
}

std::string list_to_string(const std::vector<int64_t>& values) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_int(values[i]);
    }
    return out;
}

std::vector<int64_t> list_from_string(const std::string& text) {
    std::vector<int64_t> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) values.push_back(std::stoll(item));
    return values;
}

// ---------------------------------------------------------------- place ----

struct PlaceArgs {
    std::string policy = "knapsack";
    int64_t n = 1000;
    int64_t m = 100;
    int64_t k = 3;
    int64_t m_tilde = 0;  // 0: same as m
    double beta = 1.2;
    double shift = 0.0;
    std::string out;
};

Manifest place_manifest(const PlaceArgs& a) {
    Manifest mf;
    mf.set("tool", kToolName);
    mf.set("version", kVersion);
    mf.set("subcommand", "place");
    mf.set("policy", a.policy);
    mf.set_int("n", a.n);
    mf.set_int("m", a.m);
    mf.set_int("k", a.k);
    mf.set_int("m-tilde", a.m_tilde);
    mf.set_double("beta", a.beta);
    mf.set_double("shift", a.shift);
    return mf;
}

PlaceArgs place_from_manifest(const Manifest& mf) {
    PlaceArgs a;
    a.policy = mf.get("policy");
    a.n = mf.get_int("n");
    a.m = mf.get_int("m");
    a.k = mf.get_int("k");
    a.m_tilde = mf.get_int("m-tilde");
    a.beta = mf.get_double("beta");
    a.shift = mf.get_double("shift");
    return a;
}

int run_place(const PlaceArgs& a) {
    SystemConfig config;
    config.n = a.n;
    config.m = a.m;
    config.m_tilde = a.m_tilde > 0 ? a.m_tilde : a.m;
    config.k_tilde = a.k;
    const PopularityModel model = build_zipf_mandelbrot(a.n, a.beta, a.shift);
    const PlacementPlan plan = build_placement(policy_from_name(a.policy), model, config);
    emit(a.out, serialize_plan(plan));
    if (!a.out.empty()) write_file_whole(a.out + ".manifest", place_manifest(a).serialize());
    return 0;
}

// ---------------------------------------------------------------- bound ----

struct BoundArgs {
    std::string bound = "no-coding";
    int64_t n = 1000;
    int64_t m = 100;
    int64_t k = 3;
    int64_t m_tilde = 0;
    double beta = 1.2;
    double shift = 0.0;
    double b = 1.0;
    std::string out;
};

Manifest bound_manifest(const BoundArgs& a) {
    Manifest mf;
    mf.set("tool", kToolName);
    mf.set("version", kVersion);
    mf.set("subcommand", "bound");
    mf.set("bound", a.bound);
    mf.set_int("n", a.n);
    mf.set_int("m", a.m);
    mf.set_int("k", a.k);
    mf.set_int("m-tilde", a.m_tilde);
    mf.set_double("beta", a.beta);
    mf.set_double("shift", a.shift);
    mf.set_double("b", a.b);
    return mf;
}

BoundArgs bound_from_manifest(const Manifest& mf) {
    BoundArgs a;
    a.bound = mf.get("bound");
    a.n = mf.get_int("n");
    a.m = mf.get_int("m");
    a.k = mf.get_int("k");
    a.m_tilde = mf.get_int("m-tilde");
    a.beta = mf.get_double("beta");
    a.shift = mf.get_double("shift");
    a.b = mf.get_double("b");
    return a;
}

int run_bound(const BoundArgs& a) {
    SystemConfig config;
    config.n = a.n;
    config.m = a.m;
    config.m_tilde = a.m_tilde > 0 ? a.m_tilde : a.m;
    config.k_tilde = a.k;
    config.b = a.b;

    const PopularityModel model = build_zipf_mandelbrot(a.n, a.beta, a.shift);
    BoundReport report;
    if (a.bound == "no-coding") {
        config.setting = Setting::A;
        report = converse_no_coding(model, config);
    } else if (a.bound == "info") {
        config.setting = Setting::A;
        report = info_theoretic_bound(model, config);
    } else if (a.bound == "setting-b-coded") {
        config.setting = Setting::B;
        report = setting_b_coded_rate(model, config);
    } else if (a.bound == "setting-b-uncoded") {
        config.setting = Setting::B;
        report = setting_b_uncoded_rate(model, config);
    } else if (a.bound == "setting-c") {
        config.setting = Setting::C;
        report = setting_c_bound(model, config);
    } else {
        throw std::invalid_argument("unknown bound: " + a.bound);
    }

    CsvRow row;
    row.policy = report.name;
    row.setting = setting_letter(config.setting);
    row.n = config.n;
    row.m = config.m;
    row.m_tilde = config.m_tilde;
    row.k_tilde = config.k_tilde;
    row.beta = a.beta;
    row.iterations = 0;
    row.mean_rate = std::numeric_limits<double>::quiet_NaN();
    row.std_error = std::numeric_limits<double>::quiet_NaN();
    row.lower_bound = report.value;
    row.seed = 0;

    std::string csv = csv_header();
    csv += '\n';
    csv += format_csv_row(row);
    csv += '\n';
    emit(a.out, csv);
    if (!a.out.empty()) write_file_whole(a.out + ".manifest", bound_manifest(a).serialize());
    return 0;
}

// ------------------------------------------------------------- simulate ----

struct SimulateArgs {
    std::string experiment = "point";
    std::string policy = "knapsack";
    std::string setting = "A";
    int64_t n = 1000;
    int64_t m = 100;
    int64_t k = 3;
    int64_t m_tilde = 0;
    int64_t c = 5;
    double beta = 1.2;
    double shift = 0.0;
    double b = 1.0;
    int64_t iterations = 10000;
    uint64_t seed = 1;
    std::vector<int64_t> n_grid;
    int64_t k_from = 1;
    int64_t k_to = 12;
    std::vector<int64_t> k_list;
    double beta_from = 0.6;
    double beta_to = 2.0;
    double beta_step = 0.1;
    bool allow_partial = false;
    int threads = 0;
    bool gnuplot = false;
    std::string out;
};

Manifest simulate_manifest(const SimulateArgs& a) {
    Manifest mf;
    mf.set("tool", kToolName);
    mf.set("version", kVersion);
    mf.set("subcommand", "simulate");
    mf.set("experiment", a.experiment);
    mf.set("policy", a.policy);
    mf.set("setting", a.setting);
    mf.set_int("n", a.n);
    mf.set_int("m", a.m);
    mf.set_int("k", a.k);
    mf.set_int("m-tilde", a.m_tilde);
    mf.set_int("c", a.c);
    mf.set_double("beta", a.beta);
    mf.set_double("shift", a.shift);
    mf.set_double("b", a.b);
    mf.set_int("iterations", a.iterations);
    mf.set_uint("seed", a.seed);
    mf.set("n-grid", list_to_string(a.n_grid));
    mf.set_int("k-from", a.k_from);
    mf.set_int("k-to", a.k_to);
    mf.set("k-list", list_to_string(a.k_list));
    mf.set_double("beta-from", a.beta_from);
    mf.set_double("beta-to", a.beta_to);
    mf.set_double("beta-step", a.beta_step);
    mf.set_int("allow-partial", a.allow_partial ? 1 : 0);
    return mf;
}

SimulateArgs simulate_from_manifest(const Manifest& mf) {
    SimulateArgs a;
    a.experiment = mf.get("experiment");
    a.policy = mf.get("policy");
    a.setting = mf.get("setting");
    a.n = mf.get_int("n");
    a.m = mf.get_int("m");
    a.k = mf.get_int("k");
    a.m_tilde = mf.get_int("m-tilde");
    a.c = mf.get_int("c");
    a.beta = mf.get_double("beta");
    a.shift = mf.get_double("shift");
    a.b = mf.get_double("b");
    a.iterations = mf.get_int("iterations");
    a.seed = mf.get_uint("seed");
    a.n_grid = list_from_string(mf.get("n-grid"));
    a.k_from = mf.get_int("k-from");
    a.k_to = mf.get_int("k-to");
    a.k_list = list_from_string(mf.get("k-list"));
    a.beta_from = mf.get_double("beta-from");
    a.beta_to = mf.get_double("beta-to");
    a.beta_step = mf.get_double("beta-step");
    a.allow_partial = mf.get_int("allow-partial") != 0;
    return a;
}

ExperimentParams params_from_args(const SimulateArgs& a) {
    ExperimentParams p;
    p.n = a.n;
    p.m = a.m;
    p.k_tilde = a.k;
    p.c = a.c;
    p.beta = a.beta;
    p.shift = a.shift;
    p.b = a.b;
    if (a.setting.size() != 1) throw std::invalid_argument("setting must be one letter");
    p.setting = setting_from_letter(a.setting[0]);
    p.policy = policy_from_name(a.policy);
    p.iterations = a.iterations;
    p.master_seed = a.seed;
    p.m_tilde = a.m_tilde;
    p.n_grid = a.n_grid;
    p.k_from = a.k_from;
    p.k_to = a.k_to;
    p.k_list = a.k_list;
    p.beta_from = a.beta_from;
    p.beta_to = a.beta_to;
    p.beta_step = a.beta_step;
    return p;
}

std::string gnuplot_script(const SimulateArgs& a, const std::string& csv_path) {
    // Column map: 3=n, 6=k_tilde, 7=beta, 9=mean, 10=stderr, 11=bound.
    int x_col = 3;
    std::string xlabel = "catalog size n";
    if (a.experiment == "vary-storage") {
        x_col = 6;
        xlabel = "contents per cache";
    } else if (a.experiment == "vary-beta") {
        x_col = 7;
        xlabel = "popularity exponent";
    }
    std::ostringstream out;
    out << "set datafile separator ','\n"
        << "set key top right\n"
        << "set xlabel '" << xlabel << "'\n"
        << "set ylabel 'mean server transmission rate'\n"
        << "set grid\n";
    if (a.experiment == "vary-beta") {
        std::vector<int64_t> ks = a.k_list.empty() ? std::vector<int64_t>{3, 7} : a.k_list;
        out << "plot ";
        for (size_t i = 0; i < ks.size(); ++i) {
            const std::string k = format_int(ks[i]);
            if (i) out << ", \\\n     ";
            out << "'" << csv_path << "' every ::1 using " << x_col << ":($6==" << k
                << "?$9:NaN):10 with yerrorlines title 'simulated k=" << k << "', \\\n     "
                << "'" << csv_path << "' every ::1 using " << x_col << ":($6==" << k
                << "?$11:NaN) with lines title 'bound k=" << k << "'";
        }
        out << '\n';
    } else {
        out << "plot '" << csv_path << "' every ::1 using " << x_col
            << ":9:10 with yerrorlines title 'simulated', \\\n     '" << csv_path
            << "' every ::1 using " << x_col << ":11 with lines title 'lower bound'\n";
    }
    return out.str();
}

int run_simulate(const SimulateArgs& a) {
#ifdef _OPENMP
    if (a.threads > 0) omp_set_num_threads(a.threads);
#endif
    ExperimentSpec spec = make_experiment(a.experiment, params_from_args(a));
    spec.match.allow_partial = a.allow_partial;

    const std::vector<ExperimentRow> rows = run_experiment(spec);

    std::string csv = csv_header();
    csv += '\n';
    for (const ExperimentRow& row : rows) {
        CsvRow r;
        r.policy = policy_name(row.policy);
        r.setting = setting_letter(row.point.config.setting);
        r.n = row.point.config.n;
        r.m = row.point.config.m;
        r.m_tilde = row.point.config.m_tilde;
        r.k_tilde = row.point.config.k_tilde;
        r.beta = row.point.beta;
        r.iterations = row.summary.iterations;
        r.mean_rate = row.summary.mean_rate;
        r.std_error = row.summary.std_error;
        r.lower_bound = row.lower_bound;
        r.seed = row.summary.master_seed;
        csv += format_csv_row(r);
        csv += '\n';
    }

    emit(a.out, csv);
    if (!a.out.empty()) {
        write_file_whole(a.out + ".manifest", simulate_manifest(a).serialize());
        if (a.gnuplot) write_file_whole(a.out + ".gp", gnuplot_script(a, a.out));
    }
    return 0;
}

// ---------------------------------------------------------------- trace ----

struct TraceArgs {
    std::string policy = "knapsack";
    std::string setting = "A";
    int64_t n = 1000;
    int64_t m = 100;
    int64_t k = 3;
    int64_t m_tilde = 0;
    double beta = 1.2;
    double shift = 0.0;
    double b = 1.0;
    uint64_t seed = 1;
    bool allow_partial = false;
};

int run_trace(const TraceArgs& a) {
    SystemConfig config;
    config.n = a.n;
    config.m = a.m;
    config.m_tilde = a.m_tilde > 0 ? a.m_tilde : a.m;
    config.k_tilde = a.k;
    config.b = a.b;
    if (a.setting.size() != 1) throw std::invalid_argument("setting must be one letter");
    config.setting = setting_from_letter(a.setting[0]);

    const PopularityModel model = build_zipf_mandelbrot(a.n, a.beta, a.shift);
    const PlacementPlan plan = build_placement(policy_from_name(a.policy), model, config);

    // Same seed split as the simulator, so a traced slot reproduces slot 0 of
    // a point run with this master seed.
    const uint64_t slot_seed = derive_seed(a.seed, 0, 0);
    const RequestBatch batch = sample_batch(model, config.m_tilde, derive_seed(slot_seed, 1, 0));
    MatchOptions options;
    options.allow_partial = a.allow_partial;
    const MatchOutcome outcome =
        match_least_popular(plan, batch, derive_seed(slot_seed, 2, 0), options);

    std::ostringstream out;
    out << "batch (1-based content per request):";
    for (int32_t content : batch.requests) out << ' ' << content + 1;
    out << '\n';

    // Per-content decision log, least popular requested content first; the
    // matcher's processing order.
    std::vector<int64_t> served_per_content(static_cast<size_t>(config.n), 0);
    std::vector<std::vector<int64_t>> caches_per_content(static_cast<size_t>(config.n));
    for (size_t cache = 0; cache < outcome.assignment.size(); ++cache) {
        const int32_t req = outcome.assignment[cache];
        if (req < 0) continue;
        const auto content = static_cast<size_t>(batch.requests[static_cast<size_t>(req)]);
        ++served_per_content[content];
        caches_per_content[content].push_back(static_cast<int64_t>(cache) + 1);
    }
    std::vector<char> skipped(static_cast<size_t>(config.n), 0);
    for (int32_t content : outcome.skipped) skipped[static_cast<size_t>(content)] = 1;

    for (int64_t content = config.n - 1; content >= 0; --content) {
        const auto idx = static_cast<size_t>(content);
        const int32_t demand = batch.histogram[idx];
        if (demand == 0) continue;
        out << "content " << content + 1 << ": replicas " << plan.replicas[idx] << ", demand "
            << demand;
        if (skipped[idx]) {
            out << " -> skipped (fewer idle holders than requests)\n";
        } else if (served_per_content[idx] == demand) {
            out << " -> served by caches";
            for (int64_t cache : caches_per_content[idx]) out << ' ' << cache;
            out << '\n';
        } else {
            out << " -> partial, " << served_per_content[idx] << " of " << demand
                << " by caches";
            for (int64_t cache : caches_per_content[idx]) out << ' ' << cache;
            out << '\n';
        }
    }

    out << "served requests: " << outcome.served << '\n';
    out << "unserved requests: " << outcome.unserved.size() << " (distinct contents: "
        << outcome.unserved_distinct << ")\n";
    out << "rate, one transmission per distinct unserved content: "
        << format_double(rate_setting_a(outcome, config.b)) << '\n';
    out << "rate, one transmission per unserved request: "
        << format_double(rate_setting_c(outcome, config.b)) << '\n';
    std::cout << out.str();
    return 0;
}

// --------------------------------------------------------------- replay ----

int run_replay(const std::string& manifest_path, const std::string& out_override) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read manifest: " + manifest_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const Manifest mf = Manifest::parse(buf.str());

    const std::string sub = mf.get("subcommand");
    if (sub == "place") {
        PlaceArgs a = place_from_manifest(mf);
        a.out = out_override;
        return run_place(a);
    }
    if (sub == "bound") {
        BoundArgs a = bound_from_manifest(mf);
        a.out = out_override;
        return run_bound(a);
    }
    if (sub == "simulate") {
        SimulateArgs a = simulate_from_manifest(mf);
        a.out = out_override;
        return run_simulate(a);
    }
    throw std::invalid_argument("manifest has unknown subcommand: " + sub);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cache-cluster replication and request-routing toolkit"};
    app.require_subcommand(1);

    PlaceArgs place;
    auto* place_cmd = app.add_subcommand("place", "compute a replication layout");
    place_cmd->add_option("--policy", place.policy,
                          "knapsack | proportional | most-popular | setting-c")
        ->capture_default_str();
    place_cmd->add_option("--n", place.n, "catalog size")->capture_default_str();
    place_cmd->add_option("--m", place.m, "number of caches")->capture_default_str();
    place_cmd->add_option("--k", place.k, "contents per cache")->capture_default_str();
    place_cmd->add_option("--m-tilde", place.m_tilde, "requests per slot (0: same as m)")
        ->capture_default_str();
    place_cmd->add_option("--beta", place.beta, "popularity exponent")->capture_default_str();
    place_cmd->add_option("--shift", place.shift, "popularity shift")->capture_default_str();
    place_cmd->add_option("--out", place.out, "output file (default: stdout)");

    BoundArgs bound;
    auto* bound_cmd = app.add_subcommand("bound", "evaluate an analytic rate bound");
    bound_cmd->add_option("--bound", bound.bound,
                          "no-coding | info | setting-b-coded | setting-b-uncoded | setting-c")
        ->capture_default_str();
    bound_cmd->add_option("--n", bound.n, "catalog size")->capture_default_str();
    bound_cmd->add_option("--m", bound.m, "number of caches")->capture_default_str();
    bound_cmd->add_option("--k", bound.k, "contents per cache")->capture_default_str();
    bound_cmd->add_option("--m-tilde", bound.m_tilde, "requests per slot (0: same as m)")
        ->capture_default_str();
    bound_cmd->add_option("--beta", bound.beta, "popularity exponent")->capture_default_str();
    bound_cmd->add_option("--shift", bound.shift, "popularity shift")->capture_default_str();
    bound_cmd->add_option("--b", bound.b, "content size in rate units")->capture_default_str();
    bound_cmd->add_option("--out", bound.out, "output file (default: stdout)");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "run a Monte Carlo experiment sweep");
    sim_cmd->add_option("--experiment", sim.experiment, "vary-n | vary-storage | vary-beta | point")
        ->capture_default_str();
    sim_cmd->add_option("--policy", sim.policy,
                        "knapsack | proportional | most-popular | setting-c")
        ->capture_default_str();
    sim_cmd->add_option("--setting", sim.setting, "A (multicast) or C (unicast)")
        ->capture_default_str();
    sim_cmd->add_option("--n", sim.n, "catalog size")->capture_default_str();
    sim_cmd->add_option("--m", sim.m, "number of caches")->capture_default_str();
    sim_cmd->add_option("--k", sim.k, "contents per cache")->capture_default_str();
    sim_cmd->add_option("--m-tilde", sim.m_tilde, "requests per slot (0: track m)")
        ->capture_default_str();
    sim_cmd->add_option("--c", sim.c, "vary-n: catalog-to-cache ratio, m = n/c")
        ->capture_default_str();
    sim_cmd->add_option("--beta", sim.beta, "popularity exponent")->capture_default_str();
    sim_cmd->add_option("--shift", sim.shift, "popularity shift")->capture_default_str();
    sim_cmd->add_option("--b", sim.b, "content size in rate units")->capture_default_str();
    sim_cmd->add_option("--iterations", sim.iterations, "slots per sweep point")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "master seed")->capture_default_str();
    sim_cmd->add_option("--n-grid", sim.n_grid, "vary-n: catalog sizes")->delimiter(',');
    sim_cmd->add_option("--k-from", sim.k_from, "vary-storage: first k")->capture_default_str();
    sim_cmd->add_option("--k-to", sim.k_to, "vary-storage: last k")->capture_default_str();
    sim_cmd->add_option("--k-list", sim.k_list, "vary-beta: k values")->delimiter(',');
    sim_cmd->add_option("--beta-from", sim.beta_from, "vary-beta: first beta")
        ->capture_default_str();
    sim_cmd->add_option("--beta-to", sim.beta_to, "vary-beta: last beta")->capture_default_str();
    sim_cmd->add_option("--beta-step", sim.beta_step, "vary-beta: grid step")
        ->capture_default_str();
    sim_cmd->add_flag("--allow-partial", sim.allow_partial,
                      "serve part of an over-demanded content instead of skipping it");
    sim_cmd->add_option("--threads", sim.threads, "cap worker threads (0: hardware default)")
        ->capture_default_str();
    sim_cmd->add_flag("--gnuplot", sim.gnuplot, "also write a plot script next to the CSV");
    sim_cmd->add_option("--out", sim.out, "output CSV (default: stdout; required for --gnuplot)");

    TraceArgs trace;
    auto* trace_cmd = app.add_subcommand("trace", "print one slot's matching decisions");
    trace_cmd->add_option("--policy", trace.policy,
                          "knapsack | proportional | most-popular | setting-c")
        ->capture_default_str();
    trace_cmd->add_option("--setting", trace.setting, "A or C")->capture_default_str();
    trace_cmd->add_option("--n", trace.n, "catalog size")->capture_default_str();
    trace_cmd->add_option("--m", trace.m, "number of caches")->capture_default_str();
    trace_cmd->add_option("--k", trace.k, "contents per cache")->capture_default_str();
    trace_cmd->add_option("--m-tilde", trace.m_tilde, "requests per slot (0: same as m)")
        ->capture_default_str();
    trace_cmd->add_option("--beta", trace.beta, "popularity exponent")->capture_default_str();
    trace_cmd->add_option("--shift", trace.shift, "popularity shift")->capture_default_str();
    trace_cmd->add_option("--b", trace.b, "content size in rate units")->capture_default_str();
    trace_cmd->add_option("--seed", trace.seed, "master seed")->capture_default_str();
    trace_cmd->add_flag("--allow-partial", trace.allow_partial,
                        "serve part of an over-demanded content instead of skipping it");

    std::string replay_manifest;
    std::string replay_out;
    auto* replay_cmd = app.add_subcommand("replay", "re-run a recorded manifest");
    replay_cmd->add_option("--manifest", replay_manifest, "manifest file to replay")->required();
    replay_cmd->add_option("--out", replay_out, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (place_cmd->parsed()) return run_place(place);
        if (bound_cmd->parsed()) return run_bound(bound);
        if (sim_cmd->parsed()) {
            if (sim.gnuplot && sim.out.empty())
                throw std::invalid_argument("--gnuplot needs --out");
            return run_simulate(sim);
        }
        if (trace_cmd->parsed()) return run_trace(trace);
        if (replay_cmd->parsed()) return run_replay(replay_manifest, replay_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
