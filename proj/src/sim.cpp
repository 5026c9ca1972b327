#include "csim/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "csim/bounds.hpp"
#include "csim/rng.hpp"

namespace csim {

namespace {

// Neumaier-compensated accumulator; reductions must not depend on how the
// rates were produced.
struct Accum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

PopularityModel model_for_point(const SweepPoint& point) {
    return build_zipf_mandelbrot(point.config.n, point.beta, point.shift);
}

}  // namespace

std::string policy_name(StoragePolicy policy) {
    switch (policy) {
        case StoragePolicy::knapsack: return "knapsack";
        case StoragePolicy::proportional: return "proportional";
        case StoragePolicy::most_popular: return "most-popular";
        case StoragePolicy::setting_c_optimal: return "setting-c";
    }
    throw std::invalid_argument("unknown storage policy");
}

StoragePolicy policy_from_name(const std::string& name) {
    if (name == "knapsack") return StoragePolicy::knapsack;
    if (name == "proportional") return StoragePolicy::proportional;
    if (name == "most-popular") return StoragePolicy::most_popular;
    if (name == "setting-c") return StoragePolicy::setting_c_optimal;
    throw std::invalid_argument("unknown storage policy: " + name);
}

PlacementPlan build_placement(StoragePolicy policy, const PopularityModel& model,
                              const SystemConfig& config) {
    switch (policy) {
        case StoragePolicy::knapsack: return knapsack_storage(model, config);
        case StoragePolicy::proportional: return proportional_storage(model, config);
        case StoragePolicy::most_popular: return most_popular_storage(model, config);
        case StoragePolicy::setting_c_optimal: return setting_c_optimal_storage(model, config);
    }
    throw std::invalid_argument("unknown storage policy");
}

double run_slot(const PlacementPlan& plan, const AliasTable& table, const SystemConfig& config,
                uint64_t slot_seed, MatchOptions options) {
    RequestBatch batch = sample_batch(table, config.m_tilde, derive_seed(slot_seed, 1, 0));
    MatchOutcome outcome = match_least_popular(plan, batch, derive_seed(slot_seed, 2, 0), options);
    switch (config.setting) {
        case Setting::A:
        case Setting::D: return rate_setting_a(outcome, config.b);
        case Setting::C: return rate_setting_c(outcome, config.b);
        case Setting::B: break;
    }
    throw std::invalid_argument("setting B is analytic-only; no slot simulation");
}

double run_slot(const PlacementPlan& plan, const PopularityModel& model,
                const SystemConfig& config, uint64_t slot_seed, MatchOptions options) {
    validate(model);
    return run_slot(plan, AliasTable(model.probs), config, slot_seed, options);
}

namespace {

template <bool Parallel>
std::vector<double> slot_rates_impl(const PlacementPlan& plan, const PopularityModel& model,
                                    const SystemConfig& config, int64_t iterations,
                                    uint64_t master_seed, uint64_t sweep_index,
                                    MatchOptions options) {
    validate(config);
    validate(model);
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");

    const AliasTable table(model.probs);
    std::vector<double> rates(static_cast<size_t>(iterations));

    // Each slot is a pure function of its derived seed, so the loop below may
    // run in any order; results land in iteration-indexed cells.
#pragma omp parallel for schedule(dynamic, 16) if (Parallel)
    for (int64_t it = 0; it < iterations; ++it) {
        const uint64_t slot_seed = derive_seed(master_seed, sweep_index, static_cast<uint64_t>(it));
        rates[static_cast<size_t>(it)] = run_slot(plan, table, config, slot_seed, options);
    }
    return rates;
}

}  // namespace

std::vector<double> slot_rates(const PlacementPlan& plan, const PopularityModel& model,
                               const SystemConfig& config, int64_t iterations,
                               uint64_t master_seed, uint64_t sweep_index, MatchOptions options) {
    return slot_rates_impl<true>(plan, model, config, iterations, master_seed, sweep_index,
                                 options);
}

std::vector<double> slot_rates_serial(const PlacementPlan& plan, const PopularityModel& model,
                                      const SystemConfig& config, int64_t iterations,
                                      uint64_t master_seed, uint64_t sweep_index,
                                      MatchOptions options) {
    return slot_rates_impl<false>(plan, model, config, iterations, master_seed, sweep_index,
                                  options);
}

SimSummary summarize(const std::vector<double>& rates, uint64_t master_seed) {
    if (rates.empty()) throw std::invalid_argument("summarize: no rates");
    SimSummary summary;
    summary.iterations = static_cast<int64_t>(rates.size());
    summary.master_seed = master_seed;

    Accum mean_acc;
    for (double r : rates) mean_acc.add(r);
    summary.mean_rate = mean_acc.total() / static_cast<double>(rates.size());

    if (rates.size() > 1) {
        Accum var_acc;
        for (double r : rates) {
            const double d = r - summary.mean_rate;
            var_acc.add(d * d);
        }
        const double sample_var = var_acc.total() / static_cast<double>(rates.size() - 1);
        summary.std_error = std::sqrt(sample_var / static_cast<double>(rates.size()));
    }
    return summary;
}

void validate(const ExperimentSpec& spec) {
    if (spec.points.empty()) throw std::invalid_argument("experiment: empty sweep");
    if (spec.iterations < 1) throw std::invalid_argument("experiment: iterations must be >= 1");
    for (const auto& point : spec.points) validate(point.config);
}

namespace {

std::vector<SimSummary> monte_carlo_impl(const ExperimentSpec& spec, bool parallel) {
    validate(spec);
    std::vector<SimSummary> summaries;
    summaries.reserve(spec.points.size());
    for (size_t idx = 0; idx < spec.points.size(); ++idx) {
        const SweepPoint& point = spec.points[idx];
        const PopularityModel model = model_for_point(point);
        const PlacementPlan plan = build_placement(spec.policy, model, point.config);
        const std::vector<double> rates =
            parallel ? slot_rates(plan, model, point.config, spec.iterations, spec.master_seed,
                                  static_cast<uint64_t>(idx), spec.match)
                     : slot_rates_serial(plan, model, point.config, spec.iterations,
                                         spec.master_seed, static_cast<uint64_t>(idx), spec.match);
        summaries.push_back(summarize(rates, spec.master_seed));
    }
    return summaries;
}

}  // namespace

std::vector<SimSummary> monte_carlo(const ExperimentSpec& spec) {
    return monte_carlo_impl(spec, true);
}

std::vector<SimSummary> monte_carlo_serial(const ExperimentSpec& spec) {
    return monte_carlo_impl(spec, false);
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
    const std::vector<SimSummary> summaries = monte_carlo(spec);
    std::vector<ExperimentRow> rows;
    rows.reserve(spec.points.size());
    for (size_t idx = 0; idx < spec.points.size(); ++idx) {
        ExperimentRow row;
        row.point = spec.points[idx];
        row.policy = spec.policy;
        row.summary = summaries[idx];
        row.lower_bound =
            converse_no_coding(model_for_point(spec.points[idx]), spec.points[idx].config).value;
        rows.push_back(row);
    }
    return rows;
}

namespace {

SweepPoint make_point(const ExperimentParams& params, int64_t n, int64_t m, int64_t k_tilde,
                      double beta) {
    SweepPoint point;
    point.config.n = n;
    point.config.m = m;
    point.config.m_tilde = params.m_tilde > 0 ? params.m_tilde : m;
    point.config.k_tilde = k_tilde;
    point.config.b = params.b;
    point.config.setting = params.setting;
    point.beta = beta;
    point.shift = params.shift;
    return point;
}

ExperimentSpec base_spec(const ExperimentParams& params, std::string name) {
    ExperimentSpec spec;
    spec.name = std::move(name);
    spec.policy = params.policy;
    spec.iterations = params.iterations;
    spec.master_seed = params.master_seed;
    return spec;
}

}  // namespace

ExperimentSpec experiment_vary_n(const ExperimentParams& params) {
    if (params.c < 1) throw std::invalid_argument("vary-n: c must be >= 1");
    ExperimentSpec spec = base_spec(params, "vary-n");
    std::vector<int64_t> grid = params.n_grid;
    if (grid.empty()) grid = {100, 200, 500, 1000};
    for (int64_t n : grid) {
        if (n % params.c != 0)
            throw std::invalid_argument("vary-n: grid point not divisible by c");
        spec.points.push_back(make_point(params, n, n / params.c, params.k_tilde, params.beta));
    }
    validate(spec);
    return spec;
}

ExperimentSpec experiment_vary_storage(const ExperimentParams& params) {
    if (params.k_from < 1 || params.k_to < params.k_from)
        throw std::invalid_argument("vary-storage: need 1 <= k-from <= k-to");
    ExperimentSpec spec = base_spec(params, "vary-storage");
    for (int64_t k = params.k_from; k <= params.k_to; ++k)
        spec.points.push_back(make_point(params, params.n, params.m, k, params.beta));
    validate(spec);
    return spec;
}

ExperimentSpec experiment_vary_beta(const ExperimentParams& params) {
    if (!(params.beta_step > 0.0))
        throw std::invalid_argument("vary-beta: step must be positive");
    if (params.beta_to < params.beta_from)
        throw std::invalid_argument("vary-beta: need beta-from <= beta-to");
    ExperimentSpec spec = base_spec(params, "vary-beta");
    std::vector<int64_t> ks = params.k_list;
    if (ks.empty()) ks = {3, 7};
    // Integer stepping keeps the grid free of accumulated rounding drift.
    const auto steps = static_cast<int64_t>(
        std::floor((params.beta_to - params.beta_from) / params.beta_step + 1e-9));
    for (int64_t k : ks)
        for (int64_t j = 0; j <= steps; ++j) {
            const double beta = params.beta_from + static_cast<double>(j) * params.beta_step;
            spec.points.push_back(make_point(params, params.n, params.m, k, beta));
        }
    validate(spec);
    return spec;
}

ExperimentSpec experiment_point(const ExperimentParams& params) {
    ExperimentSpec spec = base_spec(params, "point");
    spec.points.push_back(
        make_point(params, params.n, params.m, params.k_tilde, params.beta));
    validate(spec);
    return spec;
}

ExperimentSpec make_experiment(const std::string& name, const ExperimentParams& params) {
    if (name == "vary-n") return experiment_vary_n(params);
    if (name == "vary-storage") return experiment_vary_storage(params);
    if (name == "vary-beta") return experiment_vary_beta(params);
    if (name == "point") return experiment_point(params);
    throw std::invalid_argument("unknown experiment: " + name);
}

}  // namespace csim
