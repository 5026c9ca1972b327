#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csim/matching.hpp"
#include "csim/placement.hpp"
#include "csim/popularity.hpp"

namespace csim {

enum class StoragePolicy { knapsack, proportional, most_popular, setting_c_optimal };

std::string policy_name(StoragePolicy policy);
StoragePolicy policy_from_name(const std::string& name);

// Placement for a policy at one parameter point. Computed once per sweep
// point; placements depend on the popularity profile, never on slot draws.
PlacementPlan build_placement(StoragePolicy policy, const PopularityModel& model,
                              const SystemConfig& config);

// One delivery slot: sample a batch, match, price the unserved remainder.
// Settings A and D charge b per distinct unserved content, C charges b per
// unserved request; B is analytic-only and rejected here. The slot seed
// splits into independent streams for sampling and matching.
double run_slot(const PlacementPlan& plan, const AliasTable& table, const SystemConfig& config,
                uint64_t slot_seed, MatchOptions options = {});
double run_slot(const PlacementPlan& plan, const PopularityModel& model,
                const SystemConfig& config, uint64_t slot_seed, MatchOptions options = {});

// Per-slot rates for `iterations` slots. Slot i uses
// derive_seed(master_seed, sweep_index, i), so the output is a pure function
// of the arguments. The parallel engine distributes iterations across OpenMP
// threads and writes into the iteration-indexed result directly; it is
// byte-identical to the serial reference at any thread count.
std::vector<double> slot_rates(const PlacementPlan& plan, const PopularityModel& model,
                               const SystemConfig& config, int64_t iterations,
                               uint64_t master_seed, uint64_t sweep_index,
                               MatchOptions options = {});
std::vector<double> slot_rates_serial(const PlacementPlan& plan, const PopularityModel& model,
                                      const SystemConfig& config, int64_t iterations,
                                      uint64_t master_seed, uint64_t sweep_index,
                                      MatchOptions options = {});

struct SimSummary {
    double mean_rate = 0.0;
    double std_error = 0.0;  // sqrt(sample variance / iterations); 0 for one iteration
    int64_t iterations = 0;
    uint64_t master_seed = 0;
};

// Sequential compensated reduction, independent of how the rates were filled.
SimSummary summarize(const std::vector<double>& rates, uint64_t master_seed);

struct SweepPoint {
    SystemConfig config;
    double beta = 0.0;
    double shift = 0.0;
};

struct ExperimentSpec {
    std::string name;  // vary-n | vary-storage | vary-beta | point
    StoragePolicy policy = StoragePolicy::knapsack;
    std::vector<SweepPoint> points;
    int64_t iterations = 10000;
    uint64_t master_seed = 1;
    MatchOptions match;
};

void validate(const ExperimentSpec& spec);

std::vector<SimSummary> monte_carlo(const ExperimentSpec& spec);
std::vector<SimSummary> monte_carlo_serial(const ExperimentSpec& spec);

// One CSV-able result row: the summary plus the no-coding lower bound
// recomputed standalone at the same point.
struct ExperimentRow {
    SweepPoint point;
    StoragePolicy policy = StoragePolicy::knapsack;
    SimSummary summary;
    double lower_bound = 0.0;
};

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

// Parameter block the experiment factories and the command line share.
// Fields a given experiment ignores are listed next to it.
struct ExperimentParams {
    int64_t n = 1000;
    int64_t m = 100;
    int64_t k_tilde = 3;
    int64_t c = 5;  // vary-n: m = n / c, requires c | n
    double beta = 1.2;
    double shift = 0.0;
    double b = 1.0;
    Setting setting = Setting::A;
    StoragePolicy policy = StoragePolicy::knapsack;
    int64_t iterations = 10000;
    uint64_t master_seed = 1;
    int64_t m_tilde = 0;             // 0 means m_tilde = m
    std::vector<int64_t> n_grid;     // vary-n; default {100, 200, 500, 1000}
    int64_t k_from = 1;              // vary-storage
    int64_t k_to = 12;
    std::vector<int64_t> k_list;     // vary-beta; default {3, 7}
    double beta_from = 0.6;          // vary-beta
    double beta_to = 2.0;
    double beta_step = 0.1;
};

ExperimentSpec experiment_vary_n(const ExperimentParams& params);
ExperimentSpec experiment_vary_storage(const ExperimentParams& params);
ExperimentSpec experiment_vary_beta(const ExperimentParams& params);
ExperimentSpec experiment_point(const ExperimentParams& params);
ExperimentSpec make_experiment(const std::string& name, const ExperimentParams& params);

}  // namespace csim
