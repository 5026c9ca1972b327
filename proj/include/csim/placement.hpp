#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csim/knapsack.hpp"
#include "csim/popularity.hpp"

namespace csim {

// Transmission setting: A = uncoded multicast (one transmission per distinct
// unserved content), B = coded broadcast (bounds only), C = unicast (one
// transmission per unserved request), D = label for the most-popular baseline.
enum class Setting { A, B, C, D };

char setting_letter(Setting s);
Setting setting_from_letter(char c);

struct SystemConfig {
    int64_t n = 0;        // catalog size
    int64_t m = 0;        // number of caches
    int64_t m_tilde = 0;  // requests per slot
    int64_t k_tilde = 0;  // contents stored per cache
    double b = 1.0;       // content size in rate units, > 0
    Setting setting = Setting::A;
};

// Throws std::invalid_argument unless n, m, m_tilde, k_tilde >= 1 and b > 0.
void validate(const SystemConfig& config);

// A replication layout: which contents sit on which caches.
struct PlacementPlan {
    int64_t n = 0;
    int64_t m = 0;
    int64_t k_tilde = 0;
    std::vector<std::vector<int32_t>> cache_contents;  // size m, 0-based ids, no duplicates per cache
    std::vector<int32_t> replicas;                     // size n, total copies per content
};

// Throws std::invalid_argument if a cache exceeds k_tilde, holds duplicates,
// references contents outside [0, n), or replicas disagrees with the layout.
void validate(const PlacementPlan& plan);

// Per-content copy counts for the storage knapsack. Tiered by popularity:
// the most popular contents go everywhere, the head is padded ~(1+p*/2) above
// its expected demand, the torso gets a fixed (log m)^2 pad, the tail one
// copy. Natural logarithms; every weight is capped at m. Requires m >= 3.
std::vector<int64_t> knapsack_weights(const PopularityModel& model, const SystemConfig& config);

struct StorageDecision {
    std::vector<int32_t> replicas;   // floor(x_i) * w_i: the split item is dropped
    std::vector<int64_t> weights;
    KnapsackSolution solution;
};

// Part 1: choose copy counts by solving the fractional knapsack with values
// 1-(1-p_i)^m_tilde, the tiered weights, and capacity m*k_tilde.
StorageDecision knapsack_storage_part1(const PopularityModel& model, const SystemConfig& config);

// Part 2: lay copies out round-robin, copies enumerated in increasing content
// order, copy rank r on cache ((r-1) mod m) + 1. Counts are capped at m; the
// capped total must fit in m*k_tilde.
PlacementPlan knapsack_storage_part2(const std::vector<int32_t>& replicas, const SystemConfig& config);

PlacementPlan knapsack_storage(const PopularityModel& model, const SystemConfig& config);

// ceil(m*p_i) copies for the most popular contents up to cutoff
// (m/log m)^(1/beta), none below; k_tilde must be 1. Over-committed totals are
// truncated from the least popular selected content downward.
PlacementPlan proportional_storage(const PopularityModel& model, const SystemConfig& config);

// Every cache stores contents 1..k_tilde.
PlacementPlan most_popular_storage(const PopularityModel& model, const SystemConfig& config);

// Copy counts maximizing the expected number of served requests under unicast
// service, via the m largest binomial tail probabilities; k_tilde must be 1.
PlacementPlan setting_c_optimal_storage(const PopularityModel& model, const SystemConfig& config);

// Text form: header "n m k_tilde", then one line per cache with 1-based
// content indices in placement order.
std::string serialize_plan(const PlacementPlan& plan);
PlacementPlan parse_plan(const std::string& text);

}  // namespace csim
