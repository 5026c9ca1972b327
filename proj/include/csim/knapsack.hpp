#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace csim {

struct KnapsackItem {
    int64_t id = 0;      // caller's identifier, used for tie-breaking
    double value = 0.0;  // >= 0
    double weight = 0.0; // > 0
};

struct KnapsackSolution {
    std::vector<double> x;             // aligned with the input order, each in [0,1]
    double objective = 0.0;            // sum of x[i] * value[i]
    std::optional<int64_t> split_id;   // the at-most-one fractionally taken item
};

// Fractional knapsack by density greedy: items taken in non-increasing
// value/weight order, ties broken by lower id. The greedy prefix is the exact
// LP optimum; at most one item is split. O(J log J).
KnapsackSolution solve_fractional(const std::vector<KnapsackItem>& items, double capacity);

}  // namespace csim
