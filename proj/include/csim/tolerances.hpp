#pragma once

namespace csim {

// Numeric tolerances shared by the library and its tests. Kept in one place
// so a tolerance change cannot silently diverge between producer and checker.
struct Tolerances {
    double capacity_slack = 1e-9;      // knapsack: accepted weight may exceed capacity by this much
    double prob_sum_abs = 1e-12;       // popularity: |sum(probs) - 1|
    double aggregation_abs = 1e-9;     // simulation: permitted reduction-order drift
    double binomial_tail_abs = 1e-12;  // binomial_tail: absolute error budget
};

inline constexpr Tolerances kTol{};

}  // namespace csim
