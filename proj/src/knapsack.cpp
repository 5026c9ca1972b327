#include "csim/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace csim {

KnapsackSolution solve_fractional(const std::vector<KnapsackItem>& items, double capacity) {
    if (!(capacity >= 0.0) || !std::isfinite(capacity))
        throw std::invalid_argument("knapsack: capacity must be finite and >= 0");
    for (const auto& it : items) {
        if (!(it.value >= 0.0) || !std::isfinite(it.value))
            throw std::invalid_argument("knapsack: item values must be finite and >= 0");
        if (!(it.weight > 0.0) || !std::isfinite(it.weight))
            throw std::invalid_argument("knapsack: item weights must be finite and > 0");
    }

    std::vector<size_t> order(items.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const double ra = items[a].value / items[a].weight;
        const double rb = items[b].value / items[b].weight;
        if (ra != rb) return ra > rb;
        if (items[a].id != items[b].id) return items[a].id < items[b].id;
        return a < b;
    });

    KnapsackSolution sol;
    sol.x.assign(items.size(), 0.0);
    double remaining = capacity;
    for (size_t pos : order) {
        if (remaining <= 0.0) break;
        const auto& it = items[pos];
        if (it.weight <= remaining) {
            sol.x[pos] = 1.0;
            remaining -= it.weight;
        } else {
            sol.x[pos] = remaining / it.weight;  // in (0,1): weight > remaining > 0
            sol.split_id = it.id;
            remaining = 0.0;
        }
    }

    // Objective accumulated in input order with Neumaier compensation, so the
    // reported optimum does not depend on the sort order above.
    double sum = 0.0, comp = 0.0;
    for (size_t i = 0; i < items.size(); ++i) {
        const double term = sol.x[i] * items[i].value;
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    sol.objective = sum + comp;
    return sol;
}

}  // namespace csim
