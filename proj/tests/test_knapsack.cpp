#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "csim/knapsack.hpp"
#include "csim/rng.hpp"

using namespace csim;

namespace {

// LP optimum by vertex enumeration. Every vertex of the relaxed knapsack
// polytope fully takes some subset S and splits at most one further item, so
// scanning all (S, split) pairs is exhaustive for small instances.
double lp_optimum_bruteforce(const std::vector<KnapsackItem>& items, double capacity) {
    const size_t j = items.size();
    double best = 0.0;
    for (uint32_t mask = 0; mask < (1u << j); ++mask) {
        double weight = 0.0, value = 0.0;
        for (size_t i = 0; i < j; ++i)
            if (mask & (1u << i)) {
                weight += items[i].weight;
                value += items[i].value;
            }
        if (weight > capacity) continue;
        best = std::max(best, value);
        const double room = capacity - weight;
        for (size_t f = 0; f < j; ++f) {
            if (mask & (1u << f)) continue;
            const double frac = std::min(1.0, room / items[f].weight);
            best = std::max(best, value + frac * items[f].value);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("two-item example splits the heavier item") {
    const std::vector<KnapsackItem> items = {{0, 2.0, 1.0}, {1, 3.0, 3.0}};
    const KnapsackSolution sol = solve_fractional(items, 3.0);
    REQUIRE(sol.x.size() == 2);
    CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sol.x[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(sol.objective == doctest::Approx(4.0).epsilon(1e-15));
    REQUIRE(sol.split_id.has_value());
    CHECK(*sol.split_id == 1);
}

TEST_CASE("zero capacity takes nothing") {
    const std::vector<KnapsackItem> items = {{0, 5.0, 2.0}, {1, 1.0, 1.0}};
    const KnapsackSolution sol = solve_fractional(items, 0.0);
    CHECK(sol.x[0] == 0.0);
    CHECK(sol.x[1] == 0.0);
    CHECK(sol.objective == 0.0);
    CHECK_FALSE(sol.split_id.has_value());
}

TEST_CASE("loose capacity takes everything whole") {
    const std::vector<KnapsackItem> items = {{0, 5.0, 2.0}, {1, 1.0, 1.0}, {2, 0.5, 4.0}};
    const KnapsackSolution sol = solve_fractional(items, 100.0);
    for (double x : sol.x) CHECK(x == 1.0);
    CHECK(sol.objective == doctest::Approx(6.5).epsilon(1e-15));
    CHECK_FALSE(sol.split_id.has_value());
}

TEST_CASE("empty item list is a valid zero instance") {
    const KnapsackSolution sol = solve_fractional({}, 10.0);
    CHECK(sol.x.empty());
    CHECK(sol.objective == 0.0);
    CHECK_FALSE(sol.split_id.has_value());
}

TEST_CASE("greedy equals the enumerated LP optimum on random integer instances") {
    Xoshiro256ss rng(555);
    for (int trial = 0; trial < 100; ++trial) {
        const size_t j = 1 + static_cast<size_t>(rng.uniform_below(10));
        std::vector<KnapsackItem> items;
        items.reserve(j);
        for (size_t i = 0; i < j; ++i) {
            const double value = static_cast<double>(rng.uniform_below(11));
            const double weight = static_cast<double>(1 + rng.uniform_below(8));
            items.push_back({static_cast<int64_t>(i), value, weight});
        }
        const double capacity = static_cast<double>(rng.uniform_below(21));
        const KnapsackSolution sol = solve_fractional(items, capacity);
        const double oracle = lp_optimum_bruteforce(items, capacity);
        REQUIRE(std::fabs(sol.objective - oracle) <= 1e-9);

        // Feasibility of the greedy point itself.
        double used = 0.0;
        int fractional = 0;
        for (size_t i = 0; i < j; ++i) {
            REQUIRE(sol.x[i] >= 0.0);
            REQUIRE(sol.x[i] <= 1.0);
            if (sol.x[i] > 0.0 && sol.x[i] < 1.0) ++fractional;
            used += sol.x[i] * items[i].weight;
        }
        REQUIRE(fractional <= 1);
        REQUIRE(used <= capacity + 1e-9);
        if (fractional == 1) REQUIRE(sol.split_id.has_value());
    }
}

TEST_CASE("objective is monotone in capacity") {
    Xoshiro256ss rng(808);
    std::vector<KnapsackItem> items;
    for (int64_t i = 0; i < 8; ++i)
        items.push_back({i, rng.uniform01() * 10.0, rng.uniform01() * 5.0 + 0.1});
    double prev = -1.0;
    for (double cap = 0.0; cap <= 25.0; cap += 0.5) {
        const double obj = solve_fractional(items, cap).objective;
        CHECK(obj >= prev - 1e-12);
        prev = obj;
    }
}

TEST_CASE("scaling all values scales the objective") {
    const std::vector<KnapsackItem> items = {{0, 2.0, 3.0}, {1, 7.0, 4.0}, {2, 1.0, 1.0}};
    std::vector<KnapsackItem> scaled = items;
    for (auto& it : scaled) it.value *= 2.5;
    const double base = solve_fractional(items, 6.0).objective;
    const double twice = solve_fractional(scaled, 6.0).objective;
    CHECK(twice == doctest::Approx(2.5 * base).epsilon(1e-12));
}

TEST_CASE("equal densities break toward the lower id") {
    // Both items have density 1; capacity fits only one whole item.
    const std::vector<KnapsackItem> items = {{7, 4.0, 4.0}, {3, 4.0, 4.0}};
    const KnapsackSolution sol = solve_fractional(items, 4.0);
    CHECK(sol.x[1] == 1.0);  // id 3 wins
    CHECK(sol.x[0] == 0.0);
    CHECK_FALSE(sol.split_id.has_value());
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(solve_fractional({{0, 1.0, 0.0}}, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_fractional({{0, 1.0, -2.0}}, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_fractional({{0, -1.0, 2.0}}, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_fractional({{0, 1.0, 2.0}}, -1.0), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(solve_fractional({{0, nan, 2.0}}, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_fractional({{0, 1.0, nan}}, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_fractional({{0, 1.0, 2.0}}, nan), std::invalid_argument);
}
