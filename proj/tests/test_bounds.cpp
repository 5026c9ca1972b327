#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "csim/bounds.hpp"
#include "csim/placement.hpp"
#include "csim/popularity.hpp"
#include "csim/rng.hpp"

using namespace csim;

namespace {

SystemConfig make_config(int64_t n, int64_t m, int64_t m_tilde, int64_t k_tilde,
                         double b = 1.0) {
    SystemConfig config;
    config.n = n;
    config.m = m;
    config.m_tilde = m_tilde;
    config.k_tilde = k_tilde;
    config.b = b;
    return config;
}

double detail_value(const BoundReport& report, const std::string& key) {
    for (const auto& [name, value] : report.detail)
        if (name == key) return value;
    FAIL("missing detail key: ", key);
    return 0.0;
}

// Exact reference for small m: Pascal-recurrence pmf in long double.
long double tail_by_direct_sum(int64_t m, long double p, int64_t j) {
    long double total = 0.0L;
    for (int64_t k = j; k <= m; ++k) {
        long double coeff = 1.0L;
        for (int64_t t = 1; t <= k; ++t)
            coeff = coeff * static_cast<long double>(m - t + 1) / static_cast<long double>(t);
        total += coeff * std::pow(p, static_cast<long double>(k)) *
                 std::pow(1.0L - p, static_cast<long double>(m - k));
    }
    return total;
}

}  // namespace

TEST_CASE("binomial tail edge cases") {
    CHECK(binomial_tail(5, 0.3, 0) == 1.0);
    CHECK(binomial_tail(5, 0.3, -2) == 1.0);
    CHECK(binomial_tail(5, 0.3, 6) == 0.0);
    CHECK(binomial_tail(5, 0.0, 1) == 0.0);
    CHECK(binomial_tail(5, 1.0, 5) == 1.0);
    CHECK(binomial_tail(1, 0.3, 1) == doctest::Approx(0.3).epsilon(1e-15));
    CHECK_THROWS_AS(binomial_tail(0, 0.3, 1), std::invalid_argument);
    CHECK_THROWS_AS(binomial_tail(5, -0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(binomial_tail(5, 1.1, 1), std::invalid_argument);
}

TEST_CASE("binomial tail matches exact summation at large scale") {
    // References computed with exact arbitrary-precision summation.
    struct Case {
        int64_t m;
        double p;
        int64_t j;
        double want;
    };
    const Case cases[] = {
        {1000000, 1e-7, 1, 0.09516258648822781},
        {1000000, 1e-5, 10, 0.5420709110818712},
        {1000000, 1e-5, 25, 4.694425953784754e-5},
        {100000, 1e-5, 2, 0.2642411176540497},
        {1000000, 0.001, 1000, 0.504211555166992},
        {1000000, 0.001, 1100, 9.57466970028540e-4},
    };
    for (const auto& c : cases)
        CHECK(std::fabs(binomial_tail(c.m, c.p, c.j) - c.want) <= 1e-12);
}

TEST_CASE("binomial tail agrees with direct summation for small m") {
    Xoshiro256ss rng(246);
    for (int trial = 0; trial < 200; ++trial) {
        const int64_t m = 1 + static_cast<int64_t>(rng.uniform_below(30));
        const double p = rng.uniform01();
        const int64_t j = 1 + static_cast<int64_t>(rng.uniform_below(static_cast<uint64_t>(m)));
        const double want =
            static_cast<double>(tail_by_direct_sum(m, static_cast<long double>(p), j));
        CHECK(std::fabs(binomial_tail(m, p, j) - want) <= 1e-12);
    }
}

TEST_CASE("binomial tail is monotone in j and in p") {
    for (int64_t j = 0; j <= 20; ++j)
        CHECK(binomial_tail(20, 0.37, j) >= binomial_tail(20, 0.37, j + 1));
    double prev = 0.0;
    for (double p = 0.0; p <= 1.0000001; p += 0.05) {
        const double cur = binomial_tail(40, std::min(p, 1.0), 7);
        CHECK(cur >= prev - 1e-15);
        prev = cur;
    }
}

TEST_CASE("value density profile is unimodal with the predicted peak") {
    const PopularityModel model = build_zipf(100, 1.2);
    const SystemConfig config = make_config(100, 100, 100, 1);
    const std::vector<double> r = ratio_profile(model, config);
    REQUIRE(r.size() == 100);

    size_t peak = 0;
    for (size_t i = 1; i < r.size(); ++i)
        if (r[i] > r[peak]) peak = i;
    // (m_tilde * p_1)^(1/beta) = 15.95...; peak is 1-based index 16.
    const double predicted = std::pow(100.0 * model.probs[0], 1.0 / 1.2);
    CHECK(predicted == doctest::Approx(15.950579000799879).epsilon(1e-12));
    CHECK(std::fabs(static_cast<double>(peak + 1) - predicted) <= 1.0 + 1e-9);

    for (size_t i = 0; i < peak; ++i) CHECK(r[i] <= r[i + 1]);
    for (size_t i = peak; i + 1 < r.size(); ++i) CHECK(r[i] >= r[i + 1]);
}

TEST_CASE("value density switches formula at one expected request") {
    // Below the kink (m_tilde p < 1) the density is the raw value; above it
    // the value is divided by the expected demand.
    const PopularityModel model = build_zipf(10, 1.5);
    const SystemConfig config = make_config(10, 4, 4, 1);
    const std::vector<double> r = ratio_profile(model, config);
    for (size_t i = 0; i < r.size(); ++i) {
        const double p = model.probs[i];
        const double value = 1.0 - std::pow(1.0 - p, 4.0);
        const double want = 4.0 * p >= 1.0 ? value / (4.0 * p) : value;
        CHECK(r[i] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("no-coding converse on a single content covers both branches") {
    const PopularityModel model = build_zipf(1, 1.0);
    // Storage below demand: bound = b (1 - m k / m_tilde).
    const BoundReport tight = converse_no_coding(model, make_config(1, 2, 4, 1));
    CHECK(tight.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(tight.window_lo == 1);
    CHECK(tight.window_hi == 1);
    // Storage above demand: bound 0.
    const BoundReport loose = converse_no_coding(model, make_config(1, 4, 2, 1));
    CHECK(loose.value == 0.0);
}

TEST_CASE("no-coding converse is exactly zero with surplus capacity") {
    const PopularityModel model = build_zipf(10, 1.0);
    const BoundReport report = converse_no_coding(model, make_config(10, 5, 5, 3));
    CHECK(report.value == 0.0);
    CHECK(report.window_lo == 1);
    CHECK(report.window_hi == 10);
    CHECK(detail_value(report, "selected_count") == 10.0);
}

TEST_CASE("no-coding converse reproduces the reference window") {
    const PopularityModel model = build_zipf(100, 1.2);
    const BoundReport report = converse_no_coding(model, make_config(100, 100, 100, 1));
    // Frozen against an independent LP solve of the same relaxation.
    CHECK(report.value == doctest::Approx(4.374512413523888).epsilon(1e-12));
    CHECK(report.window_lo == 3);
    CHECK(report.window_hi == 80);
    CHECK(detail_value(report, "selected_count") == 78.0);
    CHECK(detail_value(report, "i_tilde") ==
          doctest::Approx(15.950579000799879).epsilon(1e-12));
    const double optimum = detail_value(report, "knapsack_optimum");
    const double total = detail_value(report, "total_value");
    CHECK(report.value == doctest::Approx(total - optimum).epsilon(1e-12));
}

TEST_CASE("no-coding converse scales linearly in b") {
    const PopularityModel model = build_zipf(60, 1.4);
    const double base = converse_no_coding(model, make_config(60, 20, 20, 1, 1.0)).value;
    const double doubled = converse_no_coding(model, make_config(60, 20, 20, 1, 2.0)).value;
    CHECK(doubled == doctest::Approx(2.0 * base).epsilon(1e-12));
}

TEST_CASE("no-coding converse selects one contiguous block around the peak") {
    const double betas[] = {1.05, 1.2, 1.35, 1.5, 1.65, 1.8, 1.95};
    const int64_t sizes[] = {50, 100, 200};
    for (double beta : betas)
        for (int64_t n : sizes) {
            const PopularityModel model = build_zipf(n, beta);
            const SystemConfig config = make_config(n, n, n, 1);
            const BoundReport report = converse_no_coding(model, config);
            const auto selected = static_cast<int64_t>(detail_value(report, "selected_count"));
            REQUIRE(selected >= 1);
            CHECK(report.window_hi - report.window_lo + 1 == selected);

            const std::vector<double> r = ratio_profile(model, config);
            size_t peak = 0;
            for (size_t i = 1; i < r.size(); ++i)
                if (r[i] > r[peak]) peak = i;
            CHECK(report.window_lo <= static_cast<int64_t>(peak) + 1);
            CHECK(static_cast<int64_t>(peak) + 1 <= report.window_hi);
        }
}

TEST_CASE("order-level floor matches the reference arithmetic") {
    const PopularityModel model = build_zipf(1000, 1.5);
    const BoundReport report = info_theoretic_bound(model, make_config(1000, 100, 100, 3));
    CHECK(report.value == doctest::Approx(2.2135943621178655).epsilon(1e-14));
}

TEST_CASE("order-level floor clamps at zero and validates inputs") {
    const PopularityModel full = build_zipf(100, 1.5);
    CHECK(info_theoretic_bound(full, make_config(100, 50, 50, 2)).value == 0.0);

    const PopularityModel shifted = build_zipf_mandelbrot(100, 1.5, 1.0);
    CHECK_THROWS_AS(info_theoretic_bound(shifted, make_config(100, 10, 10, 1)),
                    std::invalid_argument);
    const PopularityModel flat = build_zipf(100, 1.0);
    CHECK_THROWS_AS(info_theoretic_bound(flat, make_config(100, 10, 10, 1)),
                    std::invalid_argument);
}

TEST_CASE("broadcast rates at the reference configuration") {
    const PopularityModel model = build_zipf(100, 1.5);
    const SystemConfig config = make_config(100, 50, 50, 4);
    const BoundReport coded = setting_b_coded_rate(model, config);
    CHECK(detail_value(coded, "n3") == 19.0);
    CHECK(coded.value == doctest::Approx(9.000426602940786).epsilon(1e-12));
    const BoundReport uncoded = setting_b_uncoded_rate(model, config);
    CHECK(uncoded.value == doctest::Approx(15.373172988576716).epsilon(1e-12));
    CHECK(coded.value <= uncoded.value);
}

TEST_CASE("broadcast rate vanishes when the cluster holds everything") {
    const PopularityModel model = build_zipf(2, 1.5);
    const BoundReport report = setting_b_coded_rate(model, make_config(2, 2, 2, 2));
    CHECK(detail_value(report, "n3") == 2.0);
    CHECK(report.value == 0.0);
}

TEST_CASE("broadcast rate falls back to plain multicast when storage is exhausted") {
    // n3 equals k_tilde, so the coded branch is unavailable (infinite) and
    // the tail is served by multicasting expected demand.
    const PopularityModel model = build_zipf(10, 1.5);
    const SystemConfig config = make_config(10, 3, 3, 2);
    const BoundReport report = setting_b_coded_rate(model, config);
    CHECK(detail_value(report, "n3") == 2.0);
    double tail = 0.0;
    for (size_t i = 2; i < model.probs.size(); ++i) tail += 3.0 * model.probs[i];
    CHECK(report.value == doctest::Approx(tail).epsilon(1e-12));
}

TEST_CASE("coded stays below uncoded at the matched storage point") {
    for (int64_t m : {1000, 10000}) {
        const int64_t n = 5 * m;
        const auto k = static_cast<int64_t>(
            std::ceil(std::pow(static_cast<double>(m), 1.0 / 1.5)));
        const PopularityModel model = build_zipf(n, 1.5);
        const SystemConfig config = make_config(n, m, m, k);
        CHECK(setting_b_coded_rate(model, config).value <=
              setting_b_uncoded_rate(model, config).value);
    }
}

TEST_CASE("tail selection handles zero caches and bad inputs") {
    const PopularityModel model = build_zipf(4, 1.2);
    const TailSelection sel = select_binomial_tails(model.probs, 0, 6);
    CHECK(sel.total == 0.0);
    for (int32_t c : sel.copies) CHECK(c == 0);
    CHECK_THROWS_AS(select_binomial_tails(model.probs, -1, 6), std::invalid_argument);
    CHECK_THROWS_AS(select_binomial_tails(model.probs, 2, 0), std::invalid_argument);
}

TEST_CASE("unicast converse at the enumerated reference instance") {
    PopularityModel model;
    model.n = 3;
    model.beta = 1.0;
    model.shift = 0.0;
    model.probs = {0.5, 0.3, 0.2};
    const BoundReport report = setting_c_bound(model, make_config(3, 4, 4, 1));
    CHECK(detail_value(report, "served_optimum") == doctest::Approx(2.9753).epsilon(1e-12));
    CHECK(report.value == doctest::Approx(1.0247).epsilon(1e-12));
}

TEST_CASE("unicast converse degenerates on a single content") {
    const PopularityModel model = build_zipf(1, 1.0);
    CHECK(setting_c_bound(model, make_config(1, 5, 3, 1)).value == 0.0);
    CHECK(setting_c_bound(model, make_config(1, 2, 5, 1)).value ==
          doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("unicast converse requires unit cache size") {
    const PopularityModel model = build_zipf(10, 1.2);
    CHECK_THROWS_AS(setting_c_bound(model, make_config(10, 5, 5, 2)), std::invalid_argument);
}

TEST_CASE("regime table covers all five cases") {
    const double beta = 1.5;
    const double eps_tilde = (2.0 - beta) * (beta - 1.0) / beta;

    RegimeReport r1 = regime_classify({StorageGap::deficit_const, 0.0}, beta);
    CHECK(r1.case_id == 1);
    CHECK(r1.exponent == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r1.eps_tilde == doctest::Approx(eps_tilde).epsilon(1e-15));

    RegimeReport r2 = regime_classify({StorageGap::deficit_poly, 0.1}, beta);
    CHECK(r2.case_id == 2);
    CHECK(r2.exponent == doctest::Approx(0.4).epsilon(1e-15));

    RegimeReport r3 = regime_classify({StorageGap::near_tight, 0.0}, beta);
    CHECK(r3.case_id == 3);
    CHECK(r3.exponent == doctest::Approx((2.0 - beta) / beta).epsilon(1e-15));

    RegimeReport r4 = regime_classify({StorageGap::surplus_poly, 0.15}, beta);
    CHECK(r4.case_id == 4);
    CHECK(r4.exponent == doctest::Approx(0.3).epsilon(1e-15));

    RegimeReport r5 = regime_classify({StorageGap::surplus_const, 0.0}, beta);
    CHECK(r5.case_id == 5);
    CHECK(r5.converse_zero);
    CHECK(r5.achievable_constant);
}

TEST_CASE("regime table rejects unsupported parameters") {
    CHECK_THROWS_AS(regime_classify({StorageGap::deficit_const, 0.0}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(regime_classify({StorageGap::deficit_const, 0.0}, 2.0),
                    std::invalid_argument);
    // epsilon outside (0, eps_tilde]
    CHECK_THROWS_AS(regime_classify({StorageGap::deficit_poly, 0.0}, 1.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(regime_classify({StorageGap::surplus_poly, 0.5}, 1.5),
                    std::invalid_argument);
}
