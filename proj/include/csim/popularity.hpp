#pragma once

#include <cstdint>
#include <vector>

#include "csim/rng.hpp"

namespace csim {

// Power-law popularity profile over a catalog of n contents.
// probs[i] is the request probability of content i (0-based; content 0 is the
// most popular). probs is non-increasing and sums to 1.
struct PopularityModel {
    int64_t n = 0;
    double beta = 0.0;
    double shift = 0.0;  // 0 gives the pure power law
    std::vector<double> probs;
};

// p_i proportional to i^(-beta), i = 1..n.
PopularityModel build_zipf(int64_t n, double beta);

// p_i proportional to (i + shift)^(-beta), i = 1..n, shift >= 0.
PopularityModel build_zipf_mandelbrot(int64_t n, double beta, double shift);

// Throws std::invalid_argument if the profile is not a valid non-increasing
// probability vector (sum within kTol.prob_sum_abs of 1).
void validate(const PopularityModel& model);

// One slot's worth of i.i.d. requests drawn from a popularity profile.
struct RequestBatch {
    std::vector<int32_t> requests;   // 0-based content ids, size m_tilde
    std::vector<int32_t> histogram;  // request count per content, size n
};

// Walker/Vose alias table: O(n) construction, one uniform draw per sample.
class AliasTable {
public:
    explicit AliasTable(const std::vector<double>& probs);

    int32_t draw(Xoshiro256ss& rng) const;
    int64_t size() const { return static_cast<int64_t>(cut_.size()); }

private:
    std::vector<double> cut_;     // acceptance threshold per bucket
    std::vector<int32_t> alias_;  // fallback content per bucket
};

// Deterministic given (model, m_tilde, seed); constant time per draw.
RequestBatch sample_batch(const PopularityModel& model, int64_t m_tilde, uint64_t seed);

// Same draw sequence from a prebuilt table; the per-slot path of the
// simulator, which reuses one table across all iterations of a sweep point.
RequestBatch sample_batch(const AliasTable& table, int64_t m_tilde, uint64_t seed);

}  // namespace csim
