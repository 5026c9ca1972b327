#include "csim/popularity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "csim/tolerances.hpp"

namespace csim {

PopularityModel build_zipf_mandelbrot(int64_t n, double beta, double shift) {
    if (n < 1) throw std::invalid_argument("popularity: n must be >= 1");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("popularity: beta must be positive and finite");
    if (!(shift >= 0.0) || !std::isfinite(shift))
        throw std::invalid_argument("popularity: shift must be >= 0 and finite");

    PopularityModel model;
    model.n = n;
    model.beta = beta;
    model.shift = shift;
    model.probs.resize(static_cast<size_t>(n));

    // Terms grow toward small i, so the normalizer is accumulated from i = n
    // down to 1: summing small-to-large keeps the rounding error flat in n.
    double norm = 0.0;
    for (int64_t i = n; i >= 1; --i)
        norm += std::pow(static_cast<double>(i) + shift, -beta);
    for (int64_t i = 1; i <= n; ++i)
        model.probs[static_cast<size_t>(i - 1)] =
            std::pow(static_cast<double>(i) + shift, -beta) / norm;
    return model;
}

PopularityModel build_zipf(int64_t n, double beta) {
    return build_zipf_mandelbrot(n, beta, 0.0);
}

void validate(const PopularityModel& model) {
    if (model.n < 1 || model.probs.size() != static_cast<size_t>(model.n))
        throw std::invalid_argument("popularity: probs size does not match n");
    double sum = 0.0;
    for (size_t i = model.probs.size(); i-- > 0;) {  // small-to-large again
        const double p = model.probs[i];
        if (!(p >= 0.0) || p > 1.0)
            throw std::invalid_argument("popularity: probs out of [0,1]");
        if (i + 1 < model.probs.size() && model.probs[i + 1] > p)
            throw std::invalid_argument("popularity: probs not non-increasing");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kTol.prob_sum_abs)
        throw std::invalid_argument("popularity: probs sum to " + std::to_string(sum));
}

AliasTable::AliasTable(const std::vector<double>& probs) {
    const size_t n = probs.size();
    if (n == 0) throw std::invalid_argument("alias table: empty distribution");
    cut_.assign(n, 1.0);
    alias_.resize(n);
    for (size_t i = 0; i < n; ++i) alias_[i] = static_cast<int32_t>(i);

    // Vose's method: split buckets into under/over-full and pair them off.
    std::vector<double> scaled(n);
    std::vector<int32_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        scaled[i] = probs[i] * static_cast<double>(n);
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<int32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        const int32_t s = small.back();
        const int32_t l = large.back();
        small.pop_back();
        large.pop_back();
        cut_[static_cast<size_t>(s)] = scaled[static_cast<size_t>(s)];
        alias_[static_cast<size_t>(s)] = l;
        scaled[static_cast<size_t>(l)] -= 1.0 - scaled[static_cast<size_t>(s)];
        (scaled[static_cast<size_t>(l)] < 1.0 ? small : large).push_back(l);
    }
    // Leftovers are within rounding of exactly full; they keep cut = 1.
}

int32_t AliasTable::draw(Xoshiro256ss& rng) const {
    const auto bucket = static_cast<size_t>(rng.uniform_below(cut_.size()));
    const double coin = rng.uniform01();
    return coin < cut_[bucket] ? static_cast<int32_t>(bucket) : alias_[bucket];
}

RequestBatch sample_batch(const PopularityModel& model, int64_t m_tilde, uint64_t seed) {
    validate(model);
    return sample_batch(AliasTable(model.probs), m_tilde, seed);
}

RequestBatch sample_batch(const AliasTable& table, int64_t m_tilde, uint64_t seed) {
    if (m_tilde < 1) throw std::invalid_argument("sample_batch: m_tilde must be >= 1");

    Xoshiro256ss rng(seed);
    RequestBatch batch;
    batch.requests.resize(static_cast<size_t>(m_tilde));
    batch.histogram.assign(static_cast<size_t>(table.size()), 0);
    for (auto& r : batch.requests) {
        r = table.draw(rng);
        ++batch.histogram[static_cast<size_t>(r)];
    }
    return batch;
}

}  // namespace csim
