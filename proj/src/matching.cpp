#include "csim/matching.hpp"

#include <algorithm>
#include <stdexcept>

#include "csim/rng.hpp"

namespace csim {

namespace {

// Dense CSR over contents that actually appear in the batch: request indices
// grouped by content, so pass two can walk each requested content once.
struct RequestIndex {
    std::vector<int32_t> offsets;  // size n+1
    std::vector<int32_t> requests;
};

RequestIndex group_requests(int32_t n, const RequestBatch& batch) {
    RequestIndex index;
    index.offsets.assign(static_cast<size_t>(n) + 1, 0);
    for (int32_t content : batch.requests) {
        if (content < 0 || content >= n) throw std::invalid_argument("request out of range");
        ++index.offsets[static_cast<size_t>(content) + 1];
    }
    for (size_t i = 1; i < index.offsets.size(); ++i) index.offsets[i] += index.offsets[i - 1];
    index.requests.resize(batch.requests.size());
    std::vector<int32_t> cursor(index.offsets.begin(), index.offsets.end() - 1);
    for (size_t r = 0; r < batch.requests.size(); ++r) {
        int32_t content = batch.requests[r];
        index.requests[static_cast<size_t>(cursor[static_cast<size_t>(content)]++)] =
            static_cast<int32_t>(r);
    }
    return index;
}

}  // namespace

MatchOutcome match_least_popular(const PlacementPlan& plan, const RequestBatch& batch,
                                 uint64_t seed, MatchOptions options) {
    validate(plan);
    if (batch.histogram.size() != static_cast<size_t>(plan.n))
        throw std::invalid_argument("batch histogram does not match plan size");

    RequestIndex index = group_requests(plan.n, batch);

    // Holder lists per content, built from the cache layout.
    std::vector<int32_t> holder_offsets(static_cast<size_t>(plan.n) + 1, 0);
    for (const auto& contents : plan.cache_contents)
        for (int32_t content : contents) ++holder_offsets[static_cast<size_t>(content) + 1];
    for (size_t i = 1; i < holder_offsets.size(); ++i) holder_offsets[i] += holder_offsets[i - 1];
    std::vector<int32_t> holders(static_cast<size_t>(holder_offsets.back()));
    {
        std::vector<int32_t> cursor(holder_offsets.begin(), holder_offsets.end() - 1);
        for (size_t cache = 0; cache < plan.cache_contents.size(); ++cache)
            for (int32_t content : plan.cache_contents[cache])
                holders[static_cast<size_t>(cursor[static_cast<size_t>(content)]++)] =
                    static_cast<int32_t>(cache);
    }

    MatchOutcome outcome;
    outcome.assignment.assign(plan.cache_contents.size(), -1);
    std::vector<char> idle(plan.cache_contents.size(), 1);
    Xoshiro256ss rng(seed);
    std::vector<int32_t> candidates;

    // Least popular first: popularity is non-increasing in content id, so the
    // scan runs from content n-1 down to 0.
    for (int32_t content = plan.n - 1; content >= 0; --content) {
        int32_t req_lo = index.offsets[static_cast<size_t>(content)];
        int32_t req_hi = index.offsets[static_cast<size_t>(content) + 1];
        int32_t demand = req_hi - req_lo;
        if (demand == 0) continue;

        candidates.clear();
        int32_t h_lo = holder_offsets[static_cast<size_t>(content)];
        int32_t h_hi = holder_offsets[static_cast<size_t>(content) + 1];
        for (int32_t h = h_lo; h < h_hi; ++h)
            if (idle[static_cast<size_t>(holders[static_cast<size_t>(h)])])
                candidates.push_back(holders[static_cast<size_t>(h)]);

        int32_t take;
        if (demand <= static_cast<int32_t>(candidates.size())) {
            take = demand;
        } else if (options.allow_partial) {
            take = static_cast<int32_t>(candidates.size());
        } else {
            outcome.skipped.push_back(content);
            continue;
        }

        // Uniform subset of `take` idle holders via partial Fisher-Yates.
        for (int32_t t = 0; t < take; ++t) {
            uint64_t span = candidates.size() - static_cast<size_t>(t);
            size_t pick = static_cast<size_t>(t) + static_cast<size_t>(rng.uniform_below(span));
            std::swap(candidates[static_cast<size_t>(t)], candidates[pick]);
            int32_t cache = candidates[static_cast<size_t>(t)];
            outcome.assignment[static_cast<size_t>(cache)] =
                index.requests[static_cast<size_t>(req_lo + t)];
            idle[static_cast<size_t>(cache)] = 0;
        }
        outcome.served += take;
    }

    // Unserved requests in batch order.
    std::vector<char> request_served(batch.requests.size(), 0);
    for (int32_t req : outcome.assignment)
        if (req >= 0) request_served[static_cast<size_t>(req)] = 1;
    std::vector<char> distinct_seen(static_cast<size_t>(plan.n), 0);
    for (size_t r = 0; r < batch.requests.size(); ++r) {
        if (request_served[r]) continue;
        outcome.unserved.push_back(static_cast<int32_t>(r));
        int32_t content = batch.requests[r];
        if (!distinct_seen[static_cast<size_t>(content)]) {
            distinct_seen[static_cast<size_t>(content)] = 1;
            ++outcome.unserved_distinct;
        }
    }
    std::sort(outcome.skipped.begin(), outcome.skipped.end());
    return outcome;
}

double rate_setting_a(const MatchOutcome& outcome, double b) {
    return b * static_cast<double>(outcome.unserved_distinct);
}

double rate_setting_c(const MatchOutcome& outcome, double b) {
    return b * static_cast<double>(outcome.unserved.size());
}

}  // namespace csim
