#pragma once

#include <cstdint>
#include <vector>

#include "csim/placement.hpp"
#include "csim/popularity.hpp"

namespace csim {

struct MatchOptions {
    // Default is all-or-nothing: a content whose demand exceeds its idle
    // holders is skipped entirely. Partial mode instead serves as many of its
    // requests as there are idle holders, in batch order.
    bool allow_partial = false;
};

struct MatchOutcome {
    std::vector<int32_t> assignment;  // per cache: request index served, or -1
    std::vector<int32_t> unserved;    // unserved request indices, batch order
    std::vector<int32_t> skipped;     // contents skipped all-or-nothing (0-based)
    int64_t served = 0;
    int64_t unserved_distinct = 0;    // distinct contents among unserved requests
};

// Greedy matching, least popular requested content first. Each request needs
// an idle cache holding its content; candidates are chosen uniformly at
// random under the slot seed. Two passes over requests plus one over the
// layout: O(n + m_tilde + m k_tilde).
MatchOutcome match_least_popular(const PlacementPlan& plan, const RequestBatch& batch,
                                 uint64_t seed, MatchOptions options = {});

double rate_setting_a(const MatchOutcome& outcome, double b);  // b * distinct unserved contents
double rate_setting_c(const MatchOutcome& outcome, double b);  // b * unserved requests

}  // namespace csim
