#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "csim/placement.hpp"
#include "csim/popularity.hpp"

namespace csim {

struct BoundReport {
    std::string name;                 // which bound produced this
    double value = 0.0;               // transmission-rate lower/upper bound, >= 0
    int64_t window_lo = 0;            // no-coding only: 1-based selected index range
    int64_t window_hi = 0;
    std::vector<std::pair<std::string, double>> detail;  // labeled intermediates
};

// Exact P(Binomial(m_tilde, p) >= j). Stable for m_tilde up to 1e6: the
// smaller tail is summed with a term-ratio recurrence started from a
// log-space binomial term, then complemented if needed.
double binomial_tail(int64_t m_tilde, double p, int64_t j);

// Per-content density of the storage relaxation behind the no-coding bound:
// (1-(1-p_i)^m_tilde) / (m_tilde p_i) where a copy serves m_tilde p_i >= 1
// expected requests, the plain value otherwise. Unimodal in i for power laws.
std::vector<double> ratio_profile(const PopularityModel& model, const SystemConfig& config);

// Lower bound on the expected server rate of any replication + matching
// scheme without coding: total achievable value minus the fractional
// knapsack optimum with weights max(m_tilde p_i, 1) and capacity m*k_tilde
// (all scaled by b). window covers the contents with x_i > 0.
BoundReport converse_no_coding(const PopularityModel& model, const SystemConfig& config);

// Order-level information-theoretic floor max(0, (n - m k_tilde b) m / n^beta);
// pure power law with beta > 1 only (shift must be 0).
BoundReport info_theoretic_bound(const PopularityModel& model, const SystemConfig& config);

// Coded-broadcast rate upper bound: popular prefix n3 (largest i with
// m k_tilde p_i >= 1) served from caches, remainder by the better of plain
// multicast of the tail demand or a coded transmission over the leftover
// storage. detail carries n3.
BoundReport setting_b_coded_rate(const PopularityModel& model, const SystemConfig& config);

// Uncoded reference for the same setting: every cache stores 1..k_tilde and
// the server multicasts the expected tail demand sum_{i>k_tilde} m p_i.
BoundReport setting_b_uncoded_rate(const PopularityModel& model, const SystemConfig& config);

// Greedy selection of the m largest P(Binomial(m_tilde, p_i) >= j) candidate
// pairs (ties: lower i, then lower j); copies[i] counts selected pairs per
// content. Shared by the unicast bound and the matching storage policy.
// m = 0 is allowed and selects nothing.
struct TailSelection {
    std::vector<int32_t> copies;
    double total = 0.0;  // sum of selected tail probabilities
};
TailSelection select_binomial_tails(const std::vector<double>& probs, int64_t m, int64_t m_tilde);

// Unicast setting: expected unserved demand m_tilde minus the greedy total;
// k_tilde must be 1.
BoundReport setting_c_bound(const PopularityModel& model, const SystemConfig& config);

// Asymptotic storage/catalog relation for the regime table. epsilon applies
// to the polynomial cases and must satisfy 0 < epsilon <= (2-beta)(beta-1)/beta.
enum class StorageGap {
    deficit_const,   // c - k_tilde = Omega(1)
    deficit_poly,    // c - k_tilde = Theta(n^-eps)
    near_tight,      // |k_tilde - c| = O(n^-eps_tilde)
    surplus_poly,    // k_tilde - c = Theta(n^-eps)
    surplus_const,   // k_tilde - c >= 1 - o(n^(1/beta))
};

struct RegimeDescriptor {
    StorageGap gap;
    double epsilon = 0.0;
};

struct RegimeReport {
    int case_id = 0;                  // 1..5
    double exponent = 0.0;            // rate grows as n^exponent (cases 1..4)
    bool converse_zero = false;       // case 5: lower bound identically 0
    bool achievable_constant = false; // case 5: policy rate Theta(1)
    double eps_tilde = 0.0;           // (2-beta)(beta-1)/beta
};

// Classifies the five regimes for 1 < beta < 2. The inputs are asymptotic
// descriptors, not finite instances.
RegimeReport regime_classify(const RegimeDescriptor& descriptor, double beta);

}  // namespace csim
