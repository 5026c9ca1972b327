#include "csim/placement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "csim/bounds.hpp"

namespace csim {

char setting_letter(Setting s) {
    switch (s) {
        case Setting::A: return 'A';
        case Setting::B: return 'B';
        case Setting::C: return 'C';
        case Setting::D: return 'D';
    }
    throw std::invalid_argument("setting: unknown enum value");
}

Setting setting_from_letter(char c) {
    switch (c) {
        case 'A': return Setting::A;
        case 'B': return Setting::B;
        case 'C': return Setting::C;
        case 'D': return Setting::D;
        default: throw std::invalid_argument(std::string("setting: unknown letter '") + c + "'");
    }
}

void validate(const SystemConfig& config) {
    if (config.n < 1) throw std::invalid_argument("config: n must be >= 1");
    if (config.m < 1) throw std::invalid_argument("config: m must be >= 1");
    if (config.m_tilde < 1) throw std::invalid_argument("config: m_tilde must be >= 1");
    if (config.k_tilde < 1) throw std::invalid_argument("config: k_tilde must be >= 1");
    if (!(config.b > 0.0) || !std::isfinite(config.b))
        throw std::invalid_argument("config: b must be positive and finite");
}

void validate(const PlacementPlan& plan) {
    if (plan.n < 1 || plan.m < 1 || plan.k_tilde < 1)
        throw std::invalid_argument("plan: n, m, k_tilde must be >= 1");
    if (plan.cache_contents.size() != static_cast<size_t>(plan.m))
        throw std::invalid_argument("plan: cache count does not match m");
    if (plan.replicas.size() != static_cast<size_t>(plan.n))
        throw std::invalid_argument("plan: replicas size does not match n");

    std::vector<int32_t> counted(static_cast<size_t>(plan.n), 0);
    std::vector<int64_t> seen(static_cast<size_t>(plan.n), -1);
    for (int64_t c = 0; c < plan.m; ++c) {
        const auto& contents = plan.cache_contents[static_cast<size_t>(c)];
        if (contents.size() > static_cast<size_t>(plan.k_tilde))
            throw std::invalid_argument("plan: cache exceeds k_tilde contents");
        for (int32_t id : contents) {
            if (id < 0 || id >= plan.n)
                throw std::invalid_argument("plan: content id out of range");
            if (seen[static_cast<size_t>(id)] == c)
                throw std::invalid_argument("plan: duplicate content on one cache");
            seen[static_cast<size_t>(id)] = c;
            ++counted[static_cast<size_t>(id)];
        }
    }
    if (counted != plan.replicas)
        throw std::invalid_argument("plan: replicas inconsistent with layout");
}

std::vector<int64_t> knapsack_weights(const PopularityModel& model, const SystemConfig& config) {
    validate(model);
    validate(config);
    if (model.n != config.n) throw std::invalid_argument("knapsack_weights: model/config n mismatch");
    if (config.m < 3)
        throw std::invalid_argument("knapsack_weights: m must be >= 3 (log(m)^2 tiers degenerate)");

    const double m = static_cast<double>(config.m);
    const double mt = static_cast<double>(config.m_tilde);
    const double log2m = std::log(m) * std::log(m);
    const double p_star = model.probs[0];  // probs are non-increasing

    std::vector<int64_t> w(model.probs.size());
    for (size_t i = 0; i < model.probs.size(); ++i) {
        const double p = model.probs[i];
        int64_t wi;
        if (p == p_star) {
            wi = config.m;
        } else if (p >= log2m / mt) {
            wi = static_cast<int64_t>(std::ceil((1.0 + p_star / 2.0) * mt * p));
        } else if (p >= 1.0 / (mt * log2m)) {
            wi = static_cast<int64_t>(std::ceil(4.0 * p_star * log2m));
        } else {
            wi = 1;
        }
        w[i] = std::min<int64_t>(std::max<int64_t>(wi, 1), config.m);
    }
    return w;
}

StorageDecision knapsack_storage_part1(const PopularityModel& model, const SystemConfig& config) {
    StorageDecision out;
    out.weights = knapsack_weights(model, config);

    const double mt = static_cast<double>(config.m_tilde);
    std::vector<KnapsackItem> items(out.weights.size());
    for (size_t i = 0; i < items.size(); ++i) {
        // 1 - (1-p)^m_tilde, evaluated in log space for small p
        const double value = -std::expm1(mt * std::log1p(-model.probs[i]));
        items[i] = {static_cast<int64_t>(i), value, static_cast<double>(out.weights[i])};
    }

    const double capacity = static_cast<double>(config.m) * static_cast<double>(config.k_tilde);
    out.solution = solve_fractional(items, capacity);

    out.replicas.resize(items.size());
    for (size_t i = 0; i < items.size(); ++i) {
        // Only fully selected contents are stored; the split item is dropped.
        out.replicas[i] = static_cast<int32_t>(std::floor(out.solution.x[i]) *
                                               static_cast<double>(out.weights[i]));
    }
    return out;
}

PlacementPlan knapsack_storage_part2(const std::vector<int32_t>& replicas,
                                     const SystemConfig& config) {
    validate(config);
    if (replicas.size() != static_cast<size_t>(config.n))
        throw std::invalid_argument("placement: replicas size does not match n");

    PlacementPlan plan;
    plan.n = config.n;
    plan.m = config.m;
    plan.k_tilde = config.k_tilde;
    plan.cache_contents.assign(static_cast<size_t>(config.m), {});
    plan.replicas.assign(static_cast<size_t>(config.n), 0);

    int64_t total = 0;
    for (size_t i = 0; i < replicas.size(); ++i) {
        if (replicas[i] < 0) throw std::invalid_argument("placement: negative copy count");
        total += std::min<int64_t>(replicas[i], config.m);
    }
    if (total > config.m * config.k_tilde)
        throw std::invalid_argument("placement: copies exceed cluster capacity");

    // Copies enumerated in increasing content order; rank r lands on cache
    // (r-1) mod m. A content's copies occupy consecutive ranks, and the count
    // is capped at m, so no cache sees the same content twice.
    int64_t rank = 0;
    for (size_t i = 0; i < replicas.size(); ++i) {
        const auto copies = std::min<int64_t>(replicas[i], config.m);
        plan.replicas[i] = static_cast<int32_t>(copies);
        for (int64_t c = 0; c < copies; ++c, ++rank)
            plan.cache_contents[static_cast<size_t>(rank % config.m)].push_back(
                static_cast<int32_t>(i));
    }
    return plan;
}

PlacementPlan knapsack_storage(const PopularityModel& model, const SystemConfig& config) {
    return knapsack_storage_part2(knapsack_storage_part1(model, config).replicas, config);
}

PlacementPlan proportional_storage(const PopularityModel& model, const SystemConfig& config) {
    validate(model);
    validate(config);
    if (model.n != config.n) throw std::invalid_argument("proportional: model/config n mismatch");
    if (config.k_tilde != 1)
        throw std::invalid_argument("proportional: defined for k_tilde = 1 only");

    const double m = static_cast<double>(config.m);
    // m = 1 gives log m = 0 and an infinite cutoff: every content is eligible.
    const double cutoff = std::pow(m / std::log(m), 1.0 / model.beta);

    std::vector<int32_t> replicas(static_cast<size_t>(config.n), 0);
    int64_t total = 0;
    for (int64_t i = 1; i <= config.n; ++i) {
        if (static_cast<double>(i) > cutoff) break;
        const auto c = static_cast<int64_t>(std::ceil(m * model.probs[static_cast<size_t>(i - 1)]));
        replicas[static_cast<size_t>(i - 1)] = static_cast<int32_t>(std::min<int64_t>(c, config.m));
        total += replicas[static_cast<size_t>(i - 1)];
    }
    // Trim overflow one copy at a time, least popular selected content first.
    for (int64_t i = config.n - 1; total > config.m && i >= 0; ) {
        if (replicas[static_cast<size_t>(i)] > 0) {
            --replicas[static_cast<size_t>(i)];
            --total;
        } else {
            --i;
        }
    }
    return knapsack_storage_part2(replicas, config);
}

PlacementPlan most_popular_storage(const PopularityModel& model, const SystemConfig& config) {
    validate(model);
    validate(config);
    if (model.n != config.n) throw std::invalid_argument("most_popular: model/config n mismatch");

    const int64_t stored = std::min(config.k_tilde, config.n);
    PlacementPlan plan;
    plan.n = config.n;
    plan.m = config.m;
    plan.k_tilde = config.k_tilde;
    plan.replicas.assign(static_cast<size_t>(config.n), 0);
    std::vector<int32_t> head(static_cast<size_t>(stored));
    for (int64_t i = 0; i < stored; ++i) {
        head[static_cast<size_t>(i)] = static_cast<int32_t>(i);
        plan.replicas[static_cast<size_t>(i)] = static_cast<int32_t>(config.m);
    }
    plan.cache_contents.assign(static_cast<size_t>(config.m), head);
    return plan;
}

PlacementPlan setting_c_optimal_storage(const PopularityModel& model, const SystemConfig& config) {
    validate(model);
    validate(config);
    if (model.n != config.n) throw std::invalid_argument("setting_c: model/config n mismatch");
    if (config.k_tilde != 1)
        throw std::invalid_argument("setting_c: defined for k_tilde = 1 only");

    const TailSelection sel = select_binomial_tails(model.probs, config.m, config.m_tilde);
    return knapsack_storage_part2(sel.copies, config);
}

std::string serialize_plan(const PlacementPlan& plan) {
    validate(plan);
    std::ostringstream out;
    out << plan.n << ' ' << plan.m << ' ' << plan.k_tilde << '\n';
    for (const auto& contents : plan.cache_contents) {
        for (size_t i = 0; i < contents.size(); ++i) {
            if (i) out << ' ';
            out << contents[i] + 1;  // files use 1-based content indices
        }
        out << '\n';
    }
    return out.str();
}

PlacementPlan parse_plan(const std::string& text) {
    std::istringstream in(text);
    PlacementPlan plan;
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("plan parse: empty input");
    {
        std::istringstream hs(header);
        if (!(hs >> plan.n >> plan.m >> plan.k_tilde))
            throw std::invalid_argument("plan parse: bad header, expected 'n m k_tilde'");
        std::string extra;
        if (hs >> extra) throw std::invalid_argument("plan parse: trailing header tokens");
    }
    if (plan.n < 1 || plan.m < 1 || plan.k_tilde < 1)
        throw std::invalid_argument("plan parse: header values must be >= 1");

    plan.replicas.assign(static_cast<size_t>(plan.n), 0);
    std::string line;
    for (int64_t c = 0; c < plan.m; ++c) {
        if (!std::getline(in, line))
            throw std::invalid_argument("plan parse: fewer cache lines than m");
        std::istringstream ls(line);
        std::vector<int32_t> contents;
        int64_t id;
        while (ls >> id) {
            if (id < 1 || id > plan.n)
                throw std::invalid_argument("plan parse: content index out of [1, n]");
            contents.push_back(static_cast<int32_t>(id - 1));
            ++plan.replicas[static_cast<size_t>(id - 1)];
        }
        if (!ls.eof()) throw std::invalid_argument("plan parse: non-numeric cache line");
        plan.cache_contents.push_back(std::move(contents));
    }
    while (std::getline(in, line))
        if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos)
            throw std::invalid_argument("plan parse: more cache lines than m");

    validate(plan);  // also rejects per-cache duplicates and k_tilde overflow
    return plan;
}

}  // namespace csim
