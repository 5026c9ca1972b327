#include "csim/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace csim {

namespace {

// Neumaier-compensated accumulator; order-stable summation for bound values.
struct Accum {
    double sum = 0.0, comp = 0.0;
    void add(double term) {
        const double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

// Binomial pmf by the saddle-point method (Loader's dbinom): full relative
// precision even at m ~ 1e6, where a plain lgamma difference loses ~8 digits
// to cancellation.
double stirlerr(double n) {
    // log(n!) - log(sqrt(2*pi*n) * (n/e)^n)
    if (n <= 15.5) {
        static const double half_log_2pi = 0.918938533204672741780329736406;
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - half_log_2pi;
    }
    const double nn = n * n;
    static const double s0 = 1.0 / 12.0, s1 = 1.0 / 360.0, s2 = 1.0 / 1260.0,
                        s3 = 1.0 / 1680.0, s4 = 1.0 / 1188.0;
    if (n > 500.0) return (s0 - s1 / nn) / n;
    if (n > 80.0) return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35.0) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x*log(x/np) + np - x without cancellation when x is near np.
double bd0(double x, double np) {
    if (std::abs(x - np) < 0.1 * (x + np)) {
        const double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2.0 * x * v;
        const double v2 = v * v;
        for (int j = 1;; ++j) {
            ej *= v2;
            const double s1 = s + ej / (2.0 * j + 1.0);
            if (s1 == s) return s1;
            s = s1;
        }
    }
    return x * std::log(x / np) + np - x;
}

double binomial_pmf(int64_t m, double p, int64_t k) {
    const double dm = static_cast<double>(m);
    const double dk = static_cast<double>(k);
    if (k == 0) return std::exp(dm * std::log1p(-p));
    if (k == m) return std::exp(dm * std::log(p));
    const double lc = stirlerr(dm) - stirlerr(dk) - stirlerr(dm - dk) -
                      bd0(dk, dm * p) - bd0(dm - dk, dm * (1.0 - p));
    static const double two_pi = 6.283185307179586476925286766559;
    return std::exp(lc) * std::sqrt(dm / (two_pi * dk * (dm - dk)));
}

}  // namespace

double binomial_tail(int64_t m_tilde, double p, int64_t j) {
    if (m_tilde < 1) throw std::invalid_argument("binomial_tail: m_tilde must be >= 1");
    if (!(p >= 0.0) || !(p <= 1.0)) throw std::invalid_argument("binomial_tail: p outside [0,1]");
    if (j <= 0) return 1.0;
    if (j > m_tilde) return 0.0;
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;

    const double mean = static_cast<double>(m_tilde) * p;
    const double ratio = p / (1.0 - p);
    if (static_cast<double>(j) > mean) {
        // Upper tail is the smaller side: sum pmf(j), pmf(j+1), ... until the
        // terms stop mattering. Terms decay geometrically past the mode.
        double term = binomial_pmf(m_tilde, p, j);
        Accum acc;
        acc.add(term);
        for (int64_t k = j + 1; k <= m_tilde; ++k) {
            term *= static_cast<double>(m_tilde - k + 1) / static_cast<double>(k) * ratio;
            acc.add(term);
            if (static_cast<double>(k) > mean && term < acc.total() * 1e-18) break;
        }
        return std::min(acc.total(), 1.0);
    }
    // Lower tail P(X <= j-1) is smaller; complement it. Summed downward from
    // k = j-1, with the same early exit below the mode.
    double term = binomial_pmf(m_tilde, p, j - 1);
    Accum acc;
    acc.add(term);
    for (int64_t k = j - 1; k >= 1; --k) {
        term *= static_cast<double>(k) / static_cast<double>(m_tilde - k + 1) / ratio;
        acc.add(term);
        if (static_cast<double>(k) < mean && term < acc.total() * 1e-18) break;
    }
    return std::max(1.0 - acc.total(), 0.0);
}

std::vector<double> ratio_profile(const PopularityModel& model, const SystemConfig& config) {
    validate(model);
    validate(config);
    if (model.n != config.n) throw std::invalid_argument("ratio_profile: model/config n mismatch");

    const double mt = static_cast<double>(config.m_tilde);
    std::vector<double> r(model.probs.size());
    for (size_t i = 0; i < r.size(); ++i) {
        const double p = model.probs[i];
        const double value = -std::expm1(mt * std::log1p(-p));
        r[i] = mt * p >= 1.0 ? value / (mt * p) : value;
    }
    return r;
}

BoundReport converse_no_coding(const PopularityModel& model, const SystemConfig& config) {
    validate(model);
    validate(config);
    if (model.n != config.n) throw std::invalid_argument("converse: model/config n mismatch");

    const double mt = static_cast<double>(config.m_tilde);
    const double b = config.b;
    std::vector<KnapsackItem> items(model.probs.size());
    Accum total_value;
    for (size_t i = 0; i < items.size(); ++i) {
        const double p = model.probs[i];
        const double value = b * -std::expm1(mt * std::log1p(-p));
        items[i] = {static_cast<int64_t>(i), value, b * std::max(mt * p, 1.0)};
        total_value.add(value);
    }
    const double capacity =
        static_cast<double>(config.m) * static_cast<double>(config.k_tilde) * b;
    const KnapsackSolution sol = solve_fractional(items, capacity);

    BoundReport report;
    report.name = "no-coding";
    report.value = positive_part(total_value.total() - sol.objective);
    int64_t selected = 0;
    for (size_t i = 0; i < sol.x.size(); ++i) {
        if (sol.x[i] > 0.0) {
            if (report.window_lo == 0) report.window_lo = static_cast<int64_t>(i) + 1;
            report.window_hi = static_cast<int64_t>(i) + 1;
            ++selected;
        }
    }
    report.detail.emplace_back("selected_count", static_cast<double>(selected));
    if (model.shift == 0.0 && model.beta > 0.0)
        report.detail.emplace_back("i_tilde",
                                   std::pow(mt * model.probs[0], 1.0 / model.beta));
    report.detail.emplace_back("knapsack_optimum", sol.objective);
    report.detail.emplace_back("total_value", total_value.total());
    return report;
}

BoundReport info_theoretic_bound(const PopularityModel& model, const SystemConfig& config) {
    validate(model);
    validate(config);
    if (model.n != config.n) throw std::invalid_argument("info bound: model/config n mismatch");
    if (model.shift != 0.0)
        throw std::invalid_argument("info bound: defined for the pure power law (shift = 0)");
    if (!(model.beta > 1.0))
        throw std::invalid_argument("info bound: requires beta > 1");

    const double n = static_cast<double>(config.n);
    const double storage =
        static_cast<double>(config.m) * static_cast<double>(config.k_tilde) * config.b;
    BoundReport report;
    report.name = "info";
    report.value = positive_part((n - storage) * static_cast<double>(config.m) /
                                 std::pow(n, model.beta));
    return report;
}

BoundReport setting_b_coded_rate(const PopularityModel& model, const SystemConfig& config) {
    validate(model);
    validate(config);
    if (model.n != config.n) throw std::invalid_argument("setting B: model/config n mismatch");

    const double mk = static_cast<double>(config.m) * static_cast<double>(config.k_tilde);
    int64_t n3 = 0;  // largest popular prefix a cluster copy can cover
    for (int64_t i = 1; i <= config.n; ++i) {
        if (mk * model.probs[static_cast<size_t>(i - 1)] >= 1.0) n3 = i;
        else break;  // probs non-increasing
    }

    Accum tail;
    for (size_t i = model.probs.size(); i-- > static_cast<size_t>(n3);)
        tail.add(static_cast<double>(config.m) * model.probs[i]);

    const double kt = static_cast<double>(config.k_tilde);
    const double dn3 = static_cast<double>(n3);
    const double leftover = positive_part(kt - dn3);
    const double coded = leftover > 0.0
        ? positive_part((static_cast<double>(config.n) - dn3) / leftover - 1.0)
        : std::numeric_limits<double>::infinity();

    BoundReport report;
    report.name = "setting-b-coded";
    report.value = config.b * (positive_part(dn3 / kt - 1.0) + std::min(tail.total(), coded));
    report.detail.emplace_back("n3", dn3);
    report.detail.emplace_back("tail_demand", tail.total());
    return report;
}

BoundReport setting_b_uncoded_rate(const PopularityModel& model, const SystemConfig& config) {
    validate(model);
    validate(config);
    if (model.n != config.n) throw std::invalid_argument("setting B: model/config n mismatch");

    Accum tail;
    for (size_t i = model.probs.size(); i-- > 0;) {
        if (static_cast<int64_t>(i) < config.k_tilde) break;
        tail.add(static_cast<double>(config.m) * model.probs[i]);
    }
    BoundReport report;
    report.name = "setting-b-uncoded";
    report.value = config.b * tail.total();
    return report;
}

TailSelection select_binomial_tails(const std::vector<double>& probs, int64_t m,
                                    int64_t m_tilde) {
    if (m < 0) throw std::invalid_argument("tail selection: m must be >= 0");
    if (m_tilde < 1) throw std::invalid_argument("tail selection: m_tilde must be >= 1");

    TailSelection sel;
    sel.copies.assign(probs.size(), 0);

    // P(Bin >= j) is non-increasing in j, so each content exposes candidates
    // in decreasing order; a k-way merge yields the global top m. Ties prefer
    // the lower content index, then the lower copy rank.
    struct Cand {
        double v;
        int32_t i;
        int32_t j;
    };
    auto worse = [](const Cand& a, const Cand& b) {
        if (a.v != b.v) return a.v < b.v;
        if (a.i != b.i) return a.i > b.i;
        return a.j > b.j;
    };
    std::priority_queue<Cand, std::vector<Cand>, decltype(worse)> heap(worse);
    for (size_t i = 0; i < probs.size(); ++i)
        heap.push({binomial_tail(m_tilde, probs[i], 1), static_cast<int32_t>(i), 1});

    Accum total;
    const int64_t want = std::min<int64_t>(m, static_cast<int64_t>(probs.size()) * m_tilde);
    for (int64_t taken = 0; taken < want; ++taken) {
        const Cand top = heap.top();
        heap.pop();
        ++sel.copies[static_cast<size_t>(top.i)];
        total.add(top.v);
        if (top.j < m_tilde)
            heap.push({binomial_tail(m_tilde, probs[static_cast<size_t>(top.i)], top.j + 1),
                       top.i, top.j + 1});
    }
    sel.total = total.total();
    return sel;
}

BoundReport setting_c_bound(const PopularityModel& model, const SystemConfig& config) {
    validate(model);
    validate(config);
    if (model.n != config.n) throw std::invalid_argument("setting C: model/config n mismatch");
    if (config.k_tilde != 1)
        throw std::invalid_argument("setting C: bound defined for k_tilde = 1 only");

    const TailSelection sel = select_binomial_tails(model.probs, config.m, config.m_tilde);
    BoundReport report;
    report.name = "setting-c";
    report.value = config.b * positive_part(static_cast<double>(config.m_tilde) - sel.total);
    report.detail.emplace_back("served_optimum", sel.total);
    return report;
}

RegimeReport regime_classify(const RegimeDescriptor& descriptor, double beta) {
    if (!(beta > 1.0) || !(beta < 2.0))
        throw std::invalid_argument("regime: supported for 1 < beta < 2 only");

    RegimeReport report;
    report.eps_tilde = (2.0 - beta) * (beta - 1.0) / beta;

    const bool needs_eps = descriptor.gap == StorageGap::deficit_poly ||
                           descriptor.gap == StorageGap::surplus_poly;
    if (needs_eps &&
        (!(descriptor.epsilon > 0.0) || descriptor.epsilon > report.eps_tilde))
        throw std::invalid_argument("regime: epsilon must lie in (0, (2-beta)(beta-1)/beta]");

    switch (descriptor.gap) {
        case StorageGap::deficit_const:
            report.case_id = 1;
            report.exponent = 2.0 - beta;
            break;
        case StorageGap::deficit_poly:
            report.case_id = 2;
            report.exponent = 2.0 - beta - descriptor.epsilon;
            break;
        case StorageGap::near_tight:
            report.case_id = 3;
            report.exponent = (2.0 - beta) / beta;
            break;
        case StorageGap::surplus_poly:
            report.case_id = 4;
            report.exponent = descriptor.epsilon / (beta - 1.0);
            break;
        case StorageGap::surplus_const:
            report.case_id = 5;
            report.exponent = 0.0;
            report.converse_zero = true;
            report.achievable_constant = true;
            break;
    }
    return report;
}

}  // namespace csim
