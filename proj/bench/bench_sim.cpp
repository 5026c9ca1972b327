// Times the parallel Monte Carlo engine against the serial reference on a
// few sweep shapes and checks the two produce bit-identical rate vectors.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "csim/sim.hpp"

namespace {

using namespace csim;

struct Case {
    const char* label;
    int64_t n, m, k_tilde, iterations;
    double beta;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int64_t iter_scale = 1;
    if (argc > 1) iter_scale = std::strtoll(argv[1], nullptr, 10);

    const std::vector<Case> cases = {
        {"n=1000 m=100 k=3", 1000, 100, 3, 2000, 1.2},
        {"n=1000 m=200 k=7", 1000, 200, 7, 2000, 1.5},
        {"n=5000 m=1000 k=3", 5000, 1000, 3, 500, 1.2},
    };

#ifdef _OPENMP
    std::printf("max threads: %d\n", omp_get_max_threads());
#else
    std::printf("compiled without thread support; both engines run serially\n");
#endif

    int mismatches = 0;
    for (const Case& c : cases) {
        SystemConfig config;
        config.n = c.n;
        config.m = c.m;
        config.m_tilde = c.m;
        config.k_tilde = c.k_tilde;

        const PopularityModel model = build_zipf(c.n, c.beta);
        const PlacementPlan plan = build_placement(StoragePolicy::knapsack, model, config);
        const int64_t iterations = c.iterations * iter_scale;

        auto t0 = std::chrono::steady_clock::now();
        const std::vector<double> serial =
            slot_rates_serial(plan, model, config, iterations, 42, 0);
        const double t_serial = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        const std::vector<double> parallel = slot_rates(plan, model, config, iterations, 42, 0);
        const double t_parallel = seconds_since(t0);

        const bool identical = serial == parallel;
        if (!identical) ++mismatches;
        std::printf("%-22s iters=%-6lld serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n",
                    c.label, static_cast<long long>(iterations), t_serial, t_parallel,
                    t_parallel > 0 ? t_serial / t_parallel : 0.0,
                    identical ? "identical" : "MISMATCH");
    }
    return mismatches == 0 ? 0 : 1;
}
