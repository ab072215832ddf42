// Compares the OpenMP trial-parallel path against the serial reference path:
// identical tables are required, the timing difference is the payoff. --smoke
// runs a reduced workload and only checks equality, for use as a test.

#include <chrono>
#include <cstdio>
#include <string>

#include "vsa/experiments.hpp"
#include "vsa/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
auto timed(const char* label, Fn&& fn, double* out_seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = fn();
    *out_seconds = seconds_since(t0);
    std::printf("  %-28s %7.3f s\n", label, *out_seconds);
    return result;
}

}  // namespace

int main(int argc, char** argv) {
    const bool smoke = argc > 1 && std::string(argv[1]) == "--smoke";

#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp not available; both paths run serially\n");
#endif

    vsa::RetrievalConfig ret;
    ret.models = {vsa::ModelKind::HLB, vsa::ModelKind::MAP_B};
    ret.dims = smoke ? std::vector<int>{64} : std::vector<int>{64, 256};
    ret.pool_size = smoke ? 100 : 500;
    ret.rho_max = smoke ? 5 : 15;
    ret.trials = smoke ? 4 : 20;

    vsa::HeatmapConfig heat;
    heat.n_max = smoke ? 5 : 8;
    heat.rho_min = 2;
    heat.rho_max = smoke ? 10 : 30;
    heat.trials = smoke ? 10 : 50;

    bool all_equal = true;
    double ts = 0.0, tp = 0.0;

    std::printf("retrieval (%d dims, %d trials):\n", static_cast<int>(ret.dims.size()),
                ret.trials);
    ret.parallel = false;
    const auto ret_serial = timed("serial reference", [&] { return vsa::run_retrieval(ret); }, &ts);
    ret.parallel = true;
    const auto ret_parallel = timed("openmp", [&] { return vsa::run_retrieval(ret); }, &tp);
    const bool ret_same = vsa::table_equal(ret_serial.rows, ret_parallel.rows) &&
                          vsa::table_equal(ret_serial.auc, ret_parallel.auc);
    std::printf("  identical tables: %s, speedup %.2fx\n", ret_same ? "yes" : "NO", ts / tp);
    all_equal = all_equal && ret_same;

    std::printf("noise heatmap (n <= %d, %d trials):\n", heat.n_max, heat.trials);
    heat.parallel = false;
    const auto heat_serial =
        timed("serial reference", [&] { return vsa::run_noise_heatmap(heat); }, &ts);
    heat.parallel = true;
    const auto heat_parallel = timed("openmp", [&] { return vsa::run_noise_heatmap(heat); }, &tp);
    const bool heat_same =
        vsa::table_equal(vsa::grid_to_table(heat_serial.first),
                         vsa::grid_to_table(heat_parallel.first)) &&
        vsa::table_equal(vsa::grid_to_table(heat_serial.second),
                         vsa::grid_to_table(heat_parallel.second));
    std::printf("  identical tables: %s, speedup %.2fx\n", heat_same ? "yes" : "NO", ts / tp);
    all_equal = all_equal && heat_same;

    if (!all_equal) {
        std::printf("FAIL: serial and parallel paths disagree\n");
        return 1;
    }
    std::printf("serial and parallel paths agree bitwise\n");
    return 0;
}
