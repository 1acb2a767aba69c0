// Compares the serial reference sweep against the OpenMP path on a
// fidelity_fd duration sweep (the expensive route: dense matrix work per
// point) and reports timings plus a result-equality check.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gwbec/sweep.hpp"

using namespace gwbec;

namespace {

Scenario bench_scenario(int points, int max_mode) {
    Scenario sc;
    sc.cavity = {1e-6, 1e-2, max_mode, std::nullopt};
    sc.amplitude = 1e-6;
    sc.duration_s = 0.05;
    sc.resonant_pair = {{1, 2}};
    sc.mode_n = 2;
    sc.mode_m = 1;
    sc.squeezing_r = 1.0;
    sc.num_probes = 1e14;
    sc.qfi_method = QfiMethod::fidelity_fd;
    sc.d_eps = 1e-6;
    sc.sweep = SweepSpec{SweepVariable::duration_s, 0.01, 0.4, points, SweepScale::linear};
    sc.output_path = "bench.csv";
    return sc;
}

double timed(const Scenario& sc, ExecutionMode mode, std::vector<SweepPoint>& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = run_sweep(sc, mode);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int points = argc > 1 ? std::atoi(argv[1]) : 64;
    const int max_mode = argc > 2 ? std::atoi(argv[2]) : 24;
    const Scenario sc = bench_scenario(points, max_mode);

    std::vector<SweepPoint> serial, parallel;
    const double t_serial = timed(sc, ExecutionMode::serial, serial);
    const double t_parallel = timed(sc, ExecutionMode::parallel, parallel);

    double max_diff = 0.0;
    for (size_t i = 0; i < serial.size(); ++i)
        max_diff = std::max(max_diff, std::abs(serial[i].record.qfi - parallel[i].record.qfi) /
                                          std::max(1.0, std::abs(serial[i].record.qfi)));

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("points=%d max_mode=%d threads=%d\n", points, max_mode, threads);
    std::printf("serial:   %8.3f s\n", t_serial);
    std::printf("parallel: %8.3f s  (speedup %.2fx)\n", t_parallel, t_serial / t_parallel);
    std::printf("max relative difference: %.3e %s\n", max_diff,
                max_diff == 0.0 ? "(bit-identical)" : "");
    return max_diff == 0.0 ? 0 : 1;
}
