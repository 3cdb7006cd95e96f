// Benchmark of the parallel integrator paths against the serial reference.
// Both paths must produce bitwise-identical results (work units fill fixed
// slots and the reduction order never changes); any difference is a bug and
// fails the run.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "linkvol/geometry.hpp"
#include "linkvol/kernels.hpp"
#include "linkvol/observables.hpp"
#include "linkvol/samples.hpp"

using namespace linkvol;

namespace {

struct Timing {
    double value = 0;
    double seconds = 0;
};

Timing best_of(int repeats, const std::function<double()>& f) {
    Timing t;
    t.seconds = 1e100;
    for (int i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        const double v = f();
        const double s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        t.value = v;
        t.seconds = std::min(t.seconds, s);
    }
    return t;
}

int compare(const char* label, const std::function<double(const ExecConfig&)>& run) {
    ExecConfig serial;
    serial.parallel = false;
    ExecConfig parallel;
    parallel.parallel = true;
    const Timing ts = best_of(3, [&] { return run(serial); });
    const Timing tp = best_of(3, [&] { return run(parallel); });
    const bool identical = ts.value == tp.value;
    std::printf("%-28s serial %8.1f ms   parallel %8.1f ms   speedup %5.2fx   %s\n",
                label, 1e3 * ts.seconds, 1e3 * tp.seconds, ts.seconds / tp.seconds,
                identical ? "bitwise-identical" : "MISMATCH");
    if (!identical) {
        std::printf("  serial   = %.17g\n  parallel = %.17g\n", ts.value, tp.value);
        return 1;
    }
    return 0;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

    int failures = 0;

    const SceneFile hopf = samples::scene_hopf_pair();
    const Hyperlink hh = hopf.hyperlink();
    const Kappa k32 = Kappa::make(32.0);
    failures += compare("crossing sum (kappa 32)", [&](const ExecConfig& exec) {
        return crossing_sum_kappa(hh.matter[0].loop, hh.geometric[0], k32, hopf.plane,
                                  {}, exec);
    });

    const SceneFile golden = samples::scene_golden_volume();
    const Hyperlink gh = golden.hyperlink();
    const Kappa k64 = Kappa::make(64.0);
    const Loop4 displaced = displace_loop(gh.matter[0].loop, gh.matter[0].frame, 0.3);
    const RegionPartition part =
        partition_region(golden.region(), gh, golden.tube_radius, golden.max_cell);
    failures += compare("cell integrals (kappa 64)", [&](const ExecConfig& exec) {
        double total = 0;
        for (const Cell& c : part.cells) {
            if (c.tag < 0) continue;
            total += volume_cell_integral(gh.matter[0].loop, displaced, c.box, k64,
                                          golden.plane, {}, exec);
        }
        return total;
    });

    return failures;
}
