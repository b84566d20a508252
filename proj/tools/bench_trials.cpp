// Benchmark: serial reference vs OpenMP trial evaluation for the property
// campaigns, plus a consistency assertion that both produce the same report.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nlpm/checkers.hpp"
#include "nlpm/json_io.hpp"

using namespace nlpm;
using clk = std::chrono::steady_clock;

namespace {

double run_ms(const MapSpec& m, const std::string& property, Exec exec, long trials,
              std::string* fingerprint) {
    CheckOptions opt;
    opt.trials = trials;
    opt.seed = 1;
    opt.exec = exec;
    const auto t0 = clk::now();
    const PropertyReport r = run_property(m, property, opt);
    const auto t1 = clk::now();
    *fingerprint = report_to_json(r).dump();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    long trials = 2000;
    int dim = 6;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--trials" && i + 1 < argc) trials = std::atol(argv[++i]);
        else if (arg == "--dim" && i + 1 < argc) dim = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: bench_trials [--trials N] [--dim D]\n");
            return 1;
        }
    }

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled, parallel path falls back to serial\n");
#endif
    std::printf("%-18s %-14s %12s %12s %9s\n", "map", "property", "serial ms", "parallel ms",
                "speedup");

    int mismatches = 0;
    const std::pair<const char*, const char*> jobs[] = {
        {"calc_sqrt", "monotone"},
        {"range_projection", "supercongruent"},
        {"calc_power_05", "concave"},
        {"range_projection", "normal"},
    };
    for (const auto& [map_name, property] : jobs) {
        const MapSpec m = make_map(map_name, dim);
        std::string fp_serial, fp_parallel;
        const double ms_serial = run_ms(m, property, Exec::serial, trials, &fp_serial);
        const double ms_parallel = run_ms(m, property, Exec::parallel, trials, &fp_parallel);
        if (fp_serial != fp_parallel) ++mismatches;
        std::printf("%-18s %-14s %12.1f %12.1f %8.2fx\n", map_name, property, ms_serial,
                    ms_parallel, ms_serial / ms_parallel);
    }
    if (mismatches > 0) {
        std::fprintf(stderr, "FAIL: %d report mismatches between serial and parallel paths\n",
                     mismatches);
        return 1;
    }
    std::printf("reports identical across both paths\n");
    return 0;
}
