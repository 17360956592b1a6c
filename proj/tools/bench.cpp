// bench.cpp — Serial versus OpenMP timing for the data-parallel kernels:
// the Poisson counting loop and a master-equation hold scan.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "transim/config.hpp"
#include "transim/counting.hpp"
#include "transim/parallel.hpp"
#include "transim/protocol.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class F>
double time_once(F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return seconds_since(start);
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("TRANSDUCE_SIM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) transim::set_threads(cap);
    }
    const std::uint64_t trials = argc > 1 ? static_cast<std::uint64_t>(std::atof(argv[1])) : 100000000ull;

    std::printf("threads: %d\n\n", transim::max_threads());
    std::printf("%-34s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]", "speedup");

    for (const double mean : {1.0e-5, 1.0e-2}) {
        std::uint64_t serial_total = 0, parallel_total = 0;
        const double t_serial =
            time_once([&] { serial_total = transim::count_trials_serial(mean, trials, 7, 0); });
        const double t_parallel =
            time_once([&] { parallel_total = transim::count_trials_parallel(mean, trials, 7, 0); });
        if (serial_total != parallel_total) {
            std::fprintf(stderr, "FATAL: kernel mismatch (%llu vs %llu)\n",
                         static_cast<unsigned long long>(serial_total),
                         static_cast<unsigned long long>(parallel_total));
            return 1;
        }
        const std::string label = "poisson counts, mean " + std::to_string(mean);
        std::printf("%-34s %12.3f %12.3f %8.2fx\n", label.c_str(), t_serial, t_parallel,
                    t_serial / t_parallel);
    }

    const transim::Profile profile = transim::load_profile("paper_device");
    std::vector<double> holds;
    for (double h = 4e-9; h <= 400e-9; h += 4e-9) holds.push_back(h);

    double scan_serial_sum = 0.0, scan_parallel_sum = 0.0;
    const double t_scan_serial = time_once([&] {
        for (double h : holds) {
            scan_serial_sum += transim::stark_swap(profile.device, profile.sequence, h, profile.sim).n_m_after;
        }
    });
    const double t_scan_parallel = time_once([&] {
        const auto scan = transim::vacuum_rabi_scan(profile.device, profile.sequence, holds, profile.sim);
        for (double v : scan.n_m) scan_parallel_sum += v;
    });
    if (std::abs(scan_serial_sum - scan_parallel_sum) > 1e-9) {
        std::fprintf(stderr, "FATAL: scan mismatch (%.12f vs %.12f)\n", scan_serial_sum, scan_parallel_sum);
        return 1;
    }
    std::printf("%-34s %12.3f %12.3f %8.2fx\n", "vacuum-Rabi hold scan", t_scan_serial, t_scan_parallel,
                t_scan_serial / t_scan_parallel);
    return 0;
}
