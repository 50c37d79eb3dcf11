// Compares the OpenMP table fill against the serial reference on a few
// representative configurations and checks that both produce the same table.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <omp.h>

#include "latwalk/walks.hpp"

using namespace latwalk;

namespace {

double time_fill(const StepSet& steps, const Region& region, int m, bool parallel,
                 std::vector<Int>& returns_out) {
    EnumerateOptions opts;
    opts.parallel = parallel;
    opts.retain_all = false;  // sliding window keeps memory flat for large m
    auto start = std::chrono::steady_clock::now();
    WalkTable t = enumerate_walks(steps, region, m, opts);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    returns_out = t.return_counts();
    return secs;
}

struct Config {
    const char* name;
    const char* steps;
    const char* region;
    int m;
};

}  // namespace

int main(int argc, char** argv) {
    int scale = argc > 1 ? std::atoi(argv[1]) : 1;
    const Config configs[] = {
        {"kreweras quarter plane", "-1,0;0,-1;1,1", "quadrant", 120 * scale},
        {"gessel quarter plane", "1,1;-1,-1;1,0;-1,0", "quadrant", 90 * scale},
        {"3d octant", "-1,-1,-1;1,0,0;0,1,0;0,0,1", "octant3d", 36 * scale},
    };

    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-24s %8s %10s %10s %8s  %s\n", "config", "m_max", "serial", "parallel",
                "speedup", "equal");
    bool all_equal = true;
    for (const auto& c : configs) {
        StepSet steps = parse_steps(c.steps);
        Region region = parse_region(c.region, steps.dim);
        std::vector<Int> serial_returns, parallel_returns;
        double ts = time_fill(steps, region, c.m, false, serial_returns);
        double tp = time_fill(steps, region, c.m, true, parallel_returns);
        bool equal = serial_returns == parallel_returns;
        all_equal = all_equal && equal;
        std::printf("%-24s %8d %9.3fs %9.3fs %7.2fx  %s\n", c.name, c.m, ts, tp, ts / tp,
                    equal ? "yes" : "NO");
    }
    return all_equal ? 0 : 1;
}
