// Times the metric sweep over a dense sample lattice, serial reference
// against the OpenMP kernel, and confirms the outputs agree bitwise.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "heavenly/ah.hpp"

using Clock = std::chrono::steady_clock;

static double run_ms(std::vector<heavenly::SweepRow> (*fn)(const heavenly::SweepGrid&),
                     const heavenly::SweepGrid& grid, std::vector<heavenly::SweepRow>& rows) {
    auto t0 = Clock::now();
    rows = fn(grid);
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main() {
    heavenly::SweepGrid grid;
    grid.k_min = 0.05;
    grid.k_max = 0.8;
    grid.nk = 160;
    grid.ntheta = 96;
    grid.npsi = 96;

    std::vector<heavenly::SweepRow> serial, parallel;
    double warm = run_ms(heavenly::ah_sweep_serial, grid, serial);
    (void)warm;

    double t_serial = run_ms(heavenly::ah_sweep_serial, grid, serial);
    double t_parallel = run_ms(heavenly::ah_sweep, grid, parallel);

    bool same = serial.size() == parallel.size();
    for (std::size_t i = 0; i < serial.size() && same; ++i)
        same = std::memcmp(&serial[i], &parallel[i], sizeof serial[i]) == 0;

    std::printf("lattice: %d x %d x %d = %zu points\n", grid.nk, grid.ntheta, grid.npsi,
                serial.size());
    std::printf("serial:   %9.2f ms\n", t_serial);
    std::printf("parallel: %9.2f ms\n", t_parallel);
    std::printf("speedup:  %9.2fx\n", t_serial / t_parallel);
    std::printf("outputs bitwise identical: %s\n", same ? "yes" : "NO");
    return same ? 0 : 1;
}
