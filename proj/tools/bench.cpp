// Compares the serial and OpenMP execution paths on the two batch workloads:
// trajectory sampling (one matrix exponential per sample time) and an
// equilibrium sweep grid. Both paths run the same kernels; the parallel path
// only distributes independent work items.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "invnet/aggregate.hpp"
#include "invnet/echelon.hpp"
#include "invnet/netspec.hpp"
#include "invnet/parallel.hpp"

using namespace invnet;

namespace {

EchelonSpec random_spec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> level(50.0, 400.0);
    std::uniform_real_distribution<double> supply(1.0, 30.0);
    std::uniform_real_distribution<double> theta(0.02, 0.5);
    std::uniform_real_distribution<double> rate(0.0, 3.0);

    EchelonSpec spec;
    spec.warehouses.resize(n);
    for (auto& w : spec.warehouses) {
        w.max_level = level(rng);
        w.max_supply = supply(rng);
        w.deterioration = theta(rng);
        w.demand = 0.5 * w.max_supply;
    }
    spec.transshipment = DenseMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double r = rate(rng);
            spec.transshipment(i, j) = r;
            spec.transshipment(j, i) = r;
        }
    }
    return spec;
}

template <class Fn>
double seconds(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %.2fx\n", name,
                serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", hardware_threads());
    std::mt19937_64 rng(4242);

    {
        // One exponential per sample time on a mid-sized dense system.
        const EchelonSpec spec = random_spec(rng, 96);
        const LinearSystem sys = build_system(spec);
        const Vector y0(96, 25.0);
        Vector times;
        for (int k = 1; k <= 160; ++k) times.push_back(0.25 * k);

        TrajectorySeries serial_series, parallel_series;
        const double t_serial =
            seconds([&] { serial_series = solve_trajectory(sys, y0, times, ExecutionPolicy::serial); });
        const double t_parallel = seconds(
            [&] { parallel_series = solve_trajectory(sys, y0, times, ExecutionPolicy::parallel); });
        bool identical = true;
        for (std::size_t k = 0; k < times.size(); ++k) {
            identical = identical && serial_series.states[k] == parallel_series.states[k];
        }
        report("trajectory sampling", t_serial, t_parallel);
        std::printf("%-28s %s\n", "  outputs identical:", identical ? "yes" : "NO");
    }

    {
        // Equilibrium sweep: many small independent solves.
        std::vector<EchelonSpec> cells;
        for (int i = 0; i < 4000; ++i) cells.push_back(random_spec(rng, 12));
        std::vector<double> totals_serial(cells.size()), totals_parallel(cells.size());
        const auto solve_into = [&](std::vector<double>& totals, ExecutionPolicy policy) {
            parallel_for(
                cells.size(),
                [&](std::size_t i) {
                    double total = 0.0;
                    for (double v : equilibrium(cells[i]).levels) total += v;
                    totals[i] = total;
                },
                policy);
        };
        const double t_serial = seconds([&] { solve_into(totals_serial, ExecutionPolicy::serial); });
        const double t_parallel =
            seconds([&] { solve_into(totals_parallel, ExecutionPolicy::parallel); });
        report("equilibrium sweep", t_serial, t_parallel);
        std::printf("%-28s %s\n", "  outputs identical:",
                    totals_serial == totals_parallel ? "yes" : "NO");
    }
    return 0;
}
