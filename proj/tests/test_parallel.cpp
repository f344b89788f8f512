#include <doctest.h>

#include <atomic>
#include <vector>

#include "invnet/echelon.hpp"
#include "invnet/parallel.hpp"
#include "test_support.hpp"

using namespace invnet;

TEST_CASE("parallel_for visits every index exactly once") {
    for (ExecutionPolicy policy : {ExecutionPolicy::serial, ExecutionPolicy::parallel}) {
        std::vector<std::atomic<int>> hits(257);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); }, policy);
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
}

TEST_CASE("parallel_for propagates a worker exception") {
    const auto boom = [](std::size_t i) {
        if (i == 5) throw NumericalError("boom");
    };
    CHECK_THROWS_AS(parallel_for(32, boom, ExecutionPolicy::parallel), NumericalError);
    CHECK_THROWS_AS(parallel_for(32, boom, ExecutionPolicy::serial), NumericalError);
}

TEST_CASE("trajectories are bit-identical across execution policies") {
    std::mt19937_64 rng(401);
    const EchelonSpec spec = invnet::testing::random_echelon_spec(rng, 6, 6);
    const LinearSystem sys = build_system(spec);
    Vector times;
    for (int k = 1; k <= 64; ++k) times.push_back(0.25 * k);
    const Vector y0(6, 10.0);

    const TrajectorySeries serial = solve_trajectory(sys, y0, times, ExecutionPolicy::serial);
    const TrajectorySeries parallel = solve_trajectory(sys, y0, times, ExecutionPolicy::parallel);
    REQUIRE(serial.states.size() == parallel.states.size());
    for (std::size_t k = 0; k < serial.states.size(); ++k) {
        CHECK(serial.states[k] == parallel.states[k]);
    }
}
