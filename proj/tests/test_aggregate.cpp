#include <doctest.h>

#include <cmath>
#include <random>

#include "invnet/aggregate.hpp"
#include "invnet/echelon.hpp"
#include "test_support.hpp"

using namespace invnet;
using invnet::testing::Topology;
using invnet::testing::random_echelon_spec;

namespace {

EchelonSpec three_warehouse_spec() {
    EchelonSpec spec;
    spec.warehouses = {{100.0, 3.0, 0.1, 1.0}, {200.0, 4.0, 0.2, 2.0}, {200.0, 5.0, 0.3, 3.0}};
    spec.transshipment = DenseMatrix(3, 3);
    spec.transshipment(0, 1) = 0.5;
    spec.transshipment(1, 0) = 0.5;
    spec.transshipment(0, 2) = 0.2;
    spec.transshipment(2, 0) = 0.2;
    spec.transshipment(1, 2) = 1.0;
    spec.transshipment(2, 1) = 1.0;
    return spec;
}

}  // namespace

TEST_CASE("aggregation sums levels and rates and averages deterioration") {
    const AggregateParams p = aggregate_params(three_warehouse_spec());
    CHECK(p.max_level == 500.0);
    CHECK(p.max_supply == 12.0);
    CHECK(p.demand == 6.0);
    CHECK(p.mean_deterioration == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("aggregating a single warehouse changes nothing") {
    EchelonSpec spec;
    spec.warehouses = {{100.0, 3.0, 0.1, 1.0}};
    spec.transshipment = DenseMatrix(1, 1);
    const AggregateParams p = aggregate_params(spec);
    CHECK(p.max_level == 100.0);
    CHECK(p.max_supply == 3.0);
    CHECK(p.demand == 1.0);
    CHECK(p.mean_deterioration == 0.1);
}

TEST_CASE("aggregation of the two-warehouse sweep cell") {
    EchelonSpec spec;
    spec.warehouses = {{200.0, 16.0, 0.05, 4.0}, {200.0, 16.0, 0.10, 4.0}};
    spec.transshipment = uniform_transshipment(2, 1.0);
    const AggregateParams p = aggregate_params(spec);
    CHECK(p.max_level == 400.0);
    CHECK(p.max_supply == 32.0);
    CHECK(p.demand == 8.0);
    CHECK(p.mean_deterioration == doctest::Approx(0.075).epsilon(1e-15));
}

TEST_CASE("aggregated equilibrium of the three-warehouse example") {
    CHECK(std::abs(aggregated_equilibrium(aggregate_params(three_warehouse_spec())) - 26.786) <= 5e-4);
}

TEST_CASE("aggregated equilibrium of the 16-4 cell") {
    EchelonSpec spec;
    spec.warehouses = {{200.0, 16.0, 0.05, 4.0}, {200.0, 16.0, 0.10, 4.0}};
    spec.transshipment = uniform_transshipment(2, 1.0);
    CHECK(std::abs(aggregated_equilibrium(aggregate_params(spec)) - 154.8) <= 0.05);
}

TEST_CASE("matched supply and demand give a zero aggregated equilibrium") {
    AggregateParams p{400.0, 20.0, 20.0, 0.1};
    CHECK(aggregated_equilibrium(p) == 0.0);
}

TEST_CASE("a degenerate aggregated rate is rejected") {
    AggregateParams p{400.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(aggregated_equilibrium(p), NumericalError);
    CHECK_THROWS_AS(aggregated_trajectory(p, 1.0, {1.0}), NumericalError);
}

TEST_CASE("the aggregated trajectory settles at the aggregated equilibrium") {
    const AggregateParams p = aggregate_params(three_warehouse_spec());
    const TrajectorySeries series = aggregated_trajectory(p, 300.0, {500.0});
    CHECK(std::abs(series.states[0][0] - 26.786) <= 5e-4);
}

TEST_CASE("the aggregated trajectory is constant at its equilibrium") {
    const AggregateParams p = aggregate_params(three_warehouse_spec());
    const double star = aggregated_equilibrium(p);
    const TrajectorySeries series = aggregated_trajectory(p, star, {1.0, 10.0, 100.0});
    for (const Vector& state : series.states) {
        CHECK(state[0] == doctest::Approx(star).epsilon(1e-12));
    }
}

TEST_CASE("exactness holds for identical warehouses and fails for the mixed example") {
    EchelonSpec same;
    same.warehouses = {{100.0, 5.0, 0.2, 1.0}, {100.0, 5.0, 0.2, 2.0}};
    same.transshipment = uniform_transshipment(2, 1.0);
    CHECK(exactness_conditions(same));

    CHECK_FALSE(exactness_conditions(three_warehouse_spec()));  // deterioration differs

    EchelonSpec scaled;
    scaled.warehouses = {{100.0, 3.0, 0.1, 1.0}, {200.0, 6.0, 0.1, 2.0}};
    scaled.transshipment = uniform_transshipment(2, 0.5);
    CHECK(exactness_conditions(scaled));  // equal supply-to-capacity ratios
}

TEST_CASE("error bound evaluates on the 16-4 cell and rejects unequal capacities") {
    EchelonSpec spec;
    spec.warehouses = {{200.0, 16.0, 0.05, 4.0}, {200.0, 16.0, 0.10, 4.0}};
    spec.transshipment = uniform_transshipment(2, 1.0);
    const double bound = aggregation_error_bound(spec);
    CHECK(bound == doctest::Approx(std::sqrt(2.0) * 24.0 / 0.13 + 154.8387).epsilon(1e-4));

    const EquilibriumReport eq = equilibrium(spec);
    const double gap =
        std::abs(aggregated_equilibrium(aggregate_params(spec)) - (eq.levels[0] + eq.levels[1]));
    CHECK(std::abs(gap - 3.9) <= 0.05);
    CHECK(gap <= bound);

    CHECK_THROWS_AS(aggregation_error_bound(three_warehouse_spec()), NumericalError);
}

TEST_CASE("under exactness the summed equilibrium matches the aggregate") {
    std::mt19937_64 rng(211);
    std::uniform_real_distribution<double> ratio(0.01, 0.3);
    std::uniform_real_distribution<double> theta(0.02, 0.4);
    for (int trial = 0; trial < 100; ++trial) {
        EchelonSpec spec = random_echelon_spec(rng, 1, 10);
        const double r = ratio(rng);
        const double th = theta(rng);
        for (auto& w : spec.warehouses) {
            w.max_supply = r * w.max_level;
            w.deterioration = th;
            w.demand = 0.5 * w.max_supply;
        }
        REQUIRE(exactness_conditions(spec));
        double total = 0.0;
        for (double v : equilibrium(spec).levels) total += v;
        CHECK(std::abs(total - aggregated_equilibrium(aggregate_params(spec))) <= 1e-9);
    }
}

TEST_CASE("under exactness with matched starts the summed trajectory matches the aggregate") {
    std::mt19937_64 rng(223);
    std::uniform_real_distribution<double> ratio(0.01, 0.3);
    std::uniform_real_distribution<double> theta(0.02, 0.4);
    std::uniform_real_distribution<double> start(0.0, 100.0);
    const Vector times = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0};
    for (int trial = 0; trial < 20; ++trial) {
        EchelonSpec spec = random_echelon_spec(rng, 1, 6);
        const double r = ratio(rng);
        const double th = theta(rng);
        for (auto& w : spec.warehouses) {
            w.max_supply = r * w.max_level;
            w.deterioration = th;
            w.demand = 0.3 * w.max_supply;
        }
        Vector y0(spec.size());
        double y0_sum = 0.0;
        for (auto& v : y0) {
            v = start(rng);
            y0_sum += v;
        }
        const TrajectorySeries detailed = solve_trajectory(build_system(spec), y0, times);
        const TrajectorySeries aggregated =
            aggregated_trajectory(aggregate_params(spec), y0_sum, times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            double total = 0.0;
            for (double v : detailed.states[k]) total += v;
            CHECK(std::abs(total - aggregated.states[k][0]) <= 1e-8);
        }
    }
}

TEST_CASE("the error bound dominates the actual gap on equal-capacity specs") {
    std::mt19937_64 rng(227);
    for (int trial = 0; trial < 100; ++trial) {
        EchelonSpec spec = random_echelon_spec(rng, 1, 10);
        for (auto& w : spec.warehouses) w.max_level = 150.0;
        const double bound = aggregation_error_bound(spec);
        double total = 0.0;
        for (double v : equilibrium(spec).levels) total += v;
        const double gap = std::abs(aggregated_equilibrium(aggregate_params(spec)) - total);
        CHECK(gap <= bound);
    }
}
