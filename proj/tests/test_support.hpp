#pragma once

#include <random>

#include "invnet/netspec.hpp"

// Shared deterministic generators for property-style tests.
namespace invnet::testing {

enum class Topology { full, star, path, none };

inline DenseMatrix random_transshipment(std::mt19937_64& rng, std::size_t n, Topology topology,
                                        double max_rate = 3.0) {
    std::uniform_real_distribution<double> rate(0.0, max_rate);
    DenseMatrix g(n, n);
    const auto link = [&](std::size_t i, std::size_t j) {
        const double r = rate(rng);
        g(i, j) = r;
        g(j, i) = r;
    };
    switch (topology) {
        case Topology::full:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) link(i, j);
            break;
        case Topology::star:
            for (std::size_t j = 1; j < n; ++j) link(0, j);
            break;
        case Topology::path:
            for (std::size_t i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case Topology::none:
            break;
    }
    return g;
}

inline EchelonSpec random_echelon_spec(std::mt19937_64& rng, std::size_t n_min, std::size_t n_max,
                                       Topology topology = Topology::full,
                                       bool supply_exceeds_demand = true) {
    std::uniform_int_distribution<std::size_t> size(n_min, n_max);
    std::uniform_real_distribution<double> level(50.0, 400.0);
    std::uniform_real_distribution<double> supply(1.0, 30.0);
    std::uniform_real_distribution<double> deterioration(0.02, 0.5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    EchelonSpec spec;
    const std::size_t n = size(rng);
    spec.warehouses.resize(n);
    for (auto& w : spec.warehouses) {
        w.max_level = level(rng);
        w.max_supply = supply(rng);
        w.deterioration = deterioration(rng);
        w.demand = supply_exceeds_demand ? 0.9 * unit(rng) * w.max_supply
                                         : 1.2 * unit(rng) * w.max_supply;
    }
    spec.transshipment = random_transshipment(rng, n, topology);
    return spec;
}

inline ChainSpec random_chain_spec(std::mt19937_64& rng, std::size_t m_min = 2,
                                   std::size_t m_max = 8) {
    std::uniform_int_distribution<std::size_t> size(m_min, m_max);
    std::uniform_real_distribution<double> capacity(50.0, 200.0);
    std::uniform_real_distribution<double> supply(5.0, 100.0);
    std::uniform_real_distribution<double> deterioration(0.02, 0.3);
    std::uniform_real_distribution<double> demand(0.0, 10.0);

    ChainSpec spec;
    spec.echelons.resize(size(rng));
    for (auto& e : spec.echelons) {
        e.capacity = capacity(rng);
        e.max_supply = supply(rng);
        e.deterioration = deterioration(rng);
    }
    spec.terminal_demand = demand(rng);
    return spec;
}

// Heavily deteriorating, lightly supplied chains: the regime where the
// Newton convergence certificate fires.
inline ChainSpec random_certifiable_chain_spec(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> size(2, 6);
    std::uniform_real_distribution<double> capacity(100.0, 200.0);
    std::uniform_real_distribution<double> supply(0.0, 2.0);
    std::uniform_real_distribution<double> deterioration(1.0, 3.0);
    std::uniform_real_distribution<double> demand(0.0, 1.0);

    ChainSpec spec;
    spec.echelons.resize(size(rng));
    for (auto& e : spec.echelons) {
        e.capacity = capacity(rng);
        e.max_supply = supply(rng);
        e.deterioration = deterioration(rng);
    }
    spec.terminal_demand = demand(rng);
    return spec;
}

}  // namespace invnet::testing
