#pragma once

#include <cstddef>
#include <vector>

#include "invnet/linalg.hpp"

namespace invnet {

// Per-warehouse parameters: capacity, maximum supply rate, deterioration
// percentage per unit time, and demand rate.
struct WarehouseParams {
    double max_level = 0.0;      // L_i > 0
    double max_supply = 0.0;     // mu_i >= 0
    double deterioration = 0.0;  // theta_i >= 0
    double demand = 0.0;         // lambda_i >= 0
};

// One echelon: n warehouses plus the n-by-n matrix of maximum transshipment
// rates. The diagonal is zero; asymmetric rate matrices are accepted.
struct EchelonSpec {
    std::vector<WarehouseParams> warehouses;
    DenseMatrix transshipment;

    std::size_t size() const { return warehouses.size(); }
    bool gamma_symmetric() const;
};

struct ChainEchelon {
    double capacity = 0.0;       // C_i > 0
    double max_supply = 0.0;     // mu^c_i >= 0
    double deterioration = 0.0;  // theta^c_i >= 0
};

// The m-echelon aggregated chain with a single terminal demand rate.
struct ChainSpec {
    std::vector<ChainEchelon> echelons;
    double terminal_demand = 0.0;

    std::size_t size() const { return echelons.size(); }
};

// Warehouse-level description of every echelon, consumed by the two-phase
// procedure. Each echelon's supply rate is the sum over its warehouses.
struct FullNetworkSpec {
    std::vector<EchelonSpec> echelons;
    double terminal_demand = 0.0;

    std::size_t size() const { return echelons.size(); }
    double echelon_supply(std::size_t e) const;
};

// Each validator throws ConfigError naming the offending field and index.
void validate(const EchelonSpec& spec);
void validate(const ChainSpec& spec);
void validate(const FullNetworkSpec& spec);

// mu_i > lambda_i per warehouse; all true means positive initial levels stay
// positive for all time and the equilibrium is positive.
std::vector<bool> validate_positivity_condition(const EchelonSpec& spec);

// Expands the scalar shorthand: every off-diagonal entry equal to `rate`.
DenseMatrix uniform_transshipment(std::size_t n, double rate);

}  // namespace invnet
