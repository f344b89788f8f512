#pragma once

#include "invnet/chain.hpp"
#include "invnet/echelon.hpp"
#include "invnet/netspec.hpp"
#include "invnet/parallel.hpp"

namespace invnet {

// Phase 1: collapse each echelon to one aggregated warehouse (summed
// capacity and supply, mean deterioration) feeding a chain model.
ChainSpec phase1_aggregate(const FullNetworkSpec& net);

struct DisaggregatedEchelon {
    std::size_t index = 0;        // 0-based echelon position
    double frozen_supply = 0.0;   // per-warehouse max supply after freezing
    double frozen_demand = 0.0;   // per-warehouse demand after freezing
    EquilibriumReport report;
};

// Phase 2: freeze the cross-echelon rates of echelon `e` (0-based) at the
// chain equilibrium and solve that echelon's warehouse-level system. The top
// echelon keeps its raw per-warehouse supply; the bottom takes the terminal
// demand split per warehouse; interior echelons see upstream-fraction-scaled
// supply and the downstream pull.
DisaggregatedEchelon phase2_disaggregate(const FullNetworkSpec& net, const Vector& chain_eq,
                                         std::size_t e);

struct TwoPhaseResult {
    ChainSpec aggregated;
    Vector chain_levels;  // x*
    NewtonTrace trace;
    std::vector<DisaggregatedEchelon> echelons;
    std::size_t full_state_count = 0;       // handling every warehouse at once
    std::size_t two_phase_state_count = 0;  // m chain states + largest echelon
};

// Runs Phase 1, the Newton solve, then Phase 2 for every echelon.
// Disaggregations of distinct echelons are independent work items.
TwoPhaseResult two_phase(const FullNetworkSpec& net,
                         ExecutionPolicy policy = ExecutionPolicy::serial);

}  // namespace invnet
