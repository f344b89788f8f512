#include "invnet/twophase.hpp"

#include <algorithm>

#include "invnet/aggregate.hpp"
#include "invnet/errors.hpp"

namespace invnet {

ChainSpec phase1_aggregate(const FullNetworkSpec& net) {
    validate(net);
    ChainSpec chain;
    chain.echelons.reserve(net.size());
    for (const auto& echelon : net.echelons) {
        const AggregateParams p = aggregate_params(echelon);
        chain.echelons.push_back({p.max_level, p.max_supply, p.mean_deterioration});
    }
    chain.terminal_demand = net.terminal_demand;
    return chain;
}

DisaggregatedEchelon phase2_disaggregate(const FullNetworkSpec& net, const Vector& chain_eq,
                                         std::size_t e) {
    const std::size_t m = net.size();
    if (e >= m) throw NumericalError("phase2_disaggregate: echelon index out of range");
    if (chain_eq.size() != m) throw NumericalError("phase2_disaggregate: chain solution length mismatch");

    const ChainSpec chain = phase1_aggregate(net);
    const auto& ce = chain.echelons;
    const double n = static_cast<double>(net.echelons[e].size());

    DisaggregatedEchelon out;
    out.index = e;
    out.frozen_supply = (e == 0)
                            ? ce[0].max_supply / n
                            : ce[e].max_supply / n * (chain_eq[e - 1] / ce[e - 1].capacity);
    out.frozen_demand = (e == m - 1)
                            ? net.terminal_demand / n
                            : ce[e + 1].max_supply / n * (chain_eq[e] / ce[e].capacity) *
                                  (1.0 - chain_eq[e + 1] / ce[e + 1].capacity);

    EchelonSpec frozen = net.echelons[e];
    for (auto& w : frozen.warehouses) {
        w.max_supply = out.frozen_supply;
        w.demand = out.frozen_demand;
    }
    out.report = equilibrium(frozen);
    return out;
}

TwoPhaseResult two_phase(const FullNetworkSpec& net, ExecutionPolicy policy) {
    TwoPhaseResult result;
    result.aggregated = phase1_aggregate(net);

    NewtonResult solved = newton_solve(result.aggregated);
    result.trace = std::move(solved.trace);
    if (!result.trace.converged) {
        throw NumericalError("two_phase: chain equilibrium did not converge: " +
                             result.trace.failure);
    }
    result.chain_levels = std::move(solved.equilibrium);

    const std::size_t m = net.size();
    std::size_t largest = 0;
    result.full_state_count = 0;
    for (const auto& echelon : net.echelons) {
        result.full_state_count += echelon.size();
        largest = std::max(largest, echelon.size());
    }
    result.two_phase_state_count = m + largest;

    result.echelons.resize(m);
    parallel_for(
        m, [&](std::size_t e) { result.echelons[e] = phase2_disaggregate(net, result.chain_levels, e); },
        policy);
    return result;
}

}  // namespace invnet
