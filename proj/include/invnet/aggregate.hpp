#pragma once

#include "invnet/echelon.hpp"
#include "invnet/netspec.hpp"

namespace invnet {

// Single-warehouse surrogate for an echelon: summed capacity, supply and
// demand, arithmetic-mean deterioration percentage.
struct AggregateParams {
    double max_level = 0.0;          // L_a = sum L_i
    double max_supply = 0.0;         // mu_a = sum mu_i
    double demand = 0.0;             // lambda_a = sum lambda_i
    double mean_deterioration = 0.0; // theta_bar = mean theta_i
};

AggregateParams aggregate_params(const EchelonSpec& spec);

// y_a* = (mu_a - lambda_a) / (mu_a / L_a + theta_bar); throws NumericalError
// on a degenerate (zero) denominator.
double aggregated_equilibrium(const AggregateParams& p);

// Closed-form scalar trajectory of the aggregated level.
TrajectorySeries aggregated_trajectory(const AggregateParams& p, double y0, const Vector& times);

// True when mu_1/L_1 = ... = mu_n/L_n and theta_1 = ... = theta_n; then the
// summed warehouse levels coincide with the aggregated model exactly.
bool exactness_conditions(const EchelonSpec& spec);

// Bound on |y_a* - sum y_i*| for equal capacities; throws NumericalError when
// capacities differ or the summed supply falls short of the summed demand.
double aggregation_error_bound(const EchelonSpec& spec);

}  // namespace invnet
