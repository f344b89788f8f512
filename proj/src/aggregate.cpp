#include "invnet/aggregate.hpp"

#include <cmath>

#include "invnet/errors.hpp"

namespace invnet {

AggregateParams aggregate_params(const EchelonSpec& spec) {
    validate(spec);
    AggregateParams p;
    for (const auto& w : spec.warehouses) {
        p.max_level += w.max_level;
        p.max_supply += w.max_supply;
        p.demand += w.demand;
        p.mean_deterioration += w.deterioration;
    }
    p.mean_deterioration /= static_cast<double>(spec.size());
    return p;
}

namespace {

double decay_rate(const AggregateParams& p) {
    const double kappa = p.max_supply / p.max_level + p.mean_deterioration;
    if (!(kappa > 0.0)) {
        throw NumericalError("aggregated model: degenerate rate mu_a/L_a + theta_bar = 0");
    }
    return kappa;
}

}  // namespace

double aggregated_equilibrium(const AggregateParams& p) {
    return (p.max_supply - p.demand) / decay_rate(p);
}

TrajectorySeries aggregated_trajectory(const AggregateParams& p, double y0, const Vector& times) {
    if (!(y0 >= 0.0)) throw NumericalError("aggregated_trajectory: y0 must be nonnegative");
    const double kappa = decay_rate(p);
    const double net = p.max_supply - p.demand;

    TrajectorySeries series;
    series.times = times;
    series.states.reserve(times.size());
    for (double t : times) {
        const double decay = std::exp(-kappa * t);
        series.states.push_back({decay * y0 - decay / kappa * net + net / kappa});
    }
    return series;
}

bool exactness_conditions(const EchelonSpec& spec) {
    const auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    const auto& ws = spec.warehouses;
    const double ratio0 = ws[0].max_supply / ws[0].max_level;
    for (const auto& w : ws) {
        if (!close(w.max_supply / w.max_level, ratio0)) return false;
        if (!close(w.deterioration, ws[0].deterioration)) return false;
    }
    return true;
}

double aggregation_error_bound(const EchelonSpec& spec) {
    const auto& ws = spec.warehouses;
    for (const auto& w : ws) {
        if (w.max_level != ws[0].max_level) {
            throw NumericalError("aggregation_error_bound: requires equal capacities L_i");
        }
    }
    const AggregateParams p = aggregate_params(spec);
    const double net = p.max_supply - p.demand;
    if (net < 0.0) {
        throw NumericalError("aggregation_error_bound: requires total supply >= total demand");
    }
    double min_rate = std::numeric_limits<double>::infinity();
    for (const auto& w : ws) {
        min_rate = std::min(min_rate, w.max_supply / w.max_level + w.deterioration);
    }
    return std::sqrt(static_cast<double>(spec.size())) * net / min_rate + net / decay_rate(p);
}

}  // namespace invnet
