#include "invnet/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace invnet {

Vector chain_rhs(const ChainSpec& spec, const Vector& x) {
    const std::size_t m = spec.size();
    if (x.size() != m) throw NumericalError("chain_rhs: state length mismatch");
    const auto& es = spec.echelons;

    Vector f(m);
    f[0] = es[0].max_supply -
           (es[0].max_supply / es[0].capacity + es[0].deterioration +
            es[1].max_supply / es[0].capacity) *
               x[0] +
           es[1].max_supply / (es[0].capacity * es[1].capacity) * x[0] * x[1];
    for (std::size_t i = 1; i + 1 < m; ++i) {
        f[i] = es[i].max_supply / es[i - 1].capacity * x[i - 1] -
               (es[i].deterioration + es[i + 1].max_supply / es[i].capacity) * x[i] -
               es[i].max_supply / (es[i - 1].capacity * es[i].capacity) * x[i - 1] * x[i] +
               es[i + 1].max_supply / (es[i].capacity * es[i + 1].capacity) * x[i] * x[i + 1];
    }
    f[m - 1] = -spec.terminal_demand + es[m - 1].max_supply / es[m - 2].capacity * x[m - 2] -
               es[m - 1].deterioration * x[m - 1] -
               es[m - 1].max_supply / (es[m - 2].capacity * es[m - 1].capacity) * x[m - 2] * x[m - 1];
    return f;
}

TridiagonalMatrix chain_jacobian(const ChainSpec& spec, const Vector& x) {
    const std::size_t m = spec.size();
    if (x.size() != m) throw NumericalError("chain_jacobian: state length mismatch");
    const auto& es = spec.echelons;

    TridiagonalMatrix j;
    j.diag.resize(m);
    j.sub.resize(m - 1);
    j.super.resize(m - 1);

    j.diag[0] = -(es[0].max_supply / es[0].capacity + es[0].deterioration +
                  es[1].max_supply / es[0].capacity) +
                es[1].max_supply * x[1] / (es[0].capacity * es[1].capacity);
    j.super[0] = es[1].max_supply * x[0] / (es[0].capacity * es[1].capacity);
    for (std::size_t i = 1; i + 1 < m; ++i) {
        j.sub[i - 1] = es[i].max_supply / es[i - 1].capacity -
                       es[i].max_supply * x[i] / (es[i - 1].capacity * es[i].capacity);
        j.diag[i] = -(es[i].deterioration + es[i + 1].max_supply / es[i].capacity) -
                    es[i].max_supply * x[i - 1] / (es[i - 1].capacity * es[i].capacity) +
                    es[i + 1].max_supply * x[i + 1] / (es[i].capacity * es[i + 1].capacity);
        j.super[i] = es[i + 1].max_supply * x[i] / (es[i].capacity * es[i + 1].capacity);
    }
    j.sub[m - 2] = es[m - 1].max_supply / es[m - 2].capacity -
                   es[m - 1].max_supply * x[m - 1] / (es[m - 2].capacity * es[m - 1].capacity);
    j.diag[m - 1] = -es[m - 1].deterioration -
                    es[m - 1].max_supply * x[m - 2] / (es[m - 2].capacity * es[m - 1].capacity);
    return j;
}

NewtonResult newton_solve(const ChainSpec& spec, const NewtonOptions& options) {
    validate(spec);
    const std::size_t m = spec.size();
    if (!(options.tolerance > 0.0)) throw NumericalError("newton_solve: tolerance must be positive");

    Vector x = options.initial.empty() ? Vector(m, 0.0) : options.initial;
    if (x.size() != m) throw NumericalError("newton_solve: initial guess length mismatch");

    NewtonResult result;
    NewtonTrace& trace = result.trace;

    Vector f = chain_rhs(spec, x);
    double rnorm = norm_two(f);
    trace.iterates.push_back(x);
    trace.residual_norms.push_back(rnorm);

    while (rnorm > options.tolerance) {
        if (trace.iterations >= options.max_iterations) {
            trace.failure = "maximum iterations exceeded";
            trace.within_capacity = false;
            return result;
        }
        const TridiagonalMatrix jac = chain_jacobian(spec, x);
        Vector step;
        try {
            step = tridiag_solve(jac, f);
        } catch (const BreakdownError&) {
            trace.dense_fallback = true;
            try {
                step = lu_solve(jac.to_dense(), f);
            } catch (const NumericalError&) {
                trace.failure = "singular Jacobian at iterate " + std::to_string(trace.iterations);
                return result;
            }
        }

        Vector next(m);
        for (std::size_t i = 0; i < m; ++i) next[i] = x[i] - step[i];
        Vector fnext = chain_rhs(spec, next);
        double rnext = norm_two(fnext);

        if (options.damping) {
            // Residual-halving safeguard: shrink the update until the
            // residual stops growing (bounded number of halvings).
            double factor = 1.0;
            int halvings = 0;
            while (rnext > rnorm && halvings < 30) {
                factor *= 0.5;
                ++halvings;
                for (std::size_t i = 0; i < m; ++i) next[i] = x[i] - factor * step[i];
                fnext = chain_rhs(spec, next);
                rnext = norm_two(fnext);
            }
        }

        x = std::move(next);
        f = std::move(fnext);
        rnorm = rnext;
        ++trace.iterations;
        trace.iterates.push_back(x);
        trace.residual_norms.push_back(rnorm);
        if (!std::isfinite(rnorm)) {
            trace.failure = "non-finite residual at iterate " + std::to_string(trace.iterations);
            return result;
        }
    }

    trace.converged = true;
    trace.within_capacity = true;
    for (std::size_t i = 0; i < m; ++i) {
        if (x[i] < 0.0 || x[i] > spec.echelons[i].capacity) trace.within_capacity = false;
    }
    result.equilibrium = std::move(x);
    return result;
}

Condition3Report stability_condition(const ChainSpec& spec) {
    validate(spec);
    const auto& es = spec.echelons;
    const std::size_t m = spec.size();

    Condition3Report report;
    report.flags.resize(m);
    report.flags[0] = es[1].max_supply / es[0].capacity <
                      es[0].max_supply / es[0].capacity + es[0].deterioration;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        report.flags[i] = es[i].max_supply / es[i - 1].capacity +
                              es[i + 1].max_supply / es[i + 1].capacity <
                          es[i].deterioration;
    }
    report.flags[m - 1] = es[m - 1].max_supply / es[m - 2].capacity < es[m - 1].deterioration;
    report.satisfied = std::all_of(report.flags.begin(), report.flags.end(), [](bool b) { return b; });
    return report;
}

StabilityCertificate kantorovich_certificate(const ChainSpec& spec) {
    StabilityCertificate cert;
    cert.condition3 = stability_condition(spec);
    if (!cert.condition3.satisfied) {
        cert.kantorovich.applicable = false;
        return cert;
    }

    const auto& es = spec.echelons;
    const std::size_t m = spec.size();
    const double md = static_cast<double>(m);

    double sum_sq = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        const double term = es[i].max_supply / (es[i - 1].capacity * es[i].capacity);
        sum_sq += term * term;
    }

    // Row diagonal-dominance margins of the Jacobian at the origin.
    double margin = es[0].max_supply / es[0].capacity + es[0].deterioration +
                    es[1].max_supply / es[0].capacity;
    for (std::size_t i = 1; i + 1 < m; ++i) {
        margin = std::min(margin, es[i].deterioration + es[i + 1].max_supply / es[i].capacity -
                                      es[i].max_supply / es[i - 1].capacity);
    }
    margin = std::min(margin, es[m - 1].deterioration - es[m - 1].max_supply / es[m - 2].capacity);

    const double residual_sq = es[0].max_supply * es[0].max_supply +
                               spec.terminal_demand * spec.terminal_demand;

    cert.kantorovich.applicable = true;
    cert.kantorovich.lipschitz = 2.0 * std::sqrt(sum_sq);
    cert.kantorovich.initial_residual = std::sqrt(residual_sq);
    cert.kantorovich.inverse_bound = std::sqrt(md) / margin;
    cert.kantorovich.inequality_lhs =
        md * md * residual_sq * sum_sq / (margin * margin * margin * margin);
    cert.kantorovich.satisfied = cert.kantorovich.inequality_lhs <= 1.0 / 16.0;
    return cert;
}

TrajectorySeries simulate_chain(const ChainSpec& spec, const Vector& x0, const Vector& times,
                                double step) {
    validate(spec);
    if (x0.size() != spec.size()) throw NumericalError("simulate_chain: x0 length mismatch");
    return oracle::rk4_at_times([&](double, const Vector& x) { return chain_rhs(spec, x); }, x0,
                                times, step);
}

}  // namespace invnet
