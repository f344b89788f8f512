#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "invnet/echelon.hpp"
#include "invnet/errors.hpp"
#include "invnet/linalg.hpp"

// Independent verification instruments: a fixed-step classical Runge-Kutta
// integrator and central-difference differentiation. They share no code with
// the closed-form or analytic-Jacobian paths they are used to check.
namespace invnet::oracle {

inline constexpr double kDefaultRk4Step = 1e-2;

namespace detail {

template <class Rhs>
Vector rk4_step(Rhs&& rhs, const Vector& x, double t, double h) {
    const std::size_t n = x.size();
    Vector k1 = rhs(t, x);
    Vector tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    Vector k2 = rhs(t + 0.5 * h, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    Vector k3 = rhs(t + 0.5 * h, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
    Vector k4 = rhs(t + h, tmp);
    Vector next(n);
    for (std::size_t i = 0; i < n; ++i) {
        next[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return next;
}

inline void check_finite(const Vector& x, double t) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw NumericalError("rk4: non-finite state at t = " + std::to_string(t));
        }
    }
}

}  // namespace detail

// Integrates x' = rhs(t, x) from 0 to each requested sample time, chaining
// full steps of size `step` and shortening the final partial step to land
// exactly on the sample. Times must be nonnegative and strictly increasing.
template <class Rhs>
TrajectorySeries rk4_at_times(Rhs&& rhs, Vector x0, const Vector& times, double step) {
    if (!(step > 0.0)) throw NumericalError("rk4: step must be positive");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0.0) || (k > 0 && !(times[k] > times[k - 1]))) {
            throw NumericalError("rk4: times must be nonnegative and strictly increasing");
        }
    }

    TrajectorySeries series;
    series.times = times;
    series.states.reserve(times.size());

    Vector x = std::move(x0);
    double t = 0.0;
    detail::check_finite(x, t);
    for (double target : times) {
        while (t < target) {
            const double h = std::min(step, target - t);
            x = detail::rk4_step(rhs, x, t, h);
            t += h;
            detail::check_finite(x, t);
        }
        series.states.push_back(x);
    }
    return series;
}

// Fixed-step integration over [0, t_end], sampling after every step; the
// final partial step lands exactly on t_end.
template <class Rhs>
TrajectorySeries rk4_integrate(Rhs&& rhs, Vector x0, double t_end, double step) {
    if (!(step > 0.0)) throw NumericalError("rk4: step must be positive");
    if (!(t_end >= 0.0)) throw NumericalError("rk4: t_end must be nonnegative");

    TrajectorySeries series;
    Vector x = std::move(x0);
    double t = 0.0;
    detail::check_finite(x, t);
    series.times.push_back(t);
    series.states.push_back(x);
    while (t < t_end) {
        const double h = std::min(step, t_end - t);
        x = detail::rk4_step(rhs, x, t, h);
        t += h;
        detail::check_finite(x, t);
        series.times.push_back(t);
        series.states.push_back(x);
    }
    return series;
}

// Central differences column by column with per-column step h * max(1, |x_j|).
template <class Fn>
DenseMatrix finite_difference_jacobian(Fn&& f, const Vector& x, double h) {
    if (!(h > 0.0)) throw NumericalError("finite_difference_jacobian: h must be positive");
    const Vector f0 = f(x);
    DenseMatrix jac(f0.size(), x.size());
    Vector probe = x;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double dx = h * std::max(1.0, std::abs(x[j]));
        probe[j] = x[j] + dx;
        const Vector fp = f(probe);
        probe[j] = x[j] - dx;
        const Vector fm = f(probe);
        probe[j] = x[j];
        for (std::size_t i = 0; i < f0.size(); ++i) {
            jac(i, j) = (fp[i] - fm[i]) / (2.0 * dx);
        }
    }
    return jac;
}

}  // namespace invnet::oracle
