#include "invnet/echelon.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace invnet {

namespace {

bool is_star_pattern(const DenseMatrix& g) {
    // Every nonzero rate is incident to warehouse 1 (row or column 0).
    const std::size_t n = g.rows();
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j)
            if (i != j && g(i, j) != 0.0) return false;
    return true;
}

bool is_path_pattern(const DenseMatrix& g) {
    const std::size_t n = g.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g(i, j) != 0.0 && (i > j ? i - j : j - i) != 1) return false;
    return true;
}

Structure detect_structure(const EchelonSpec& spec) {
    const std::size_t n = spec.size();
    if (n == 1) return Structure::general;
    if (n == 2) return Structure::two_warehouse;
    if (is_path_pattern(spec.transshipment)) return Structure::linear_chain;
    if (is_star_pattern(spec.transshipment)) return Structure::star;
    return Structure::general;
}

TridiagonalMatrix extract_tridiagonal(const DenseMatrix& a) {
    const std::size_t n = a.rows();
    TridiagonalMatrix t;
    t.diag.resize(n);
    t.sub.resize(n - 1);
    t.super.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        t.diag[i] = a(i, i);
        if (i + 1 < n) {
            t.super[i] = a(i, i + 1);
            t.sub[i] = a(i + 1, i);
        }
    }
    return t;
}

EquilibriumReport finish_report(const LinearSystem& sys, Vector levels, std::string method,
                                bool fallback) {
    EquilibriumReport report;
    Vector residual = sys.A * levels;
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] += sys.b[i];
    report.residual = norm_inf(residual);
    report.levels = std::move(levels);
    report.gershgorin_bound = gershgorin(sys.A).upper_bound;
    report.stable = report.gershgorin_bound < 0.0;
    report.positivity_guaranteed =
        std::all_of(sys.b.begin(), sys.b.end(), [](double v) { return v > 0.0; });
    report.method = std::move(method);
    report.dense_fallback = fallback;
    return report;
}

Vector negate(Vector v) {
    for (double& x : v) x = -x;
    return v;
}

EquilibriumReport solve_dense(const LinearSystem& sys, const char* label, bool fallback) {
    return finish_report(sys, lu_solve(sys.A, negate(sys.b)), label, fallback);
}

EquilibriumReport solve_two_warehouse(const LinearSystem& sys) {
    const DenseMatrix& a = sys.A;
    const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    if (!(det > 0.0)) {
        throw NumericalError("two-warehouse closed form: determinant is not positive");
    }
    Vector levels(2);
    levels[0] = (-a(1, 1) * sys.b[0] + a(0, 1) * sys.b[1]) / det;
    levels[1] = (a(1, 0) * sys.b[0] - a(0, 0) * sys.b[1]) / det;
    return finish_report(sys, std::move(levels), "two-warehouse-closed-form", false);
}

EquilibriumReport solve_star(const LinearSystem& sys) {
    const EchelonSpec& spec = sys.spec;
    const std::size_t n = spec.size();
    const DenseMatrix& g = spec.transshipment;

    // A = D + E with diagonal D and rank-two E; E factors as U V^t with
    // U = [e_hub-row | spoke-to-hub rates] and V carrying 1/L_1 and the
    // hub-to-spoke entries of A.
    DenseMatrix d_inv(n, n);
    for (std::size_t i = 0; i < n; ++i) d_inv(i, i) = 1.0 / sys.A(i, i);

    DenseMatrix u(n, 2), v(n, 2);
    u(0, 1) = 1.0;
    v(0, 0) = 1.0 / spec.warehouses[0].max_level;
    for (std::size_t i = 1; i < n; ++i) {
        u(i, 0) = g(i, 0);
        v(i, 1) = g(0, i) / spec.warehouses[i].max_level;
    }

    const DenseMatrix a_inv = smw_inverse(d_inv, u, v);
    return finish_report(sys, negate(a_inv * sys.b), "sherman-morrison-woodbury-star", false);
}

EquilibriumReport solve_linear_chain(const LinearSystem& sys) {
    const TridiagonalMatrix t = extract_tridiagonal(sys.A);
    return finish_report(sys, tridiag_solve(t, negate(sys.b)), "tridiagonal", false);
}

}  // namespace

const char* to_string(Structure s) {
    switch (s) {
        case Structure::general: return "general";
        case Structure::two_warehouse: return "two-warehouse";
        case Structure::star: return "star";
        case Structure::linear_chain: return "linear-chain";
    }
    return "?";
}

LinearSystem build_system(const EchelonSpec& spec) {
    validate(spec);
    const std::size_t n = spec.size();

    LinearSystem sys;
    sys.A = DenseMatrix(n, n);
    sys.b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& w = spec.warehouses[i];
        double outgoing = 0.0;
        for (std::size_t j = 0; j < n; ++j) outgoing += spec.transshipment(i, j);
        sys.A(i, i) = -(w.max_supply / w.max_level + w.deterioration + outgoing / w.max_level);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) {
                sys.A(i, j) = spec.transshipment(i, j) / spec.warehouses[j].max_level;
            }
        }
        sys.b[i] = w.max_supply - w.demand;
    }

    sys.structure = detect_structure(spec);
    const bool levels_equal = std::all_of(
        spec.warehouses.begin(), spec.warehouses.end(),
        [&](const WarehouseParams& w) { return w.max_level == spec.warehouses[0].max_level; });
    sys.symmetric = levels_equal && spec.gamma_symmetric();
    sys.spec = spec;
    return sys;
}

EquilibriumReport equilibrium(const LinearSystem& sys, SolveMethod method) {
    if (method == SolveMethod::dense) return solve_dense(sys, "dense", false);
    switch (sys.structure) {
        case Structure::two_warehouse:
            return solve_two_warehouse(sys);
        case Structure::star:
            try {
                return solve_star(sys);
            } catch (const BreakdownError&) {
                return solve_dense(sys, "dense", true);
            }
        case Structure::linear_chain:
            try {
                return solve_linear_chain(sys);
            } catch (const BreakdownError&) {
                return solve_dense(sys, "dense", true);
            }
        case Structure::general:
            break;
    }
    return solve_dense(sys, "dense", false);
}

EquilibriumReport equilibrium(const EchelonSpec& spec, SolveMethod method) {
    return equilibrium(build_system(spec), method);
}

EquilibriumReport equilibrium_two_warehouse(const EchelonSpec& spec) {
    if (spec.size() != 2) throw NumericalError("two-warehouse route requires exactly 2 warehouses");
    return solve_two_warehouse(build_system(spec));
}

EquilibriumReport equilibrium_star(const EchelonSpec& spec) {
    if (!is_star_pattern(spec.transshipment)) {
        throw NumericalError("star route requires all transshipment incident to warehouse 1");
    }
    const LinearSystem sys = build_system(spec);
    try {
        return solve_star(sys);
    } catch (const BreakdownError&) {
        return solve_dense(sys, "dense", true);
    }
}

EquilibriumReport equilibrium_linear_chain(const EchelonSpec& spec) {
    if (!is_path_pattern(spec.transshipment)) {
        throw NumericalError("linear-chain route requires adjacent-only transshipment");
    }
    const LinearSystem sys = build_system(spec);
    try {
        return solve_linear_chain(sys);
    } catch (const BreakdownError&) {
        return solve_dense(sys, "dense", true);
    }
}

TrajectorySeries solve_trajectory(const LinearSystem& sys, const Vector& y0, const Vector& times,
                                  ExecutionPolicy policy) {
    const std::size_t n = sys.A.rows();
    if (y0.size() != n) throw NumericalError("solve_trajectory: y0 length mismatch");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0.0) || (k > 0 && !(times[k] > times[k - 1]))) {
            throw NumericalError("solve_trajectory: times must be nonnegative and strictly increasing");
        }
    }

    TrajectorySeries series;
    series.times = times;
    series.states.resize(times.size());

    const bool tridiagonal = sys.structure == Structure::linear_chain;
    parallel_for(
        times.size(),
        [&](std::size_t k) {
            const DenseMatrix e = expm(sys.A, times[k]);
            Vector w(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    s += (e(i, j) - (i == j ? 1.0 : 0.0)) * sys.b[j];
                }
                w[i] = s;
            }
            Vector z;
            if (tridiagonal) {
                try {
                    z = tridiag_solve(extract_tridiagonal(sys.A), std::move(w));
                } catch (const BreakdownError&) {
                    w.assign(n, 0.0);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j)
                            w[i] += (e(i, j) - (i == j ? 1.0 : 0.0)) * sys.b[j];
                    z = lu_solve(sys.A, std::move(w));
                }
            } else {
                z = lu_solve(sys.A, std::move(w));
            }
            Vector y = e * y0;
            for (std::size_t i = 0; i < n; ++i) y[i] += z[i];
            series.states[k] = std::move(y);
        },
        policy);
    return series;
}

}  // namespace invnet
