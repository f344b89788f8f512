#pragma once

#include <string>

#include "invnet/linalg.hpp"
#include "invnet/netspec.hpp"
#include "invnet/parallel.hpp"

namespace invnet {

// Transshipment topologies with a dedicated equilibrium route.
enum class Structure { general, two_warehouse, star, linear_chain };

const char* to_string(Structure s);

// The linear one-echelon system y' = A y + b. Off-diagonal entries of A are
// nonnegative, diagonal entries negative, b_i = mu_i - lambda_i. The
// originating spec travels along so structured routes can use the raw rates.
struct LinearSystem {
    DenseMatrix A;
    Vector b;
    Structure structure = Structure::general;
    bool symmetric = false;  // A equals its transpose: equal capacities, symmetric rates
    EchelonSpec spec;
};

LinearSystem build_system(const EchelonSpec& spec);

struct TrajectorySeries {
    Vector times;
    std::vector<Vector> states;

    std::size_t dimension() const { return states.empty() ? 0 : states.front().size(); }
};

enum class SolveMethod { auto_detect, dense };

struct EquilibriumReport {
    Vector levels;                       // y*
    bool stable = false;                 // Gershgorin bound < 0
    double gershgorin_bound = 0.0;       // upper bound on Re(eigenvalues of A)
    bool positivity_guaranteed = false;  // every mu_i > lambda_i
    std::string method;                  // route that produced the levels
    bool dense_fallback = false;         // structured route broke down
    double residual = 0.0;               // ||A y* + b||_inf
};

// Solves A y* + b = 0, routing through the structured path matching the
// system's tag (or the dense path when forced / no structure applies).
EquilibriumReport equilibrium(const LinearSystem& sys, SolveMethod method = SolveMethod::auto_detect);
EquilibriumReport equilibrium(const EchelonSpec& spec, SolveMethod method = SolveMethod::auto_detect);

// Adjugate closed form for n = 2; det(A) > 0 always holds for valid specs.
EquilibriumReport equilibrium_two_warehouse(const EchelonSpec& spec);

// Hub-and-spoke rate pattern: A = D + E with E of rank two, inverted through
// the Sherman-Morrison-Woodbury update; falls back to dense on breakdown.
EquilibriumReport equilibrium_star(const EchelonSpec& spec);

// Adjacent-only rate pattern: A is tridiagonal; falls back to dense on
// breakdown.
EquilibriumReport equilibrium_linear_chain(const EchelonSpec& spec);

// Evaluates y(t) = e^{At} y0 + A^{-1}(e^{At} - I) b at each requested time.
// Each sample is an independent exponential evaluation (no step chaining);
// the A^{-1} term is obtained by a linear solve. Times must be nonnegative
// and strictly increasing; a leading t = 0 sample reproduces y0 exactly.
TrajectorySeries solve_trajectory(const LinearSystem& sys, const Vector& y0, const Vector& times,
                                  ExecutionPolicy policy = ExecutionPolicy::serial);

}  // namespace invnet
