#pragma once

#include <string>

#include "invnet/echelon.hpp"
#include "invnet/linalg.hpp"
#include "invnet/netspec.hpp"
#include "invnet/oracle.hpp"

namespace invnet {

// Right-hand side of the m-echelon system in its rearranged polynomial form:
// supply pulled from the echelon above, deterioration, and the pull of the
// echelon below; the bottom echelon faces the terminal demand.
Vector chain_rhs(const ChainSpec& spec, const Vector& x);

// Analytic Jacobian of chain_rhs; tridiagonal by construction.
TridiagonalMatrix chain_jacobian(const ChainSpec& spec, const Vector& x);

struct NewtonOptions {
    Vector initial;            // empty selects the zero vector
    double tolerance = 1e-10;  // on ||F(x)||_2
    int max_iterations = 100;
    bool damping = false;      // optional residual-halving safeguard, off by default
};

struct NewtonTrace {
    std::vector<Vector> iterates;
    Vector residual_norms;  // ||F(x(k))||_2, one per iterate
    bool converged = false;
    int iterations = 0;          // Newton updates applied
    bool dense_fallback = false; // a tridiagonal solve broke down
    bool within_capacity = false;// final iterate lies in [0, C_i]^m
    std::string failure;         // reason when not converged
};

// `equilibrium` is empty unless the trace converged.
struct NewtonResult {
    Vector equilibrium;
    NewtonTrace trace;
};

// Plain Newton iteration x(k+1) = x(k) - J(x(k))^{-1} F(x(k)) with the
// tridiagonal Jacobian solved by the Thomas algorithm.
NewtonResult newton_solve(const ChainSpec& spec, const NewtonOptions& options = {});

// The three families of inequalities that certify a stable equilibrium.
// Sufficient, not necessary.
struct Condition3Report {
    std::vector<bool> flags;  // one inequality per echelon
    bool satisfied = false;
};

struct KantorovichReport {
    bool applicable = false;        // the diagonal-dominance bound requires Condition3Report
    double lipschitz = 0.0;         // M
    double initial_residual = 0.0;  // |F(0)|
    double inverse_bound = 0.0;     // bound on ||DF(0)^{-1}||
    double inequality_lhs = 0.0;    // compared against 1/16
    bool satisfied = false;
};

struct StabilityCertificate {
    Condition3Report condition3;
    KantorovichReport kantorovich;
};

Condition3Report stability_condition(const ChainSpec& spec);

// Convergence certificate for Newton started from the zero vector. Marked
// not applicable when the stability condition fails (no claim either way).
StabilityCertificate kantorovich_certificate(const ChainSpec& spec);

// Forward simulation by fixed-step RK4 integration of chain_rhs.
TrajectorySeries simulate_chain(const ChainSpec& spec, const Vector& x0, const Vector& times,
                                double step = oracle::kDefaultRk4Step);

}  // namespace invnet
