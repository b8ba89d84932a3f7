#pragma once

#include <optional>

#include "kerrdiff/operators.hpp"

namespace kerrdiff {

enum class IterScheme { Picard, Coupled };
enum class InitialGuess { Zero, Incident };

struct SolveOptions {
    int max_iters = 400;
    double tol = 1e-10;  // sup-norm threshold on successive iterates
    IterScheme scheme = IterScheme::Picard;
    InitialGuess initial = InitialGuess::Incident;
    bool record_trace = true;
    KernelConvention convention{1};
    QuadRule rule = QuadRule::TrapezoidSplit;
    /// t0 or t1 from a ContractionReport, copied into the trace when given.
    std::optional<double> predicted_rate;
};

struct IterationTrace {
    std::vector<double> deltas;     // sup|U_{n+1} - U_n| per step
    std::vector<double> residuals;  // sup IE residual of U_n per step
    bool converged = false;
    int iters_used = 0;
    std::optional<double> predicted_rate;
    /// max|U| / max|U_inc| of the final iterate; recorded, not asserted.
    double sup_ratio_to_incident = 0.0;
};

/// Fixed-point iteration U_{n+1} = T(U_n). Non-convergence within max_iters
/// is reported in the trace; NaN or a sup-norm blow-up past 1e6*|a_inc|
/// throws std::runtime_error (divergence outside the contraction regime).
std::pair<FieldSolution, IterationTrace> solve_picard(
    const ProblemParams& params, const PermittivityProfile& profile,
    const Grid& grid, const SolveOptions& opts);

/// Frozen-coefficient scheme: each step solves the dense Nystrom system
/// (I + K_n) Psi = U_inc with weight 1 - (eps + alpha*|U_n|^2) and sets
/// U_{n+1} = Psi. A condition estimate above 1e12 throws std::runtime_error
/// (proximity to an eigenfunction of the frozen layer).
std::pair<FieldSolution, IterationTrace> solve_coupled(
    const ProblemParams& params, const PermittivityProfile& profile,
    const Grid& grid, const SolveOptions& opts);

/// Reflected/transmitted amplitudes from the one-sided kernel integrals
///   a_scat = -s0 * F_plus(d),
///   b_scat = a_inc * e^{2 i Gamma d} - s0 * F_minus(-d),
/// with the transmitted phase carrying Gamma (the printed e^{4 i pi delta}
/// drops it; the derivative identities restore it). Consistency with the
/// boundary values U(d) = a_inc + a_scat and U(-d) = b_scat holds to O(h^2).
std::pair<Cplx, Cplx> scattered_amplitudes(const std::vector<Cplx>& u,
                                           const PermittivityProfile& profile,
                                           double alpha, const Grid& grid,
                                           const ProblemParams& params,
                                           KernelConvention conv = {1},
                                           QuadRule rule =
                                               QuadRule::TrapezoidSplit);

/// Field outside the layer via the kernel integral of the solved interior
/// samples. Throws std::domain_error for |z| <= d.
Cplx extend_field(const std::vector<Cplx>& u, const Grid& grid,
                  const ProblemParams& params,
                  const PermittivityProfile& profile, double alpha, double z,
                  KernelConvention conv = {1},
                  QuadRule rule = QuadRule::TrapezoidSplit);

/// sup-node |U - T(U)|; zero (to roundoff) iff u is a discrete fixed point.
double residual_norm(const std::vector<Cplx>& u,
                     const PermittivityProfile& profile, const Grid& grid,
                     const ProblemParams& params, double alpha,
                     KernelConvention conv = {1},
                     QuadRule rule = QuadRule::TrapezoidSplit);

struct FluxBalance {
    double R = 0.0;
    double T = 0.0;
    double deficit = 0.0;  // 1 - R - T; zero for lossless layers
};

FluxBalance flux_balance(const FieldSolution& solution,
                         const ProblemParams& params);

}  // namespace kerrdiff
