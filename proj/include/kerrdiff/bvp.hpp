#pragma once

#include "kerrdiff/solver.hpp"

namespace kerrdiff {

/// Residuals of the equivalent Sturm-Liouville form
///   U'' + {Gamma^2 - kappa^2 [1 - (eps + alpha|U|^2)]} U = 0,
///   i Gamma U(d)  - U'(d)  = 2 i Gamma a_inc,
///   i Gamma U(-d) + U'(-d) = 0,
/// evaluated with second-order differences (central inside, one-sided at the
/// faces).
struct BvpResidual {
    std::vector<Cplx> interior;  // n - 2 entries, nodes 1 .. n-2
    Cplx upper_bc{0.0, 0.0};
    Cplx lower_bc{0.0, 0.0};

    double sup() const;
};

/// Requires grid.n >= 5 (one-sided stencils need three nodes).
BvpResidual bvp_residual(const std::vector<Cplx>& u, const Grid& grid,
                         const ProblemParams& params,
                         const PermittivityProfile& profile, double alpha);

/// Damped-Newton solve of the finite-difference boundary-value problem on
/// the real/imaginary split (|U|^2 U is not complex-differentiable; the
/// Jacobian is assembled over 2n real unknowns, banded). Initial guess
/// U_inc; step halving up to 20 times globalizes. Amplitudes recovered from
/// the boundary values; the FieldSolution residual field carries the
/// integral-equation residual of the result as the cross-check diagnostic.
/// Throws std::runtime_error on Newton failure or a singular Jacobian.
FieldSolution solve_bvp(const ProblemParams& params,
                        const PermittivityProfile& profile, const Grid& grid,
                        const SolveOptions& opts);

}  // namespace kerrdiff
