#pragma once

#include "kerrdiff/model.hpp"
#include "kerrdiff/quadrature.hpp"

namespace kerrdiff {

/// Exponent multiplier m of the kernel s0 * exp(i*m*b*|t|). m = 1 is the
/// Green's-function form the solver uses; m = 2 is the form the closed-form
/// lemma algebra is written in. The two differ in the source material and
/// both are kept testable.
struct KernelConvention {
    int exponent_factor = 1;
};

inline constexpr KernelConvention kGreenKernel{1};
inline constexpr KernelConvention kLemmaKernel{2};

/// k(t) = s0 * exp(i*m*b*|t|); symmetric in t <-> -t.
Cplx kernel(double t, const ProblemParams& params, KernelConvention conv);

/// U_inc(z) = a_inc * exp(-i*Gamma*(z - d)); unit-modulus phase for |a|=1.
Cplx incident_field(double z, const ProblemParams& params);

/// A U = integral k(z - z0) * [1 - eps(z0)] * U(z0) dz0 at every node.
/// Requires a real profile; throws std::domain_error otherwise.
std::vector<Cplx> apply_A(const std::vector<Cplx>& u,
                          const PermittivityProfile& profile,
                          const QuadratureScheme& scheme,
                          const ProblemParams& params, KernelConvention conv);

/// Complex-weight variant: integral k(z - z0) * g(z0) * U(z0) dz0 with
/// g = eps(z0) - 1. For a real profile apply_A1 = -apply_A sample-wise.
std::vector<Cplx> apply_A1(const std::vector<Cplx>& u,
                           const PermittivityProfile& profile,
                           const QuadratureScheme& scheme,
                           const ProblemParams& params, KernelConvention conv);

/// Cubic operator F(U) = integral k(z - z0) * |U|^2 U dz0 at every node.
std::vector<Cplx> apply_F(const std::vector<Cplx>& u,
                          const QuadratureScheme& scheme,
                          const ProblemParams& params, KernelConvention conv);

/// One application of the fixed-point map
///   T(U) = -A U + alpha F(U) + U_inc = A1 U + alpha F(U) + U_inc.
/// The second form holds for complex profiles too and is the one computed;
/// the minus sign of the printed lossy-case kernel lives in that rewrite.
std::vector<Cplx> apply_T(const std::vector<Cplx>& u,
                          const PermittivityProfile& profile,
                          const QuadratureScheme& scheme,
                          const ProblemParams& params, double alpha,
                          KernelConvention conv);

namespace detail {

/// kernel values on the uniform grid depend on |i - j| only; one row serves
/// every collocation point.
std::vector<Cplx> kernel_toeplitz_row(const Grid& grid,
                                      const ProblemParams& params,
                                      KernelConvention conv);

/// out_i = sum_j W(i)_j * k_|i-j| * s_j for precomputed weighted samples s.
std::vector<Cplx> nystrom_apply(const std::vector<Cplx>& weighted_samples,
                                const QuadratureScheme& scheme,
                                const std::vector<Cplx>& kernel_row);

}  // namespace detail

}  // namespace kerrdiff
