#pragma once

#include <functional>

#include "kerrdiff/model.hpp"

namespace kerrdiff {

enum class QuadRule { TrapezoidSplit, SimpsonSplit };

/// Composite rule over [-d, d] split at a collocation node, so the kink of
/// the |z - z0| kernel never sits inside a panel.
struct QuadratureScheme {
    QuadRule rule = QuadRule::TrapezoidSplit;
    Grid grid;
};

/// Uniform closed grid with n nodes (odd, >= 3) on [-d, d], h = 2d/(n-1).
/// Throws std::domain_error on even n, n < 3 or d <= 0.
Grid build_grid(int n, double d);

/// Approximates  integral_{-d}^{d} kernel(target_z, z0) * weight(z0) dz0
/// with the composite rule applied separately on [-d, target_z] and
/// [target_z, d]. target_z must be a grid node (Nystrom collocation);
/// otherwise std::domain_error.
Cplx integrate_kernel_weighted(
    const QuadratureScheme& scheme, double target_z,
    const std::vector<Cplx>& weight_samples,
    const std::function<Cplx(double, double)>& kernel_eval);

namespace detail {

/// Index of target_z in the grid, or throws std::domain_error.
int node_index(const Grid& grid, double target_z);

/// Quadrature weights of the split composite rule for the given target node.
/// Trapezoid weights are target-independent; Simpson weights are not. Odd
/// interval counts on a side use Simpson plus a closing 3/8 panel, except a
/// single interval which falls back to the trapezoid.
std::vector<double> split_weights(QuadRule rule, int n, double h,
                                  int target_idx);

}  // namespace detail

}  // namespace kerrdiff
