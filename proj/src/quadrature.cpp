#include "kerrdiff/quadrature.hpp"

#include <cmath>

namespace kerrdiff {

Grid build_grid(int n, double d) {
    if (n < 3) throw std::domain_error("build_grid: need n >= 3");
    if (n % 2 == 0) throw std::domain_error("build_grid: n must be odd");
    if (!(d > 0.0)) throw std::domain_error("build_grid: d must be > 0");

    Grid g;
    g.n = n;
    g.d = d;
    g.h = 2.0 * d / static_cast<double>(n - 1);
    g.nodes.resize(n);
    for (int i = 0; i < n; ++i)
        g.nodes[i] = -d + g.h * static_cast<double>(i);
    g.nodes.front() = -d;
    g.nodes.back() = d;
    return g;
}

namespace detail {

int node_index(const Grid& grid, double target_z) {
    const double x = (target_z - grid.nodes.front()) / grid.h;
    const int i = static_cast<int>(std::lround(x));
    if (i < 0 || i >= grid.n ||
        std::abs(grid.nodes[i] - target_z) > 1e-9 * grid.h)
        throw std::domain_error(
            "integrate_kernel_weighted: target_z is not a grid node");
    return i;
}

namespace {

// Adds the composite weights for m intervals starting at node `base`.
// Even m: Simpson. Odd m >= 3: Simpson plus a closing 3/8 panel, keeping
// fourth order. m == 1 degrades to the trapezoid on that single panel.
void add_simpson_side(std::vector<double>& w, int base, int m, double h) {
    if (m <= 0) return;
    if (m == 1) {
        w[base] += h / 2.0;
        w[base + 1] += h / 2.0;
        return;
    }
    int simpson_m = (m % 2 == 0) ? m : m - 3;
    for (int k = 0; k + 2 <= simpson_m; k += 2) {
        w[base + k] += h / 3.0;
        w[base + k + 1] += 4.0 * h / 3.0;
        w[base + k + 2] += h / 3.0;
    }
    if (m % 2 != 0) {
        const int b = base + simpson_m;
        w[b] += 3.0 * h / 8.0;
        w[b + 1] += 9.0 * h / 8.0;
        w[b + 2] += 9.0 * h / 8.0;
        w[b + 3] += 3.0 * h / 8.0;
    }
}

}  // namespace

std::vector<double> split_weights(QuadRule rule, int n, double h,
                                  int target_idx) {
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    if (rule == QuadRule::TrapezoidSplit) {
        // Splitting at a node leaves the composite trapezoid unchanged.
        for (int i = 1; i < n - 1; ++i) w[i] = h;
        w[0] = w[n - 1] = h / 2.0;
        return w;
    }
    add_simpson_side(w, 0, target_idx, h);
    add_simpson_side(w, target_idx, n - 1 - target_idx, h);
    return w;
}

}  // namespace detail

Cplx integrate_kernel_weighted(
    const QuadratureScheme& scheme, double target_z,
    const std::vector<Cplx>& weight_samples,
    const std::function<Cplx(double, double)>& kernel_eval) {
    const Grid& g = scheme.grid;
    if (weight_samples.size() != static_cast<std::size_t>(g.n))
        throw std::domain_error(
            "integrate_kernel_weighted: weight sample count != grid.n");
    const int t = detail::node_index(g, target_z);
    const auto w = detail::split_weights(scheme.rule, g.n, g.h, t);
    Cplx acc{0.0, 0.0};
    for (int j = 0; j < g.n; ++j)
        acc += w[j] * kernel_eval(target_z, g.nodes[j]) * weight_samples[j];
    return acc;
}

}  // namespace kerrdiff
