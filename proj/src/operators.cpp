#include "kerrdiff/operators.hpp"

#include <cmath>

namespace kerrdiff {

namespace {

void check_convention(KernelConvention conv) {
    if (conv.exponent_factor != 1 && conv.exponent_factor != 2)
        throw std::domain_error("kernel convention factor must be 1 or 2");
}

void check_samples(const std::vector<Cplx>& u, const Grid& grid,
                   const char* who) {
    if (u.size() != static_cast<std::size_t>(grid.n))
        throw std::domain_error(std::string(who) +
                                ": sample count does not match grid");
}

}  // namespace

Cplx kernel(double t, const ProblemParams& params, KernelConvention conv) {
    check_convention(conv);
    const double m = static_cast<double>(conv.exponent_factor);
    return params.s0 * std::exp(Cplx(0.0, m * params.b * std::abs(t)));
}

Cplx incident_field(double z, const ProblemParams& params) {
    return params.a_inc * std::exp(Cplx(0.0, -params.gamma * (z - params.d)));
}

namespace detail {

std::vector<Cplx> kernel_toeplitz_row(const Grid& grid,
                                      const ProblemParams& params,
                                      KernelConvention conv) {
    check_convention(conv);
    const double m = static_cast<double>(conv.exponent_factor);
    std::vector<Cplx> row(static_cast<std::size_t>(grid.n));
    for (int k = 0; k < grid.n; ++k)
        row[k] = params.s0 *
                 std::exp(Cplx(0.0, m * params.b * grid.h *
                                        static_cast<double>(k)));
    return row;
}

std::vector<Cplx> nystrom_apply(const std::vector<Cplx>& weighted_samples,
                                const QuadratureScheme& scheme,
                                const std::vector<Cplx>& kernel_row) {
    const int n = scheme.grid.n;
    std::vector<Cplx> out(static_cast<std::size_t>(n));
    if (scheme.rule == QuadRule::TrapezoidSplit) {
        // One weight vector serves every target.
        const auto w = split_weights(scheme.rule, n, scheme.grid.h, 0);
        std::vector<Cplx> s(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) s[j] = w[j] * weighted_samples[j];
        for (int i = 0; i < n; ++i) {
            Cplx acc{0.0, 0.0};
            for (int j = 0; j < n; ++j)
                acc += kernel_row[std::abs(i - j)] * s[j];
            out[i] = acc;
        }
        return out;
    }
    for (int i = 0; i < n; ++i) {
        const auto w = split_weights(scheme.rule, n, scheme.grid.h, i);
        Cplx acc{0.0, 0.0};
        for (int j = 0; j < n; ++j)
            acc += w[j] * kernel_row[std::abs(i - j)] * weighted_samples[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace detail

std::vector<Cplx> apply_A(const std::vector<Cplx>& u,
                          const PermittivityProfile& profile,
                          const QuadratureScheme& scheme,
                          const ProblemParams& params, KernelConvention conv) {
    check_samples(u, scheme.grid, "apply_A");
    if (!profile.is_real())
        throw std::domain_error("apply_A expects a real permittivity profile");
    const int n = scheme.grid.n;
    std::vector<Cplx> s(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        s[j] = (1.0 - profile.eval(scheme.grid.nodes[j])) * u[j];
    return detail::nystrom_apply(
        s, scheme, detail::kernel_toeplitz_row(scheme.grid, params, conv));
}

std::vector<Cplx> apply_A1(const std::vector<Cplx>& u,
                           const PermittivityProfile& profile,
                           const QuadratureScheme& scheme,
                           const ProblemParams& params,
                           KernelConvention conv) {
    check_samples(u, scheme.grid, "apply_A1");
    const int n = scheme.grid.n;
    std::vector<Cplx> s(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        s[j] = (profile.eval(scheme.grid.nodes[j]) - 1.0) * u[j];
    return detail::nystrom_apply(
        s, scheme, detail::kernel_toeplitz_row(scheme.grid, params, conv));
}

std::vector<Cplx> apply_F(const std::vector<Cplx>& u,
                          const QuadratureScheme& scheme,
                          const ProblemParams& params, KernelConvention conv) {
    check_samples(u, scheme.grid, "apply_F");
    const int n = scheme.grid.n;
    std::vector<Cplx> s(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) s[j] = std::norm(u[j]) * u[j];
    return detail::nystrom_apply(
        s, scheme, detail::kernel_toeplitz_row(scheme.grid, params, conv));
}

std::vector<Cplx> apply_T(const std::vector<Cplx>& u,
                          const PermittivityProfile& profile,
                          const QuadratureScheme& scheme,
                          const ProblemParams& params, double alpha,
                          KernelConvention conv) {
    check_samples(u, scheme.grid, "apply_T");
    const int n = scheme.grid.n;
    // -A U + alpha F(U) folded into one weighted pass:
    // (eps - 1 + alpha |U|^2) U under the kernel.
    std::vector<Cplx> s(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        s[j] = (profile.eval(scheme.grid.nodes[j]) - 1.0 +
                alpha * std::norm(u[j])) *
               u[j];
    auto out = detail::nystrom_apply(
        s, scheme, detail::kernel_toeplitz_row(scheme.grid, params, conv));
    for (int i = 0; i < n; ++i)
        out[i] += incident_field(scheme.grid.nodes[i], params);
    return out;
}

}  // namespace kerrdiff
