#include "kerrdiff/solver.hpp"

#include <algorithm>
#include <cmath>

#include "kerrdiff/linalg.hpp"

namespace kerrdiff {

namespace {

double sup_norm(const std::vector<Cplx>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

double sup_diff(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

bool finite(const std::vector<Cplx>& v) {
    for (const auto& x : v)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

std::vector<Cplx> initial_iterate(const ProblemParams& params,
                                  const Grid& grid, InitialGuess g) {
    std::vector<Cplx> u(static_cast<std::size_t>(grid.n), Cplx(0.0, 0.0));
    if (g == InitialGuess::Incident)
        for (int i = 0; i < grid.n; ++i)
            u[i] = incident_field(grid.nodes[i], params);
    return u;
}

FieldSolution finish_solution(std::vector<Cplx> u, const Grid& grid,
                              const ProblemParams& params,
                              const PermittivityProfile& profile,
                              const SolveOptions& opts) {
    FieldSolution sol;
    sol.grid = grid;
    sol.u = std::move(u);
    auto [a_sc, b_sc] = scattered_amplitudes(sol.u, profile, params.alpha,
                                             grid, params, opts.convention,
                                             opts.rule);
    sol.a_scat = a_sc;
    sol.b_scat = b_sc;
    sol.residual = residual_norm(sol.u, profile, grid, params, params.alpha,
                                 opts.convention, opts.rule);
    return sol;
}

void finish_trace(IterationTrace& tr, const std::vector<Cplx>& u,
                  const ProblemParams& params, const SolveOptions& opts) {
    tr.predicted_rate = opts.predicted_rate;
    const double a = std::abs(params.a_inc);
    tr.sup_ratio_to_incident = (a > 0.0) ? sup_norm(u) / a : 0.0;
}

}  // namespace

std::pair<FieldSolution, IterationTrace> solve_picard(
    const ProblemParams& params, const PermittivityProfile& profile,
    const Grid& grid, const SolveOptions& opts) {
    if (opts.scheme != IterScheme::Picard)
        throw std::domain_error("solve_picard called with scheme != Picard");
    if (opts.max_iters < 1 || !(opts.tol > 0.0))
        throw std::domain_error("solve_picard: bad stopping parameters");

    const QuadratureScheme qs{opts.rule, grid};
    const double blow_up = 1e6 * std::max(1.0, std::abs(params.a_inc));

    std::vector<Cplx> u = initial_iterate(params, grid, opts.initial);
    IterationTrace tr;
    for (int it = 1; it <= opts.max_iters; ++it) {
        auto next =
            apply_T(u, profile, qs, params, params.alpha, opts.convention);
        const double delta = sup_diff(next, u);
        if (!finite(next) || sup_norm(next) > blow_up)
            throw std::runtime_error(
                "solve_picard: iterates diverge (configuration outside the "
                "contraction regime)");
        if (opts.record_trace) {
            tr.deltas.push_back(delta);
            // For the fixed-point map, |T(U_n) - U_n| is exactly the IE
            // residual of U_n.
            tr.residuals.push_back(delta);
        }
        u = std::move(next);
        tr.iters_used = it;
        if (delta <= opts.tol) {
            tr.converged = true;
            break;
        }
    }
    finish_trace(tr, u, params, opts);
    return {finish_solution(std::move(u), grid, params, profile, opts), tr};
}

std::pair<FieldSolution, IterationTrace> solve_coupled(
    const ProblemParams& params, const PermittivityProfile& profile,
    const Grid& grid, const SolveOptions& opts) {
    if (opts.scheme != IterScheme::Coupled)
        throw std::domain_error("solve_coupled called with scheme != Coupled");
    if (opts.max_iters < 1 || !(opts.tol > 0.0))
        throw std::domain_error("solve_coupled: bad stopping parameters");

    const int n = grid.n;
    const QuadratureScheme qs{opts.rule, grid};
    const auto krow =
        detail::kernel_toeplitz_row(grid, params, opts.convention);
    std::vector<Cplx> f(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) f[i] = incident_field(grid.nodes[i], params);
    std::vector<Cplx> eps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eps[i] = profile.eval(grid.nodes[i]);

    std::vector<Cplx> u = initial_iterate(params, grid, opts.initial);
    IterationTrace tr;
    std::vector<Cplx> mat(static_cast<std::size_t>(n) * n);
    for (int it = 1; it <= opts.max_iters; ++it) {
        // (I + K_n) Psi = f with the coefficient frozen at the current
        // iterate: column weight 1 - (eps + alpha|U_n|^2).
        for (int i = 0; i < n; ++i) {
            const auto w = detail::split_weights(qs.rule, n, grid.h, i);
            for (int j = 0; j < n; ++j) {
                const Cplx wj =
                    w[j] * (1.0 - (eps[j] + params.alpha * std::norm(u[j])));
                mat[static_cast<std::size_t>(i) * n + j] =
                    krow[std::abs(i - j)] * wj;
            }
            mat[static_cast<std::size_t>(i) * n + i] += 1.0;
        }
        linalg::DenseLU lu(std::move(mat), n);
        if (lu.condition_estimate() > 1e12)
            throw std::runtime_error(
                "solve_coupled: near-singular linear system; the frozen "
                "layer is close to an eigenfunction configuration");
        auto psi = lu.solve(f);
        mat.assign(static_cast<std::size_t>(n) * n, Cplx(0.0, 0.0));

        const double delta = sup_diff(psi, u);
        if (!finite(psi))
            throw std::runtime_error("solve_coupled: iterates diverge");
        if (opts.record_trace) {
            tr.deltas.push_back(delta);
            tr.residuals.push_back(residual_norm(psi, profile, grid, params,
                                                 params.alpha,
                                                 opts.convention, opts.rule));
        }
        u = std::move(psi);
        tr.iters_used = it;
        if (delta <= opts.tol) {
            tr.converged = true;
            break;
        }
    }
    finish_trace(tr, u, params, opts);
    return {finish_solution(std::move(u), grid, params, profile, opts), tr};
}

std::pair<Cplx, Cplx> scattered_amplitudes(const std::vector<Cplx>& u,
                                           const PermittivityProfile& profile,
                                           double alpha, const Grid& grid,
                                           const ProblemParams& params,
                                           KernelConvention conv,
                                           QuadRule rule) {
    if (u.size() != static_cast<std::size_t>(grid.n))
        throw std::domain_error("scattered_amplitudes: sample size mismatch");
    const int n = grid.n;
    const double m = static_cast<double>(conv.exponent_factor);
    // One-sided integrals collapse to full-interval rules because the split
    // point is an endpoint.
    const auto w = detail::split_weights(rule, n, grid.h, 0);
    Cplx f_plus{0.0, 0.0};
    Cplx f_minus{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        const Cplx wt =
            w[j] *
            (1.0 - (profile.eval(grid.nodes[j]) + alpha * std::norm(u[j]))) *
            u[j];
        f_plus += std::exp(Cplx(0.0, m * params.gamma *
                                         (grid.d - grid.nodes[j]))) *
                  wt;
        f_minus += std::exp(Cplx(0.0, m * params.gamma *
                                          (grid.nodes[j] + grid.d))) *
                   wt;
    }
    const Cplx a_scat = -params.s0 * f_plus;
    const Cplx b_scat =
        params.a_inc * std::exp(Cplx(0.0, 2.0 * params.gamma * grid.d)) -
        params.s0 * f_minus;
    return {a_scat, b_scat};
}

Cplx extend_field(const std::vector<Cplx>& u, const Grid& grid,
                  const ProblemParams& params,
                  const PermittivityProfile& profile, double alpha, double z,
                  KernelConvention conv, QuadRule rule) {
    if (std::abs(z) <= grid.d)
        throw std::domain_error(
            "extend_field is defined outside the layer only (|z| > d)");
    const int n = grid.n;
    const double m = static_cast<double>(conv.exponent_factor);
    // No kink inside the interval: the full-interval composite rule applies.
    const auto w = detail::split_weights(rule, n, grid.h, 0);
    Cplx acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        const Cplx wt =
            w[j] *
            (1.0 - (profile.eval(grid.nodes[j]) + alpha * std::norm(u[j]))) *
            u[j];
        acc += params.s0 *
               std::exp(Cplx(0.0,
                             m * params.gamma * std::abs(z - grid.nodes[j]))) *
               wt;
    }
    return incident_field(z, params) - acc;
}

double residual_norm(const std::vector<Cplx>& u,
                     const PermittivityProfile& profile, const Grid& grid,
                     const ProblemParams& params, double alpha,
                     KernelConvention conv, QuadRule rule) {
    const QuadratureScheme qs{rule, grid};
    const auto tu = apply_T(u, profile, qs, params, alpha, conv);
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        m = std::max(m, std::abs(u[i] - tu[i]));
    return m;
}

FluxBalance flux_balance(const FieldSolution& solution,
                         const ProblemParams& params) {
    const double a2 = std::norm(params.a_inc);
    FluxBalance fb;
    if (a2 > 0.0) {
        fb.R = std::norm(solution.a_scat) / a2;
        fb.T = std::norm(solution.b_scat) / a2;
    }
    fb.deficit = 1.0 - fb.R - fb.T;
    return fb;
}

}  // namespace kerrdiff
