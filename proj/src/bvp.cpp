#include "kerrdiff/bvp.hpp"

#include <algorithm>
#include <cmath>

#include "kerrdiff/linalg.hpp"

namespace kerrdiff {

namespace {

// Coefficient of U in the second-order equation:
// c(z, |U|^2) = Gamma^2 - kappa^2 [1 - (eps(z) + alpha |U|^2)].
Cplx coefficient(const ProblemParams& P, const Cplx& eps, double alpha,
                 double u2) {
    const double k2 = P.kappa * P.kappa;
    return P.gamma * P.gamma - k2 * (1.0 - eps) + k2 * alpha * u2;
}

// Scaled residual used by Newton: interior rows carry h^2, boundary rows h,
// keeping every entry O(1) so the stopping test is meaningful near roundoff.
std::vector<Cplx> scaled_residual(const std::vector<Cplx>& u,
                                  const std::vector<Cplx>& eps,
                                  const Grid& g, const ProblemParams& P,
                                  double alpha) {
    const int n = g.n;
    const double h = g.h;
    std::vector<Cplx> r(static_cast<std::size_t>(n));
    for (int i = 1; i < n - 1; ++i)
        r[i] = u[i - 1] - 2.0 * u[i] + u[i + 1] +
               h * h * coefficient(P, eps[i], alpha, std::norm(u[i])) * u[i];
    const Cplx iG{0.0, P.gamma};
    const Cplx du_lo = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    const Cplx du_hi =
        (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
    r[0] = h * (iG * u[0] + du_lo);
    r[n - 1] = h * (iG * u[n - 1] - du_hi - 2.0 * iG * P.a_inc);
    return r;
}

double sup_norm(const std::vector<Cplx>& v) {
    double m = 0.0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

// 2x2 real block of multiplication by a complex scalar s.
struct Block {
    double a, b, c, d;
};

Block scalar_block(Cplx s) { return {s.real(), -s.imag(), s.imag(), s.real()}; }

void add_block(linalg::BandedLU& J, int row_node, int col_node,
               const Block& blk) {
    const int r = 2 * row_node;
    const int c = 2 * col_node;
    J.at(r, c) += blk.a;
    J.at(r, c + 1) += blk.b;
    J.at(r + 1, c) += blk.c;
    J.at(r + 1, c + 1) += blk.d;
}

}  // namespace

double BvpResidual::sup() const {
    double m = std::max(std::abs(upper_bc), std::abs(lower_bc));
    for (const auto& x : interior) m = std::max(m, std::abs(x));
    return m;
}

BvpResidual bvp_residual(const std::vector<Cplx>& u, const Grid& grid,
                         const ProblemParams& params,
                         const PermittivityProfile& profile, double alpha) {
    if (grid.n < 5) throw std::domain_error("bvp_residual: need grid.n >= 5");
    if (u.size() != static_cast<std::size_t>(grid.n))
        throw std::domain_error("bvp_residual: sample size mismatch");
    const int n = grid.n;
    const double h = grid.h;
    BvpResidual r;
    r.interior.resize(static_cast<std::size_t>(n - 2));
    for (int i = 1; i < n - 1; ++i) {
        const Cplx eps = profile.eval(grid.nodes[i]);
        const Cplx upp = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (h * h);
        r.interior[i - 1] =
            upp + coefficient(params, eps, alpha, std::norm(u[i])) * u[i];
    }
    const Cplx iG{0.0, params.gamma};
    const Cplx du_lo = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
    const Cplx du_hi =
        (3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) / (2.0 * h);
    r.lower_bc = iG * u[0] + du_lo;
    r.upper_bc = iG * u[n - 1] - du_hi - 2.0 * iG * params.a_inc;
    return r;
}

FieldSolution solve_bvp(const ProblemParams& params,
                        const PermittivityProfile& profile, const Grid& grid,
                        const SolveOptions& opts) {
    if (grid.n < 5) throw std::domain_error("solve_bvp: need grid.n >= 5");
    const int n = grid.n;
    const double h = grid.h;
    const double k2 = params.kappa * params.kappa;
    const double alpha = params.alpha;

    std::vector<Cplx> eps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eps[i] = profile.eval(grid.nodes[i]);

    std::vector<Cplx> u(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) u[i] = incident_field(grid.nodes[i], params);

    // Interleaved real unknowns (Re U_i, Im U_i); boundary rows couple three
    // nodes, so the band is kl = ku = 5.
    const int N = 2 * n;
    linalg::BandedLU J(N, 5, 5);
    std::vector<double> rhs(static_cast<std::size_t>(N));
    bool converged = false;

    for (int it = 0; it < opts.max_iters; ++it) {
        auto res = scaled_residual(u, eps, grid, params, alpha);
        const double rnorm = sup_norm(res);

        J.zero();
        for (int i = 1; i < n - 1; ++i) {
            add_block(J, i, i - 1, {1.0, 0.0, 0.0, 1.0});
            add_block(J, i, i + 1, {1.0, 0.0, 0.0, 1.0});
            // d/dU of h^2 [c_lin + kappa^2 alpha |U|^2] U, split into the
            // complex-linear part and the |U|^2 U real Jacobian.
            const Cplx beta = coefficient(params, eps[i], 0.0, 0.0);
            Block blk = scalar_block(h * h * beta);
            const double x = u[i].real();
            const double y = u[i].imag();
            const double g = h * h * k2 * alpha;
            blk.a += g * (3.0 * x * x + y * y) - 2.0;
            blk.b += g * 2.0 * x * y;
            blk.c += g * 2.0 * x * y;
            blk.d += g * (x * x + 3.0 * y * y) - 2.0;
            add_block(J, i, i, blk);
        }
        const double gh = params.gamma * h;
        add_block(J, 0, 0, {-1.5, -gh, gh, -1.5});
        add_block(J, 0, 1, {2.0, 0.0, 0.0, 2.0});
        add_block(J, 0, 2, {-0.5, 0.0, 0.0, -0.5});
        add_block(J, n - 1, n - 1, {-1.5, -gh, gh, -1.5});
        add_block(J, n - 1, n - 2, {2.0, 0.0, 0.0, 2.0});
        add_block(J, n - 1, n - 3, {-0.5, 0.0, 0.0, -0.5});

        try {
            J.factor();
        } catch (const std::runtime_error&) {
            throw std::runtime_error(
                "solve_bvp: singular Jacobian (possible eigenvalue "
                "proximity)");
        }
        for (int i = 0; i < n; ++i) {
            rhs[2 * i] = -res[i].real();
            rhs[2 * i + 1] = -res[i].imag();
        }
        const auto dv = J.solve(rhs);

        std::vector<Cplx> step(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) step[i] = Cplx(dv[2 * i], dv[2 * i + 1]);

        // Halve the step until the residual norm decreases.
        double lambda = 1.0;
        std::vector<Cplx> trial(static_cast<std::size_t>(n));
        for (int cut = 0; cut < 20; ++cut) {
            for (int i = 0; i < n; ++i) trial[i] = u[i] + lambda * step[i];
            if (sup_norm(scaled_residual(trial, eps, grid, params, alpha)) <
                rnorm)
                break;
            lambda *= 0.5;
        }
        u = trial;
        if (lambda * sup_norm(step) <= opts.tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("solve_bvp: Newton did not converge");

    FieldSolution sol;
    sol.grid = grid;
    sol.u = std::move(u);
    // Boundary values give the amplitudes directly: U(d) = a_inc + a_scat,
    // U(-d) = b_scat.
    sol.a_scat = sol.u[n - 1] - params.a_inc;
    sol.b_scat = sol.u[0];
    sol.residual = residual_norm(sol.u, profile, grid, params, alpha,
                                 KernelConvention{1}, opts.rule);
    return sol;
}

}  // namespace kerrdiff
