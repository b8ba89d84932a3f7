#include <numbers>

#include "doctest.h"
#include "kerrdiff/bvp.hpp"
#include "support/oracles.hpp"

using namespace kerrdiff;
using doctest::Approx;

TEST_SUITE_BEGIN("bvp");

namespace {

const double kInv4Pi = 1.0 / (4.0 * std::numbers::pi);

ProblemParams slab_params(double alpha) {
    return make_params(1.0, 0.0, kInv4Pi, alpha, {1.0, 0.0});
}

SolveOptions bvp_opts(double tol = 1e-12) {
    SolveOptions o;
    o.tol = tol;
    o.max_iters = 50;
    return o;
}

}  // namespace

TEST_CASE("bvp_residual on reference fields") {
    const auto p = slab_params(0.0);
    const Grid g = build_grid(257, p.d);
    const auto vac = PermittivityProfile::constant({1.0, 0.0}, p.d);

    SUBCASE("incident wave solves the vacuum problem to O(h^2)") {
        std::vector<Cplx> u(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) u[i] = incident_field(g.nodes[i], p);
        const auto r = bvp_residual(u, g, p, vac, 0.0);
        const double bound =
            10.0 * g.h * g.h * p.kappa * p.kappa * std::abs(p.a_inc);
        CHECK(r.sup() <= bound);
    }
    SUBCASE("zero field fails only the driven boundary condition") {
        std::vector<Cplx> zeros(static_cast<std::size_t>(g.n), Cplx(0, 0));
        const auto r = bvp_residual(zeros, g, p, vac, 0.0);
        for (const auto& v : r.interior) CHECK(std::abs(v) == 0.0);
        CHECK(std::abs(r.lower_bc) == 0.0);
        const Cplx expect = -2.0 * Cplx(0.0, p.gamma) * p.a_inc;
        CHECK(std::abs(r.upper_bc - expect) < 1e-15);
    }
    SUBCASE("needs at least five nodes") {
        const Grid tiny = build_grid(3, p.d);
        std::vector<Cplx> u(3, Cplx(0, 0));
        CHECK_THROWS_AS(bvp_residual(u, tiny, p, vac, 0.0),
                        std::domain_error);
    }
}

TEST_CASE("converged IE solution nearly solves the BVP, at order >= 1.8") {
    const auto p = slab_params(0.05);
    const auto eps = PermittivityProfile::constant({1.5, 0.0}, p.d);
    SolveOptions popts;
    popts.scheme = IterScheme::Picard;
    std::vector<double> sups;
    for (int n : {257, 513, 1025, 2049}) {
        const Grid g = build_grid(n, p.d);
        auto [sol, tr] = solve_picard(p, eps, g, popts);
        REQUIRE(tr.converged);
        sups.push_back(bvp_residual(sol.u, g, p, eps, p.alpha).sup());
    }
    CHECK(testsupport::fitted_order(sups) > 1.8);
}

TEST_CASE("solve_bvp recovers the vacuum field") {
    const auto p = slab_params(0.0);
    const auto vac = PermittivityProfile::constant({1.0, 0.0}, p.d);
    const Grid g = build_grid(257, p.d);
    const auto sol = solve_bvp(p, vac, g, bvp_opts());
    double m = 0.0;
    for (int i = 0; i < g.n; ++i)
        m = std::max(m, std::abs(sol.u[i] - incident_field(g.nodes[i], p)));
    CHECK(m < 10.0 * g.h * g.h);
    CHECK(std::abs(sol.a_scat) < 10.0 * g.h * g.h);
}

TEST_CASE("solve_bvp matches the analytic slab and the IE route") {
    const auto p = slab_params(0.0);
    const auto eps = PermittivityProfile::constant({1.5, 0.0}, p.d);
    const Grid g = build_grid(513, p.d);
    const auto bv = solve_bvp(p, eps, g, bvp_opts());

    double m = 0.0;
    for (int i = 0; i < g.n; ++i)
        m = std::max(m, std::abs(bv.u[i] - testsupport::slab_field(
                                               p.kappa, p.phi_angle, p.d,
                                               {1.5, 0.0}, p.a_inc,
                                               g.nodes[i])));
    CHECK(m < 10.0 * g.h * g.h);

    SolveOptions popts;
    popts.scheme = IterScheme::Picard;
    auto [ie, tr] = solve_picard(p, eps, g, popts);
    REQUIRE(tr.converged);
    double gap = 0.0;
    for (int i = 0; i < g.n; ++i)
        gap = std::max(gap, std::abs(bv.u[i] - ie.u[i]));
    CHECK(gap < 10.0 * g.h * g.h);
}

TEST_CASE("solve_bvp matches Picard on the Kerr slab") {
    const auto p = slab_params(0.05);
    const auto eps = PermittivityProfile::constant({1.5, 0.0}, p.d);
    const Grid g = build_grid(513, p.d);
    const auto bv = solve_bvp(p, eps, g, bvp_opts());
    SolveOptions popts;
    popts.scheme = IterScheme::Picard;
    auto [ie, tr] = solve_picard(p, eps, g, popts);
    REQUIRE(tr.converged);
    double gap = 0.0;
    for (int i = 0; i < g.n; ++i)
        gap = std::max(gap, std::abs(bv.u[i] - ie.u[i]));
    CHECK(gap < 10.0 * g.h * g.h);
}

TEST_CASE("inhomogeneous Kerr layer: IE and BVP routes agree") {
    // eps(z) = 1.3 + 0.2 cos(2z), oblique incidence, cubic nonlinearity on:
    // nothing here is constant, so both discretizations exercise the full
    // coefficient machinery.
    const auto p = make_params(1.0, 0.35, kInv4Pi, 0.04, {1.0, 0.0});
    const auto eps = PermittivityProfile::trig(
        {{{1.3, 0.0}, 0.0}, {{0.1, 0.0}, 2.0}, {{0.1, 0.0}, -2.0}}, p.d);
    SolveOptions popts;
    popts.scheme = IterScheme::Picard;

    std::vector<double> gaps;
    for (int n : {257, 513, 1025}) {
        const Grid g = build_grid(n, p.d);
        auto [ie, tr] = solve_picard(p, eps, g, popts);
        REQUIRE(tr.converged);
        const auto bv = solve_bvp(p, eps, g, bvp_opts());
        double gap = 0.0;
        for (int i = 0; i < g.n; ++i)
            gap = std::max(gap, std::abs(bv.u[i] - ie.u[i]));
        gaps.push_back(gap);
        CHECK(gap < 10.0 * g.h * g.h);

        const FluxBalance fb = flux_balance(ie, p);
        CHECK(std::abs(fb.deficit) < 50.0 * g.h * g.h);
    }
    CHECK(testsupport::fitted_order(gaps) > 1.8);
}

TEST_CASE("flux invariant: Im(conj(U) U') is constant for real layers") {
    const auto p = slab_params(0.05);
    const auto eps = PermittivityProfile::constant({1.5, 0.0}, p.d);
    const Grid g = build_grid(1025, p.d);
    const auto sol = solve_bvp(p, eps, g, bvp_opts());
    std::vector<double> w;
    for (int i = 1; i < g.n - 1; ++i) {
        const Cplx du = (sol.u[i + 1] - sol.u[i - 1]) / (2.0 * g.h);
        w.push_back(std::imag(std::conj(sol.u[i]) * du));
    }
    const double w0 = w[w.size() / 2];
    for (double v : w) CHECK(std::abs(v - w0) < 50.0 * g.h * g.h);
}

TEST_CASE("lower boundary identity holds for converged solutions") {
    const auto p = slab_params(0.05);
    const auto eps = PermittivityProfile::constant({1.5, 0.0}, p.d);
    const Grid g = build_grid(513, p.d);
    const auto sol = solve_bvp(p, eps, g, bvp_opts());
    const Cplx du_lo =
        (-3.0 * sol.u[0] + 4.0 * sol.u[1] - sol.u[2]) / (2.0 * g.h);
    const Cplx r = Cplx(0.0, p.gamma) * sol.u[0] + du_lo;
    CHECK(std::abs(r) < 10.0 * g.h * g.h);
}

TEST_SUITE_END();
