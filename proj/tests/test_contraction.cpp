#include <numbers>

#include "doctest.h"
#include "kerrdiff/contraction.hpp"
#include "kerrdiff/quadrature.hpp"
#include "support/oracles.hpp"

using namespace kerrdiff;
using doctest::Approx;

TEST_SUITE_BEGIN("contraction");

namespace {

const double kInv4Pi = 1.0 / (4.0 * std::numbers::pi);

ProblemParams slab_params(double alpha) {
    return make_params(1.0, 0.0, kInv4Pi, alpha, {1.0, 0.0});
}

}  // namespace

TEST_CASE("sup_bound") {
    const Grid g = build_grid(65, 0.5);
    const auto c15 = PermittivityProfile::constant({1.5, 0.0}, 0.5);
    CHECK(sup_bound(c15, g, false) == Approx(1.5));
    CHECK(sup_bound(c15, g, true) == Approx(0.5));

    const auto lossy = PermittivityProfile::constant({1.5, 0.05}, 0.5);
    CHECK(sup_bound(lossy, g, true) ==
          Approx(0.5024937810560445).epsilon(1e-14));
    CHECK_THROWS_AS(sup_bound(lossy, g, false), std::domain_error);

    // 1.3 + 0.2 cos(z) peaks at the midpoint z = 0
    const auto coz = PermittivityProfile::trig(
        {{{1.3, 0.0}, 0.0}, {{0.1, 0.0}, 1.0}, {{0.1, 0.0}, -1.0}}, 0.5);
    CHECK(sup_bound(coz, g, false) == Approx(1.5).epsilon(1e-14));
}

TEST_CASE("polynomial_PK") {
    CHECK(polynomial_PK(0.0, 3.0, 7.0, 2.5) == 2.5);
    CHECK(polynomial_PK(1.0, 1.0, 3.0, 2.0) == Approx(0.0));  // (p-1)^2(p+2)
    CHECK(polynomial_PK(2.0, 0.1, 1.0, 0.1) == Approx(-1.1).epsilon(1e-14));
}

TEST_CASE("positive_roots_PK") {
    SUBCASE("p^3 - 10p + 1 against an independent bisection") {
        const auto roots = positive_roots_PK(1.0, 10.0, 1.0);
        REQUIRE(roots.has_value());
        const double p_ext = std::sqrt(10.0 / 3.0);
        const double ref1 = testsupport::bisect_cubic(0.0, p_ext, 1.0, 10.0, 1.0);
        const double ref2 =
            testsupport::bisect_cubic(p_ext, 4.0, 1.0, 10.0, 1.0);
        CHECK(roots->first == Approx(ref1).epsilon(1e-13));
        CHECK(roots->second == Approx(ref2).epsilon(1e-13));
        CHECK(roots->first == Approx(0.10010030120552746).epsilon(1e-10));
        CHECK(roots->second == Approx(3.1110390520731).epsilon(1e-10));
        CHECK(std::abs(polynomial_PK(roots->first, 1.0, 10.0, 1.0)) <= 1e-12);
        CHECK(std::abs(polynomial_PK(roots->second, 1.0, 10.0, 1.0)) <= 1e-12);
    }
    SUBCASE("positive local minimum means no roots") {
        CHECK_FALSE(positive_roots_PK(1.0, 1.0, 5.0).has_value());
    }
    SUBCASE("double root boundary reports none") {
        // (p-1)^2 (p+2): P_K(p_ext) = 0 exactly
        CHECK_FALSE(positive_roots_PK(1.0, 3.0, 2.0).has_value());
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(positive_roots_PK(0.0, 1.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(positive_roots_PK(1.0, 1.0, 0.0), std::domain_error);
    }
    SUBCASE("D1 <= 0 means no roots") {
        CHECK_FALSE(positive_roots_PK(1.0, -0.5, 1.0).has_value());
        CHECK_FALSE(positive_roots_PK(1.0, 0.0, 1.0).has_value());
    }
}

TEST_CASE("root validity: sign pattern of P_K around (p1, p2)") {
    std::uniform_real_distribution<double> ud(0.01, 2.0);
    int found = 0;
    while (found < 25) {
        const double D0 = ud(testsupport::rng());
        const double D1 = ud(testsupport::rng());
        const double a = 0.2 * ud(testsupport::rng());
        const auto roots = positive_roots_PK(D0, D1, a);
        if (!roots) continue;
        ++found;
        const auto [p1, p2] = *roots;
        REQUIRE(p1 < p2);
        for (int i = 1; i <= 100; ++i) {
            const double p = p1 + (p2 - p1) * i / 101.0;
            CHECK(polynomial_PK(p, D0, D1, a) < 0.0);
        }
        for (int i = 1; i <= 50; ++i) {
            const double p = p1 * i / 51.0;
            CHECK(polynomial_PK(p, D0, D1, a) > 0.0);
        }
    }
}

TEST_CASE("real-case thresholds for E=1.5, q0=0.5, a=1") {
    const auto p = slab_params(0.01);
    const auto prof = PermittivityProfile::constant({1.5, 0.0}, p.d);
    const Grid g = build_grid(129, p.d);
    const auto r = check_real_case(p, prof, g);

    CHECK(r.E_or_E1 == Approx(1.5));
    CHECK(r.D1 == Approx(0.75).epsilon(1e-14));
    CHECK(r.alpha0 == Approx(0.125).epsilon(1e-12));
    CHECK(r.alpha1 == Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(r.satisfied);
    REQUIRE(r.p1.has_value());
    // t0 = 0.5 (0.5 + 0.03 p^2) at the chosen p
    CHECK(r.t_factor ==
          Approx(0.5 * (0.5 + 3 * 0.01 * r.chosen_p * r.chosen_p))
              .epsilon(1e-12));
    CHECK(r.t_factor < 1.0);
    CHECK(r.chosen_p > *r.p1);
    CHECK(r.chosen_p < *r.p2);
}

TEST_CASE("real-case linear branch at alpha = 0") {
    const auto p = slab_params(0.0);
    const auto prof = PermittivityProfile::constant({1.5, 0.0}, p.d);
    const Grid g = build_grid(65, p.d);
    const auto r = check_real_case(p, prof, g);
    CHECK(r.satisfied);  // (E-1) q0 = 0.25 < 1
    CHECK(r.t_factor == Approx(0.25).epsilon(1e-14));
    CHECK_FALSE(r.p_ext.has_value());
}

TEST_CASE("real case fails past the norm threshold") {
    // (E-1) q0 = 2.1 * 0.5 >= 1
    const auto p = slab_params(0.01);
    const auto prof = PermittivityProfile::constant({3.1, 0.0}, p.d);
    const Grid g = build_grid(65, p.d);
    const auto r = check_real_case(p, prof, g);
    CHECK_FALSE(r.satisfied);
    CHECK(r.D1 < 0.0);
    CHECK_THROWS_AS(
        check_real_case(p, PermittivityProfile::constant({1.5, 0.1}, p.d), g),
        std::domain_error);
}

TEST_CASE("complex-case thresholds for the lossy slab") {
    const auto p = slab_params(0.05);
    const auto prof = PermittivityProfile::constant({1.5, 0.05}, p.d);
    const Grid g = build_grid(129, p.d);
    const auto r = check_complex_case(p, prof, g);
    const double E1 = 0.5024937810560445;
    CHECK(r.E_or_E1 == Approx(E1).epsilon(1e-13));
    CHECK(r.D1 == Approx(1.0 - E1 * 0.5).epsilon(1e-13));
    const double D1 = 1.0 - E1 * 0.5;
    CHECK(r.alpha0 == Approx((4.0 / 27.0) * D1 * D1 * D1 / 0.5).epsilon(1e-12));
    CHECK(r.satisfied);
    CHECK(r.t_factor < 1.0);
}

TEST_CASE("complex case on a vacuum layer violates the strict premise") {
    const auto p = slab_params(0.0);
    const auto prof = PermittivityProfile::constant({1.0, 0.0}, p.d);
    const Grid g = build_grid(65, p.d);
    const auto r = check_complex_case(p, prof, g);
    CHECK_FALSE(r.satisfied);
    CHECK(r.E_or_E1 == Approx(0.0));
    CHECK(r.margins.at("premise") == 0.0);
}

TEST_CASE("complex case coincides with the real case for eps - 1 > 0 const") {
    const auto p = slab_params(0.01);
    const auto prof = PermittivityProfile::constant({1.5, 0.0}, p.d);
    const Grid g = build_grid(65, p.d);
    const auto rr = check_real_case(p, prof, g);
    const auto rc = check_complex_case(p, prof, g);
    CHECK(rc.E_or_E1 == Approx(rr.E_or_E1 - 1.0).epsilon(1e-14));
    CHECK(rc.D1 == Approx(rr.D1).epsilon(1e-14));
    CHECK(rc.alpha0 == Approx(rr.alpha0).epsilon(1e-13));
    CHECK(rc.alpha1 == Approx(rr.alpha1).epsilon(1e-13));
    CHECK(rc.satisfied == rr.satisfied);
}

TEST_CASE("weak condition") {
    const Grid g = build_grid(65, 0.5);
    SUBCASE("worked example") {
        const auto p = slab_params(0.01);
        const auto prof = PermittivityProfile::constant({1.5, 0.0}, p.d);
        const auto w = check_weak_condition(p, prof, g);
        CHECK(w.lhs == Approx(0.255).epsilon(1e-12));
        CHECK(w.satisfied);
        CHECK(w.margin == Approx(0.745).epsilon(1e-12));
    }
    SUBCASE("empty layer is trivially fine") {
        const auto p = slab_params(0.0);
        const auto prof = PermittivityProfile::constant({1.0, 0.0}, p.d);
        const auto w = check_weak_condition(p, prof, g);
        CHECK(w.lhs == Approx(0.0));
        CHECK(w.satisfied);
    }
    SUBCASE("threshold violation") {
        const auto p = slab_params(0.0);
        const auto prof = PermittivityProfile::constant({3.2, 0.0}, p.d);
        const auto w = check_weak_condition(p, prof, g);
        CHECK(w.lhs == Approx(1.1).epsilon(1e-12));
        CHECK_FALSE(w.satisfied);
    }
}

TEST_CASE("weak form equals t0 at p = a/sqrt(3)") {
    // q0 (E - 1 + alpha a^2) is the t0 expression evaluated at p = a/sqrt 3
    const double E = 1.5, q0 = 0.5, a = 1.0;
    for (double alpha : {0.01, 0.05, 0.2}) {
        const double weak = q0 * (E - 1.0 + alpha * a * a);
        const double p = a / std::sqrt(3.0);
        const double t0_at = q0 * (E - 1.0 + 3.0 * alpha * p * p);
        CHECK(weak == Approx(t0_at).epsilon(1e-14));
    }
}

TEST_CASE("increasing alpha never flips satisfied from false to true") {
    const auto prof = PermittivityProfile::constant({1.5, 0.0}, 0.5);
    const Grid g = build_grid(65, 0.5);
    bool seen_false = false;
    for (int i = 0; i <= 40; ++i) {
        const double alpha = 0.3 * i / 40.0;
        const auto p = slab_params(alpha);
        const auto r = check_real_case(p, prof, g);
        if (seen_false) CHECK_FALSE(r.satisfied);
        if (!r.satisfied) seen_false = true;
    }
    CHECK(seen_false);  // the grid reaches past alpha0 = 0.125
}

TEST_SUITE_END();
