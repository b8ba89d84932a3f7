#include "kerrdiff/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kerrdiff/quadrature.hpp"

namespace kerrdiff {

namespace {

// chosen_p default sits just above p1: t0 grows with p and hits exactly 1 at
// p_ext, so the smallest admissible ball radius is the one that certifies a
// contraction with slack.
constexpr double kChosenPNudge = 1e-6;

double refined_max(const PermittivityProfile& profile, const Grid& grid,
                   bool complex_case) {
    const int n = 4 * (grid.n - 1) + 1;
    const Grid fine = build_grid(n, grid.d);
    double m = -std::numeric_limits<double>::infinity();
    for (double z : fine.nodes) {
        const Cplx e = profile.eval(z);
        m = std::max(m, complex_case ? std::abs(e - 1.0) : e.real());
    }
    return m;
}

double bisect_root(double lo, double hi, double D0, double D1, double a) {
    double flo = polynomial_PK(lo, D0, D1, a);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = polynomial_PK(mid, D0, D1, a);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

// Shared body of the real and complex checkers; they differ only in the sup
// bound entering D1 and in the linear-case premise.
ContractionReport build_report(ContractionCase which, double sup_val,
                               const ProblemParams& params,
                               std::optional<double> chosen_p) {
    ContractionReport r;
    r.which = which;
    r.E_or_E1 = sup_val;
    const bool complex_case = (which == ContractionCase::ComplexTheorem34);
    const double q0 = params.q0;
    const double a = std::abs(params.a_inc);
    const double alpha = params.alpha;
    const double contrast = complex_case ? sup_val : sup_val - 1.0;

    r.D0 = alpha * q0;
    r.D1 = 1.0 - contrast * q0;
    r.margins["norm_condition_margin"] = r.D1;  // > 0 iff contrast*q0 < 1

    const bool premise = complex_case
                             ? (sup_val * q0 > 0.0 && sup_val * q0 < 1.0)
                             : (sup_val > 1.0 && r.D1 > 0.0);
    r.margins["premise"] = premise ? 1.0 : 0.0;

    if (r.D1 > 0.0) {
        r.alpha0 = (4.0 / 27.0) * (r.D1 * r.D1 * r.D1) / (a * a * q0);
        r.alpha1 = 1.0 / (3.0 * q0 * r.D1);
    } else {
        r.alpha0 = 0.0;
        r.alpha1 = 0.0;
    }
    r.margins["alpha0_margin"] = r.alpha0 - alpha;
    r.margins["alpha1_margin"] = r.alpha1 - alpha;

    if (alpha == 0.0) {
        // Linear layer: the Fredholm condition contrast*q0 < 1 is the whole
        // story; the cubic machinery is vacuous.
        r.t_factor = contrast * q0;
        r.chosen_p = 0.0;
        r.margins["t_margin"] = 1.0 - r.t_factor;
        r.satisfied = complex_case ? premise : (r.D1 > 0.0);
        return r;
    }

    r.p_ext = (r.D1 > 0.0) ? std::sqrt(r.D1 / (3.0 * r.D0))
                           : std::optional<double>{};
    std::optional<std::pair<double, double>> roots;
    if (r.D1 > 0.0 && a > 0.0) roots = positive_roots_PK(r.D0, r.D1, a);
    if (roots) {
        r.p1 = roots->first;
        r.p2 = roots->second;
        double p = chosen_p ? *chosen_p
                            : roots->first * (1.0 + kChosenPNudge);
        p = std::clamp(p, roots->first * (1.0 + kChosenPNudge),
                       roots->second * (1.0 - kChosenPNudge));
        r.chosen_p = p;
        r.t_factor = q0 * (contrast + 3.0 * alpha * p * p);
    } else {
        r.chosen_p = 0.0;
        r.t_factor = std::numeric_limits<double>::infinity();
    }
    r.margins["t_margin"] = 1.0 - r.t_factor;
    if (r.p_ext)
        r.margins["pk_at_p_ext"] = polynomial_PK(*r.p_ext, r.D0, r.D1, a);

    r.satisfied = premise && alpha < r.alpha0 && alpha < r.alpha1 &&
                  roots.has_value() && r.t_factor < 1.0;
    return r;
}

}  // namespace

double sup_bound(const PermittivityProfile& profile, const Grid& grid,
                 bool complex_case) {
    if (!complex_case && !profile.is_real())
        throw std::domain_error(
            "sup_bound: real-case bound requested on a complex profile");
    return refined_max(profile, grid, complex_case);
}

double polynomial_PK(double p, double D0, double D1, double a) {
    return D0 * p * p * p - D1 * p + a;
}

std::optional<std::pair<double, double>> positive_roots_PK(double D0,
                                                           double D1,
                                                           double a) {
    if (!(D0 > 0.0)) throw std::domain_error("positive_roots_PK: D0 must be > 0");
    if (!(a > 0.0)) throw std::domain_error("positive_roots_PK: a must be > 0");
    if (!(D1 > 0.0)) return std::nullopt;
    const double p_ext = std::sqrt(D1 / (3.0 * D0));
    if (!(polynomial_PK(p_ext, D0, D1, a) < 0.0)) return std::nullopt;
    const double upper = std::sqrt(D1 / D0) + a / D1;  // P_K(upper) > 0
    const double p1 = bisect_root(0.0, p_ext, D0, D1, a);
    const double p2 = bisect_root(p_ext, upper, D0, D1, a);
    return std::make_pair(p1, p2);
}

ContractionReport check_real_case(const ProblemParams& params,
                                  const PermittivityProfile& profile,
                                  const Grid& grid,
                                  std::optional<double> chosen_p) {
    if (!profile.is_real())
        throw std::domain_error(
            "check_real_case requires a real permittivity profile");
    const double E = sup_bound(profile, grid, /*complex_case=*/false);
    return build_report(ContractionCase::RealTheorem12, E, params, chosen_p);
}

ContractionReport check_complex_case(const ProblemParams& params,
                                     const PermittivityProfile& profile,
                                     const Grid& grid,
                                     std::optional<double> chosen_p) {
    const double E1 = sup_bound(profile, grid, /*complex_case=*/true);
    return build_report(ContractionCase::ComplexTheorem34, E1, params,
                        chosen_p);
}

WeakConditionResult check_weak_condition(const ProblemParams& params,
                                         const PermittivityProfile& profile,
                                         const Grid& grid) {
    const int n = 4 * (grid.n - 1) + 1;
    const Grid fine = build_grid(n, grid.d);
    const double a2 = std::norm(params.a_inc);  // |U_inc| = |a_inc| everywhere
    double contrast = 0.0;
    double eps_mod = 0.0;
    for (double z : fine.nodes) {
        const Cplx e = profile.eval(z);
        contrast = std::max(contrast, std::abs(1.0 - e));
        eps_mod = std::max(eps_mod, std::abs(e));
    }
    WeakConditionResult w;
    w.lhs = params.kappa * params.d * (contrast + params.alpha * a2);
    const double cphi = std::cos(params.phi_angle);
    w.margin = cphi - w.lhs;
    const bool weak_premise = params.alpha * a2 < eps_mod;
    w.satisfied = (w.lhs < cphi) && weak_premise;
    return w;
}

}  // namespace kerrdiff
