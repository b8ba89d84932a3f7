#pragma once

#include <map>
#include <optional>
#include <string>

#include "kerrdiff/model.hpp"

namespace kerrdiff {

enum class ContractionCase { RealTheorem12, ComplexTheorem34, WeakTheorem6 };

/// Every sufficient-solvability bound for one configuration, with pass/fail
/// flags and slack margins. satisfied == true implies D1 > 0, both roots
/// exist with p1 < p2, t_factor < 1 and alpha < min(alpha0, alpha1).
struct ContractionReport {
    ContractionCase which = ContractionCase::RealTheorem12;
    double E_or_E1 = 0.0;  // sup bound: max eps (real) or max|eps - 1|
    double D0 = 0.0;       // alpha * q0
    double D1 = 0.0;       // 1 - (E-1)q0  or  1 - E1*q0
    std::optional<double> p_ext;  // sqrt(D1 / 3 D0); absent when alpha == 0
    std::optional<double> p1;     // smaller positive zero of P_K
    std::optional<double> p2;     // larger positive zero of P_K
    double alpha0 = 0.0;          // (4/27)(1/a^2) D1^3 / q0
    double alpha1 = 0.0;          // 1 / (3 q0 D1)
    double t_factor = 0.0;        // q0(E-1+3 alpha p^2) or q0(E1+3 alpha p^2)
    double chosen_p = 0.0;
    bool satisfied = false;
    std::map<std::string, double> margins;
};

struct WeakConditionResult {
    bool satisfied = false;
    double margin = 0.0;  // cos(phi) - lhs
    double lhs = 0.0;     // kappa*d*max[|1 - eps| + alpha*|a|^2]
};

/// Sup bound over the layer, sampled on a 4x-refined copy of the grid.
/// Real case: max Re eps (throws std::domain_error on a complex profile).
/// Complex case: max |eps - 1|.
double sup_bound(const PermittivityProfile& profile, const Grid& grid,
                 bool complex_case);

/// P_K(p) = D0 p^3 - D1 p + a.
double polynomial_PK(double p, double D0, double D1, double a);

/// The two positive zeros of P_K when they exist (D1 > 0 and negative local
/// minimum at p_ext); std::nullopt otherwise, including the double-root
/// boundary P_K(p_ext) = 0, which offers no contraction slack. Bisection on
/// verified brackets; |P_K| <= 1e-12 * max(1, a) at both zeros. Throws
/// std::domain_error on D0 <= 0 or a <= 0.
std::optional<std::pair<double, double>> positive_roots_PK(double D0,
                                                           double D1,
                                                           double a);

/// Real-permittivity sufficient conditions. chosen_p defaults to just above
/// p1: t_factor is increasing in p and equals exactly 1 at p_ext, so the
/// smallest admissible radius is the one that certifies a contraction.
/// alpha == 0 reduces to the linear condition (E-1)q0 < 1.
ContractionReport check_real_case(const ProblemParams& params,
                                  const PermittivityProfile& profile,
                                  const Grid& grid,
                                  std::optional<double> chosen_p = {});

/// Complex-permittivity counterpart with E1 = max|eps - 1|; also valid for
/// real profiles.
ContractionReport check_complex_case(const ProblemParams& params,
                                     const PermittivityProfile& profile,
                                     const Grid& grid,
                                     std::optional<double> chosen_p = {});

/// The always-evaluable weak-nonlinearity condition
///   kappa*d*max[|1 - eps(z)| + alpha*|a|^2] < cos(phi),
/// together with the premise alpha*|a|^2 < max|eps|.
WeakConditionResult check_weak_condition(const ProblemParams& params,
                                         const PermittivityProfile& profile,
                                         const Grid& grid);

}  // namespace kerrdiff
