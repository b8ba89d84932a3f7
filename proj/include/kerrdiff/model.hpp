#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace kerrdiff {

using Cplx = std::complex<double>;

/// Incident-wave and layer geometry parameters together with every derived
/// scalar the integral-equation machinery needs. Immutable after
/// make_params(); share freely across threads.
struct ProblemParams {
    double kappa = 0.0;      // frequency parameter, kappa > 0
    double phi_angle = 0.0;  // incidence angle in radians, |phi| < pi/2
    double delta = 0.0;      // layer half-thickness parameter, d = 2*pi*delta
    double alpha = 0.0;      // Kerr nonlinearity coefficient, alpha >= 0
    Cplx a_inc{1.0, 0.0};    // incident amplitude

    // derived
    double gamma = 0.0;  // transverse wavenumber kappa*cos(phi)
    double b = 0.0;      // alias of gamma used by the closed-form lemmas
    double d = 0.0;      // half-thickness 2*pi*delta; layer is [-d, d]
    Cplx s0{0.0, 0.0};   // kernel prefactor i*kappa / (2*cos(phi))
    double q0 = 0.0;     // operator norm scale 2*pi*delta*kappa / cos(phi)
};

/// Validates the physical configuration and fills the derived fields.
/// Throws std::domain_error when kappa <= 0, delta <= 0, |phi| >= pi/2 or
/// alpha < 0.
ProblemParams make_params(double kappa, double phi_angle, double delta,
                          double alpha, Cplx a_inc);

/// Uniform closed grid on [-d, d]; n odd so the midpoint is a node and
/// Simpson rules apply cleanly.
struct Grid {
    int n = 0;
    double h = 0.0;
    double d = 0.0;
    std::vector<double> nodes;
};

/// Linear permittivity eps^(L)(z) inside the layer |z| <= d. The exterior
/// vacuum eps = 1 is never represented here; callers handle it explicitly.
class PermittivityProfile {
  public:
    enum class Kind { Constant, TrigPolynomial, Sampled, Callable };

    struct TrigTerm {
        Cplx coeff;
        double freq;
    };

    static PermittivityProfile constant(Cplx eps, double d);
    static PermittivityProfile trig(std::vector<TrigTerm> terms, double d);
    /// Samples on a uniform closed grid over [-d, d]; evaluation is linear
    /// interpolation between them.
    static PermittivityProfile sampled(std::vector<Cplx> values, double d);
    /// is_real cannot be detected for an opaque evaluator, so the caller
    /// asserts it.
    static PermittivityProfile callable(std::function<Cplx(double)> fn,
                                        double d, bool is_real);

    Kind kind() const { return kind_; }
    bool is_real() const { return is_real_; }
    double half_width() const { return d_; }

    /// eps^(L)(z). Throws std::domain_error for |z| > d (the profile has no
    /// meaning outside its support).
    Cplx eval(double z) const;

  private:
    PermittivityProfile() = default;

    Kind kind_ = Kind::Constant;
    bool is_real_ = true;
    double d_ = 0.0;
    Cplx constant_{1.0, 0.0};
    std::vector<TrigTerm> terms_;
    std::vector<Cplx> samples_;
    std::function<Cplx(double)> fn_;
};

/// eps^(L)(z); same contract as PermittivityProfile::eval.
Cplx eval_permittivity(const PermittivityProfile& profile, double z);

/// eps^(L)(z) + alpha*|U|^2, the intensity-dependent permittivity inside the
/// layer.
Cplx effective_permittivity(const PermittivityProfile& profile, double alpha,
                            double u_abs_sq, double z);

/// Field samples on a grid plus the scattered plane-wave amplitudes and the
/// sup-norm integral-equation residual of the samples.
struct FieldSolution {
    Grid grid;
    std::vector<Cplx> u;
    Cplx a_scat{0.0, 0.0};
    Cplx b_scat{0.0, 0.0};
    double residual = 0.0;
};

}  // namespace kerrdiff
