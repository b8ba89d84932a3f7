#include "kerrdiff/model.hpp"

#include <cmath>
#include <numbers>

namespace kerrdiff {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
// Absolute slack on the layer boundary test, relative to d.
constexpr double kEdgeSlack = 1e-12;
}  // namespace

ProblemParams make_params(double kappa, double phi_angle, double delta,
    double alpha, Cplx a_inc) {
    if (!(kappa > 0.0))
        throw std::domain_error("make_params: kappa must be > 0");
    if (!(delta > 0.0))
        throw std::domain_error("make_params: delta must be > 0");
    if (!(std::abs(phi_angle) < kHalfPi))
        throw std::domain_error("make_params: |phi_angle| must be < pi/2");
    if (!(alpha >= 0.0))
        throw std::domain_error("make_params: alpha must be >= 0");

    ProblemParams p;
    p.kappa = kappa;
    p.phi_angle = phi_angle;
    p.delta = delta;
    p.alpha = alpha;
    p.a_inc = a_inc;

    const double cphi = std::cos(phi_angle);
    p.gamma = kappa * cphi;
    p.b = p.gamma;
    p.d = 2.0 * std::numbers::pi * delta;
    p.s0 = Cplx(0.0, kappa / (2.0 * cphi));
    p.q0 = 2.0 * std::numbers::pi * delta * kappa / cphi;
    return p;
}

PermittivityProfile PermittivityProfile::constant(Cplx eps, double d) {
    PermittivityProfile p;
    p.kind_ = Kind::Constant;
    p.d_ = d;
    p.constant_ = eps;
    p.is_real_ = (eps.imag() == 0.0);
    return p;
}

PermittivityProfile PermittivityProfile::trig(std::vector<TrigTerm> terms,
                                              double d) {
    PermittivityProfile p;
    p.kind_ = Kind::TrigPolynomial;
    p.d_ = d;
    p.terms_ = std::move(terms);
    // Real iff terms pair up as conjugates: coeff(-q) = conj(coeff(q)).
    bool real = true;
    for (const auto& t : p.terms_) {
        Cplx mirror{0.0, 0.0};
        for (const auto& s : p.terms_)
            if (s.freq == -t.freq) mirror += s.coeff;
        const double scale = std::abs(t.coeff) + 1.0;
        if (std::abs(mirror - std::conj(t.coeff)) > 1e-14 * scale) {
            real = false;
            break;
        }
    }
    p.is_real_ = real;
    return p;
}

PermittivityProfile PermittivityProfile::sampled(std::vector<Cplx> values,
                                                 double d) {
    if (values.size() < 2)
        throw std::domain_error("sampled profile needs at least two samples");
    PermittivityProfile p;
    p.kind_ = Kind::Sampled;
    p.d_ = d;
    p.samples_ = std::move(values);
    p.is_real_ = true;
    for (const auto& v : p.samples_)
        if (v.imag() != 0.0) {
            p.is_real_ = false;
            break;
        }
    return p;
}

PermittivityProfile PermittivityProfile::callable(
    std::function<Cplx(double)> fn, double d, bool is_real) {
    PermittivityProfile p;
    p.kind_ = Kind::Callable;
    p.d_ = d;
    p.fn_ = std::move(fn);
    p.is_real_ = is_real;
    return p;
}

Cplx PermittivityProfile::eval(double z) const {
    if (std::abs(z) > d_ * (1.0 + kEdgeSlack) + kEdgeSlack)
        throw std::domain_error(
            "permittivity profile evaluated outside the layer |z| <= d");
    Cplx v;
    switch (kind_) {
        case Kind::Constant:
            v = constant_;
            break;
        case Kind::TrigPolynomial: {
            v = Cplx(0.0, 0.0);
            for (const auto& t : terms_)
                v += t.coeff * std::exp(Cplx(0.0, t.freq * z));
            break;
        }
        case Kind::Sampled: {
            const auto m = samples_.size();
            const double step = 2.0 * d_ / static_cast<double>(m - 1);
            double x = (z + d_) / step;
            auto i = static_cast<std::size_t>(std::floor(x));
            if (i >= m - 1) i = m - 2;
            const double w = x - static_cast<double>(i);
            v = (1.0 - w) * samples_[i] + w * samples_[i + 1];
            break;
        }
        case Kind::Callable:
            v = fn_(z);
            break;
    }
    if (is_real_) return Cplx(v.real(), 0.0);
    return v;
}

Cplx eval_permittivity(const PermittivityProfile& profile, double z) {
    return profile.eval(z);
}

Cplx effective_permittivity(const PermittivityProfile& profile, double alpha,
                            double u_abs_sq, double z) {
    if (u_abs_sq < 0.0)
        throw std::domain_error("effective_permittivity: |U|^2 must be >= 0");
    return profile.eval(z) + alpha * u_abs_sq;
}

}  // namespace kerrdiff
