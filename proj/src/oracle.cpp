#include "kerrdiff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kerrdiff {

namespace {

// Frequencies are b-combinations of O(1) magnitudes; coincidence and
// exclusion tests share one absolute-plus-relative tolerance.
double freq_tol(double scale) { return 1e-9 * (1.0 + std::abs(scale)); }

constexpr Cplx kI{0.0, 1.0};

// Image of  integral_{-d}^{d} exp(2ib|z - z0|) c * exp(i*mu*z0) dz0  under
// the m = 2 kernel with prefactor s0, as three trig terms. mu = +-2b is
// secular (the image picks up a z * exp(...) factor) and must be excluded
// by the caller.
void append_pair_image(TrigPolynomial& out, const ProblemParams& P, Cplx c,
                       double mu) {
    const double B = 2.0 * P.b;
    const Cplx pre = P.s0 * c;
    out.add_term(pre * (-2.0 * kI * B) / (mu * mu - B * B), mu);
    out.add_term(pre * kI * std::exp(kI * (-(mu - B) * P.d)) / (mu - B), B);
    out.add_term(pre * (-kI) * std::exp(kI * ((mu + B) * P.d)) / (mu + B),
                 -B);
}

bool excluded_pair(const ProblemParams& P, double mu) {
    const double B = 2.0 * P.b;
    return std::abs(mu - B) <= freq_tol(B) || std::abs(mu + B) <= freq_tol(B);
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::vector<Term> terms)
    : terms_(std::move(terms)) {
    canonicalize();
}

Cplx TrigPolynomial::eval(double z) const {
    Cplx acc{0.0, 0.0};
    for (const auto& t : terms_) acc += t.coeff * std::exp(kI * (t.freq * z));
    return acc;
}

double TrigPolynomial::sup_on_grid(const Grid& grid) const {
    double m = 0.0;
    for (double z : grid.nodes) m = std::max(m, std::abs(eval(z)));
    return m;
}

TrigPolynomial& TrigPolynomial::add_term(Cplx coeff, double freq) {
    terms_.push_back({coeff, freq});
    return *this;
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

TrigPolynomial TrigPolynomial::scaled(Cplx factor) const {
    TrigPolynomial out;
    for (const auto& t : terms_) out.add_term(factor * t.coeff, t.freq);
    return out;
}

void TrigPolynomial::canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.freq < b.freq; });
    std::vector<Term> merged;
    for (const auto& t : terms_) {
        if (!merged.empty() &&
            std::abs(t.freq - merged.back().freq) <= freq_tol(t.freq)) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged,
                  [](const Term& t) { return t.coeff == Cplx(0.0, 0.0); });
    terms_ = std::move(merged);
}

TrigPolynomial lemma1_closed_form(const ProblemParams& params, Cplx T_amp,
                                  double q) {
    const double b = params.b;
    if (std::abs(q + b) <= freq_tol(b))
        throw std::domain_error("lemma1: weight frequency q = -b is excluded");
    if (std::abs(q - 3.0 * b) <= freq_tol(b))
        throw std::domain_error("lemma1: weight frequency q = 3b is excluded");
    if (T_amp == Cplx(0.0, 0.0)) return {};

    const Cplx a_tilde = params.a_inc * std::exp(kI * (b * params.d));

    if (std::abs(q - b) <= freq_tol(b)) {
        // Degenerate form -(i T a~ s0 / b)[e^{2ibd} cos(2bz) - 1], expanded
        // into exponentials; it coincides with the generic branch's limit.
        const Cplx c0 = -kI * T_amp * a_tilde * params.s0 / b;
        const Cplx half = 0.5 * c0 * std::exp(kI * (2.0 * b * params.d));
        TrigPolynomial out;
        out.add_term(half, -2.0 * b);
        out.add_term(half, 2.0 * b);
        out.add_term(-c0, 0.0);
        out.canonicalize();
        return out;
    }

    const Cplx H0 =
        -kI * T_amp * a_tilde * params.s0 / ((b + q) * (3.0 * b - q));
    TrigPolynomial out;
    out.add_term(H0 * (3.0 * b - q) * std::exp(kI * (params.d * (b + q))),
                 -2.0 * b);
    out.add_term(H0 * (b + q) * std::exp(kI * (params.d * (3.0 * b - q))),
                 2.0 * b);
    out.add_term(H0 * (-4.0 * b), q - b);
    out.canonicalize();
    return out;
}

TrigPolynomial lemma2_closed_form(const TrigPolynomial& weight,
                                  const TrigPolynomial& input,
                                  const ProblemParams& params) {
    TrigPolynomial out;
    for (const auto& w : weight.terms()) {
        for (const auto& in : input.terms()) {
            const double mu = w.freq + in.freq;
            if (excluded_pair(params, mu))
                throw std::domain_error(
                    "lemma2: excluded frequency pair (q=" +
                    std::to_string(w.freq) + ", b=" + std::to_string(in.freq) +
                    "): q + b = +-2b is secular");
            append_pair_image(out, params, w.coeff * in.coeff, mu);
        }
    }
    out.canonicalize();
    return out;
}

TrigPolynomial lemma3_closed_form(const ProblemParams& params) {
    if (params.a_inc.imag() != 0.0 || params.a_inc.real() < 0.0)
        throw std::domain_error(
            "lemma3 requires a real nonnegative incident amplitude");
    const double a = params.a_inc.real();
    const double b = params.b;
    const double d = params.d;
    if (a == 0.0) return {};
    // f0 as printed; the relative factors come out of the operator algebra
    // as {3 e^{ibd}, e^{3ibd}, -4} on frequencies {-2b, 2b, -b}.
    const Cplx f0 = -kI * a * a * a * std::exp(kI * (b * d)) * params.s0 /
                    (3.0 * b);
    TrigPolynomial out;
    out.add_term(f0 * 3.0 * std::exp(kI * (b * d)), -2.0 * b);
    out.add_term(f0 * std::exp(kI * (3.0 * b * d)), 2.0 * b);
    out.add_term(f0 * (-4.0), -b);
    out.canonicalize();
    return out;
}

TrigPolynomial first_iteration_closed_form(const ProblemParams& params,
                                           const TrigPolynomial& weight,
                                           double alpha) {
    const Cplx a_tilde =
        params.a_inc * std::exp(kI * (params.b * params.d));
    TrigPolynomial u0;
    u0.add_term(a_tilde, -params.b);

    TrigPolynomial out;
    if (!weight.empty())
        out += lemma2_closed_form(weight, u0, params).scaled(-1.0);
    if (alpha != 0.0) out += lemma3_closed_form(params).scaled(alpha);
    out += u0;
    out.canonicalize();
    return out;
}

}  // namespace kerrdiff
