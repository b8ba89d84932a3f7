#pragma once

#include "kerrdiff/model.hpp"

namespace kerrdiff {

/// Finite sum  sum_j coeff_j * exp(i*freq_j*z). Closed under the layer's
/// integral operators, which is what makes the analytic oracles possible.
class TrigPolynomial {
  public:
    struct Term {
        Cplx coeff;
        double freq;
    };

    TrigPolynomial() = default;
    explicit TrigPolynomial(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    Cplx eval(double z) const;
    double sup_on_grid(const Grid& grid) const;

    TrigPolynomial& add_term(Cplx coeff, double freq);
    TrigPolynomial& operator+=(const TrigPolynomial& other);
    TrigPolynomial scaled(Cplx factor) const;

    /// Sorts by frequency and merges terms whose frequencies coincide;
    /// idempotent.
    void canonicalize();

  private:
    std::vector<Term> terms_;
};

/// Closed-form image of A[T*exp(i*q*z)] applied to U0 = a_inc*e^{ibd}e^{-ibz}
/// under the m = 2 kernel. Generic output frequencies are {-2b, 2b, q-b}.
/// Throws std::domain_error at the excluded weight frequencies q = -b and
/// q = 3b (secular, non-trigonometric images); q = b takes the cosine form,
/// which coincides with the generic branch.
TrigPolynomial lemma1_closed_form(const ProblemParams& params, Cplx T_amp,
                                  double q);

/// Bilinear extension of lemma1 to arbitrary trig-polynomial weights and
/// inputs. Throws std::domain_error naming the (weight, input) frequency
/// pair whenever q_j + b_k = +-2b.
TrigPolynomial lemma2_closed_form(const TrigPolynomial& weight,
                                  const TrigPolynomial& input,
                                  const ProblemParams& params);

/// Closed-form image F(U0) for U0 = a*e^{ibd}e^{-ibz}, m = 2 kernel, with
/// output frequencies {-2b, 2b, -b}. Requires a real positive incident
/// amplitude. The +2b and -b coefficients are the ones the operator algebra
/// yields (e^{3ibd} and -4 relative factors); they are cross-checked against
/// quadrature in the tests.
TrigPolynomial lemma3_closed_form(const ProblemParams& params);

/// First iterate U1 = T(U0) = -A[weight]U0 + alpha*F(U0) + U0 as a trig
/// polynomial, where weight is the trig expansion of 1 - eps(z). Includes
/// the incident-field term at frequency -b alongside the operator images.
TrigPolynomial first_iteration_closed_form(const ProblemParams& params,
                                           const TrigPolynomial& weight,
                                           double alpha);

}  // namespace kerrdiff
