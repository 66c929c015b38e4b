#pragma once

#include <vector>

#include "esscirc/rational.hpp"

namespace esscirc {

/// Beta-derived skewing density g_m(x) = C_m (1 - x^2)^m on [-1, 1] and its
/// CDF G_m, with C_m = (2m+1)! / (2^{2m+1} (m!)^2). G_m expands into odd
/// powers of x plus the constant 1/2; the coefficients are built once per
/// order in exact rational arithmetic and only then converted to doubles,
/// which keeps high orders free of cancellation.
class SkewingPolynomial {
public:
    struct Term {
        int exponent;     // odd: 2l + 1
        Rational exact;   // C_m * binom(m, l) * (-1)^l / (2l + 1)
        double value;
    };

    explicit SkewingPolynomial(int order);

    int order() const noexcept { return order_; }

    /// The normalizer C_m.
    double normalizer() const noexcept { return normalizer_; }
    const Rational& exact_normalizer() const noexcept { return exact_normalizer_; }

    /// Odd-power terms of G_m; the constant 1/2 is implicit.
    const std::vector<Term>& cdf_terms() const noexcept { return terms_; }

    /// g_m(x). Throws std::domain_error when |x| > 1 + 1e-12; values inside
    /// that tolerance are clamped onto [-1, 1].
    double pdf(double x) const;

    /// G_m(x), same domain handling as pdf.
    double cdf(double x) const;

    /// log(max(G_m(x), 1e-300)); finite for every in-domain input.
    double log_cdf(double x) const;

    /// Raw polynomial evaluation with no domain check. Needed by the
    /// finite-difference information estimators, whose steps may push
    /// lambda*sin(theta) slightly past +-1; the polynomial extends smoothly.
    double cdf_unchecked(double x) const noexcept;

private:
    double checked(double x) const;

    int order_;
    Rational exact_normalizer_;
    double normalizer_;
    std::vector<Term> terms_;
    std::vector<double> coeffs_;  // coeffs_[l] multiplies x^{2l+1}
};

}  // namespace esscirc
