#include "esscirc/skewing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace esscirc {
namespace {

constexpr double kDomainSlack = 1e-12;
constexpr double kLogFloor = 1e-300;

// C_m = (2m+1)! / (2^{2m+1} (m!)^2) = binom(2m+1, m) * (m+1) / 2^{2m+1}.
Rational exact_c(int m) {
    return Rational::binomial(2 * m + 1, m) * Rational(m + 1) * Rational::pow2(-(2 * m + 1));
}

}  // namespace

SkewingPolynomial::SkewingPolynomial(int order) : order_(order) {
    if (order < 0) throw std::invalid_argument("SkewingPolynomial: order must be >= 0");
    exact_normalizer_ = exact_c(order);
    normalizer_ = exact_normalizer_.value();
    terms_.reserve(order + 1);
    coeffs_.reserve(order + 1);
    for (int l = 0; l <= order; ++l) {
        Rational c = exact_normalizer_ * Rational::binomial(order, l) / Rational(2 * l + 1);
        if (l % 2 == 1) c = -c;
        terms_.push_back({2 * l + 1, c, c.value()});
        coeffs_.push_back(c.value());
    }
}

double SkewingPolynomial::checked(double x) const {
    if (std::abs(x) > 1.0 + kDomainSlack)
        throw std::domain_error("SkewingPolynomial: |x| > 1 (got " + std::to_string(x) + ")");
    return std::clamp(x, -1.0, 1.0);
}

double SkewingPolynomial::pdf(double x) const {
    x = checked(x);
    double w = 1.0 - x * x;
    double acc = normalizer_;
    for (int i = 0; i < order_; ++i) acc *= w;
    return acc;
}

double SkewingPolynomial::cdf_unchecked(double x) const noexcept {
    const double u = x * x;
    double acc = coeffs_.back();
    for (int l = static_cast<int>(coeffs_.size()) - 2; l >= 0; --l) acc = acc * u + coeffs_[l];
    return 0.5 + x * acc;
}

double SkewingPolynomial::cdf(double x) const { return cdf_unchecked(checked(x)); }

double SkewingPolynomial::log_cdf(double x) const {
    return std::log(std::max(cdf(x), kLogFloor));
}

}  // namespace esscirc
