#include "esscirc/bases.hpp"

#include <cmath>
#include <stdexcept>

#include "esscirc/angles.hpp"
#include "esscirc/bessel.hpp"

namespace esscirc {

std::string_view family_name(BaseFamily family) noexcept {
    return family == BaseFamily::von_mises ? "vm" : "wc";
}

VonMises::VonMises(double kappa_in) : kappa(kappa_in) {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("VonMises: kappa must be positive and finite");
    log_norm = std::log(kTwoPi) + log_bessel_i0(kappa);
}

double VonMises::density(double theta) const noexcept {
    return std::exp(log_density(theta));
}

double VonMises::log_density(double theta) const noexcept {
    return kappa * std::cos(theta) - log_norm;
}

double VonMises::cosine_moment(int p) const {
    return bessel_i_ratio(std::abs(p), kappa);
}

// Best-Fisher wrapped-Cauchy envelope rejection sampler.
double VonMises::sample(RandomStream& rng) const {
    if (kappa < 1e-8) return kPi * (2.0 * rng.uniform() - 1.0);
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
    const double r = (1.0 + rho * rho) / (2.0 * rho);
    double f;
    for (;;) {
        const double z = std::cos(kPi * rng.uniform());
        f = (1.0 + r * z) / (r + z);
        const double c = kappa * (r - f);
        const double u2 = rng.uniform_open();
        if (c * (2.0 - c) - u2 > 0.0) break;
        if (std::log(c / u2) + 1.0 - c >= 0.0) break;
    }
    const double angle = std::acos(f);
    return wrap_pi(rng.uniform() < 0.5 ? -angle : angle);
}

WrappedCauchy::WrappedCauchy(double rho_in) : rho(rho_in) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("WrappedCauchy: rho must lie in (0, 1)");
}

double WrappedCauchy::density(double theta) const noexcept {
    const double d = 1.0 + rho * rho - 2.0 * rho * std::cos(theta);
    return (1.0 - rho * rho) / (kTwoPi * d);
}

double WrappedCauchy::log_density(double theta) const noexcept {
    const double d = 1.0 + rho * rho - 2.0 * rho * std::cos(theta);
    return std::log1p(-rho * rho) - std::log(kTwoPi) - std::log(d);
}

double WrappedCauchy::cosine_moment(int p) const noexcept {
    return std::pow(rho, std::abs(p));
}

// Exact inverse transform; no wrapping loop is needed because the atan form
// already lands in (-pi, pi].
double WrappedCauchy::sample(RandomStream& rng) const {
    const double u = rng.uniform_open();
    const double t = std::tan(kPi * (u - 0.5));
    return wrap_pi(2.0 * std::atan(((1.0 - rho) / (1.0 + rho)) * t));
}

BaseModel make_base(BaseFamily family, double concentration) {
    if (family == BaseFamily::von_mises) return VonMises(concentration);
    return WrappedCauchy(concentration);
}

BaseFamily family_of(const BaseModel& base) noexcept {
    return std::holds_alternative<VonMises>(base) ? BaseFamily::von_mises
                                                  : BaseFamily::wrapped_cauchy;
}

double concentration_of(const BaseModel& base) noexcept {
    if (const auto* vm = std::get_if<VonMises>(&base)) return vm->kappa;
    return std::get<WrappedCauchy>(base).rho;
}

double base_density(const BaseModel& base, double theta) {
    return std::visit([&](const auto& b) { return b.density(theta); }, base);
}

double base_log_density(const BaseModel& base, double theta) {
    return std::visit([&](const auto& b) { return b.log_density(theta); }, base);
}

double base_cosine_moment(const BaseModel& base, int p) {
    return std::visit([&](const auto& b) { return b.cosine_moment(p); }, base);
}

double base_sample(const BaseModel& base, RandomStream& rng) {
    return std::visit([&](const auto& b) { return b.sample(rng); }, base);
}

}  // namespace esscirc
