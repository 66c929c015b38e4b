#include "esscirc/ess.hpp"

#include <cmath>
#include <stdexcept>

#include "esscirc/angles.hpp"

namespace esscirc {

EssModel::EssModel(double mu, BaseModel base, double lambda, int order)
    : mu_(wrap_pi(mu)), base_(std::move(base)), lambda_(lambda), skew_(order) {
    if (!(std::abs(lambda) <= 1.0 + 1e-12))
        throw std::invalid_argument("EssModel: lambda must lie in [-1, 1]");
    if (lambda_ > 1.0) lambda_ = 1.0;
    if (lambda_ < -1.0) lambda_ = -1.0;
}

double EssModel::density(double theta) const {
    const double c = wrap_pi(theta) - mu_;
    return 2.0 * base_density(base_, c) * skew_.cdf(lambda_ * std::sin(c));
}

double EssModel::log_density(double theta) const {
    const double c = wrap_pi(theta) - mu_;
    return base_log_density(base_, c) + std::log(2.0) + skew_.log_cdf(lambda_ * std::sin(c));
}

double EssModel::sample(RandomStream& rng) const {
    const double phi = base_sample(base_, rng);
    const double u = rng.uniform();
    const double theta = (u < skew_.cdf(lambda_ * std::sin(phi))) ? phi : -phi;
    return wrap_pi(theta + mu_);
}

std::vector<double> EssModel::sample(std::size_t n, RandomStream& rng) const {
    if (n == 0) throw std::invalid_argument("EssModel::sample: n must be >= 1");
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng));
    return out;
}

}  // namespace esscirc
