#pragma once

#include <cstddef>
#include <vector>

#include "esscirc/bases.hpp"
#include "esscirc/rng.hpp"
#include "esscirc/skewing.hpp"

namespace esscirc {

/// Extended sine-skewed circular distribution of order m:
///   f(theta) = 2 f_0(theta - mu) G_m(lambda sin(theta - mu)),
/// where f_0 is a symmetric base density and G_m the skewing CDF.
/// Immutable after construction; safe for concurrent reads.
class EssModel {
public:
    EssModel(double mu, BaseModel base, double lambda, int order);

    double mu() const noexcept { return mu_; }
    const BaseModel& base() const noexcept { return base_; }
    double lambda() const noexcept { return lambda_; }
    int order() const noexcept { return skew_.order(); }
    const SkewingPolynomial& skewing() const noexcept { return skew_; }

    double density(double theta) const;

    /// Log density with the floored skewing log, so it is finite even where
    /// the density vanishes.
    double log_density(double theta) const;

    /// One exact draw: one base draw plus one uniform decides the sign flip,
    /// then the result is shifted by mu and wrapped.
    double sample(RandomStream& rng) const;
    std::vector<double> sample(std::size_t n, RandomStream& rng) const;

private:
    double mu_;
    BaseModel base_;
    double lambda_;
    SkewingPolynomial skew_;
};

}  // namespace esscirc
