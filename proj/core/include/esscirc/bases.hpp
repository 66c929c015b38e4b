#pragma once

#include <string_view>
#include <variant>

#include "esscirc/rng.hpp"

namespace esscirc {

enum class BaseFamily { von_mises, wrapped_cauchy };

std::string_view family_name(BaseFamily family) noexcept;

/// Symmetric circular base densities, centered at zero. Each base exposes
/// the two capabilities the rest of the library needs: the density (with
/// its log) and the pth cosine moment alpha_{0,p}; plus an exact sampler.
/// Both densities are reflective symmetric and unimodal at 0, and have
/// first cosine moment strictly inside (0, 1).

struct VonMises {
    explicit VonMises(double kappa);

    double kappa;
    double log_norm;  // log(2 pi I_0(kappa))

    double density(double theta) const noexcept;
    double log_density(double theta) const noexcept;
    double cosine_moment(int p) const;  // I_|p|(kappa) / I_0(kappa)
    double sample(RandomStream& rng) const;
};

struct WrappedCauchy {
    explicit WrappedCauchy(double rho);

    double rho;

    double density(double theta) const noexcept;
    double log_density(double theta) const noexcept;
    double cosine_moment(int p) const noexcept;  // rho^|p|
    double sample(RandomStream& rng) const;
};

using BaseModel = std::variant<VonMises, WrappedCauchy>;

BaseModel make_base(BaseFamily family, double concentration);
BaseFamily family_of(const BaseModel& base) noexcept;
double concentration_of(const BaseModel& base) noexcept;

double base_density(const BaseModel& base, double theta);
double base_log_density(const BaseModel& base, double theta);
double base_cosine_moment(const BaseModel& base, int p);
double base_sample(const BaseModel& base, RandomStream& rng);

}  // namespace esscirc
