#include "esscirc/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "esscirc/angles.hpp"
#include "esscirc/bessel.hpp"
#include "esscirc/circular_stats.hpp"
#include "esscirc/nelder_mead.hpp"

namespace esscirc {
namespace {

constexpr double kLogFloor = 1e-300;
constexpr double kCondLimit = 1e10;

// Likelihood evaluator in natural parameters. Works directly on the raw
// parameter values so the finite-difference estimators can step lambda
// slightly past the boundary (the skewing polynomial extends smoothly).
class LogLik {
public:
    LogLik(BaseFamily family, int order, std::span<const double> data)
        : family_(family), skew_(order), data_(data) {}

    double operator()(double mu, double conc, double lambda) const {
        const double log2 = std::log(2.0);
        double total = 0.0;
        if (family_ == BaseFamily::von_mises) {
            const double log_norm = std::log(kTwoPi) + log_bessel_i0(conc);
            for (double theta : data_) {
                const double c = theta - mu;
                total += conc * std::cos(c) + skew_term(lambda * std::sin(c));
            }
            total += static_cast<double>(data_.size()) * (log2 - log_norm);
        } else {
            const double rho2 = conc * conc;
            const double log_head = std::log1p(-rho2) - std::log(kTwoPi);
            for (double theta : data_) {
                const double c = theta - mu;
                total += -std::log(1.0 + rho2 - 2.0 * conc * std::cos(c)) +
                         skew_term(lambda * std::sin(c));
            }
            total += static_cast<double>(data_.size()) * (log2 + log_head);
        }
        return total;
    }

    /// Per-datum log density, for the score outer products.
    void per_datum(double mu, double conc, double lambda, std::vector<double>& out) const {
        out.resize(data_.size());
        const double log2 = std::log(2.0);
        if (family_ == BaseFamily::von_mises) {
            const double head = log2 - std::log(kTwoPi) - log_bessel_i0(conc);
            for (std::size_t i = 0; i < data_.size(); ++i) {
                const double c = data_[i] - mu;
                out[i] = conc * std::cos(c) + skew_term(lambda * std::sin(c)) + head;
            }
        } else {
            const double rho2 = conc * conc;
            const double head = log2 + std::log1p(-rho2) - std::log(kTwoPi);
            for (std::size_t i = 0; i < data_.size(); ++i) {
                const double c = data_[i] - mu;
                out[i] = -std::log(1.0 + rho2 - 2.0 * conc * std::cos(c)) +
                         skew_term(lambda * std::sin(c)) + head;
            }
        }
    }

private:
    double skew_term(double x) const {
        return std::log(std::max(skew_.cdf_unchecked(x), kLogFloor));
    }

    BaseFamily family_;
    SkewingPolynomial skew_;
    std::span<const double> data_;
};

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

struct Transform {
    double conc_lo = 0.0, conc_hi = 1.0;
    double lambda_scale = 1.0;  // 1 - delta_lambda

    std::array<double, 3> natural(std::span<const double> t) const {
        return {t[0], conc_lo + (conc_hi - conc_lo) * logistic(t[1]),
                lambda_scale * std::tanh(t[2])};
    }
    std::array<double, 3> internal(double mu, double conc, double lambda) const {
        const double frac =
            std::clamp((conc - conc_lo) / (conc_hi - conc_lo), 1e-12, 1.0 - 1e-12);
        const double lfrac = std::clamp(lambda / lambda_scale, -1.0 + 1e-12, 1.0 - 1e-12);
        return {mu, logit(frac), std::atanh(lfrac)};
    }
};

// Moment inversion A^-1(R) for the von Mises concentration start
// (Fisher's piecewise approximation).
double vm_kappa_from_resultant(double r) {
    r = std::clamp(r, 1e-3, 0.999);
    if (r < 0.53) return 2.0 * r + r * r * r + (5.0 / 6.0) * std::pow(r, 5);
    if (r < 0.85) return -0.4 + 1.39 * r + 0.43 / (1.0 - r);
    return 1.0 / (r * r * r - 4.0 * r * r + 3.0 * r);
}

std::array<double, 3> info_steps(double mu, double conc, double lambda, BaseFamily family,
                                 double rho_cap) {
    auto h = [](double v) { return std::max(1e-5, 1e-5 * std::abs(v)); };
    double hc = h(conc);
    if (family == BaseFamily::wrapped_cauchy) hc = std::min(hc, std::max(1e-9, (rho_cap - conc) / 2.0));
    return {h(mu), hc, h(lambda)};
}

std::array<double, 3> gradient_at(const LogLik& ll, const std::array<double, 3>& eta,
                                  const std::array<double, 3>& h) {
    std::array<double, 3> g{};
    for (int j = 0; j < 3; ++j) {
        std::array<double, 3> p = eta, m = eta;
        p[j] += h[j];
        m[j] -= h[j];
        g[j] = (ll(p[0], p[1], p[2]) - ll(m[0], m[1], m[2])) / (2.0 * h[j]);
    }
    return g;
}

Matrix3 hessian_at(const LogLik& ll, const std::array<double, 3>& eta,
                   const std::array<double, 3>& h) {
    Matrix3 hess{};
    const double f0 = ll(eta[0], eta[1], eta[2]);
    for (int j = 0; j < 3; ++j) {
        std::array<double, 3> p = eta, m = eta;
        p[j] += h[j];
        m[j] -= h[j];
        hess[j][j] =
            (ll(p[0], p[1], p[2]) - 2.0 * f0 + ll(m[0], m[1], m[2])) / (h[j] * h[j]);
    }
    for (int j = 0; j < 3; ++j) {
        for (int k = j + 1; k < 3; ++k) {
            auto cross = [&](double sj, double sk) {
                std::array<double, 3> e = eta;
                e[j] += sj * h[j];
                e[k] += sk * h[k];
                return ll(e[0], e[1], e[2]);
            };
            const double v = (cross(1, 1) - cross(1, -1) - cross(-1, 1) + cross(-1, -1)) /
                             (4.0 * h[j] * h[k]);
            hess[j][k] = v;
            hess[k][j] = v;
        }
    }
    return hess;
}

double frob(const Matrix3& a) {
    double s = 0.0;
    for (const auto& row : a)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

}  // namespace

bool invert3(const Matrix3& a, Matrix3& out) {
    const double c00 = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    const double c01 = a[1][2] * a[2][0] - a[1][0] * a[2][2];
    const double c02 = a[1][0] * a[2][1] - a[1][1] * a[2][0];
    const double det = a[0][0] * c00 + a[0][1] * c01 + a[0][2] * c02;
    if (det == 0.0 || !std::isfinite(det)) return false;
    const double inv = 1.0 / det;
    out[0][0] = c00 * inv;
    out[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) * inv;
    out[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) * inv;
    out[1][0] = c01 * inv;
    out[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) * inv;
    out[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) * inv;
    out[2][0] = c02 * inv;
    out[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) * inv;
    out[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) * inv;
    return true;
}

double condition_number(const Matrix3& a) {
    Matrix3 inv;
    if (!invert3(a, inv)) return std::numeric_limits<double>::infinity();
    return frob(a) * frob(inv);
}

double log_likelihood(const EssModel& model, std::span<const double> data) {
    if (data.empty()) throw std::invalid_argument("log_likelihood: empty data");
    double total = 0.0;
    for (double theta : data) total += model.log_density(theta);
    return total;
}

InformationEstimate observed_information(const EssModel& model, std::span<const double> data) {
    if (data.empty()) throw std::invalid_argument("observed_information: empty data");
    const BaseFamily fam = family_of(model.base());
    const LogLik ll(fam, model.order(), data);
    const double n = static_cast<double>(data.size());
    const std::array<double, 3> eta = {model.mu(), concentration_of(model.base()),
                                       model.lambda()};
    const auto h = info_steps(eta[0], eta[1], eta[2], fam, 1.0 - 1e-7);

    const Matrix3 hess = hessian_at(ll, eta, h);

    InformationEstimate est;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) est.j_hat[j][k] = -hess[j][k] / n;

    // Per-datum central-difference scores.
    std::array<std::vector<double>, 3> plus, minus;
    for (int j = 0; j < 3; ++j) {
        std::array<double, 3> d{};
        d[j] = h[j];
        std::array<double, 3> ep = {eta[0] + d[0], eta[1] + d[1], eta[2] + d[2]};
        std::array<double, 3> em = {eta[0] - d[0], eta[1] - d[1], eta[2] - d[2]};
        ll.per_datum(ep[0], ep[1], ep[2], plus[j]);
        ll.per_datum(em[0], em[1], em[2], minus[j]);
    }
    Matrix3 outer{};
    std::array<double, 3> s{};
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (int j = 0; j < 3; ++j) s[j] = (plus[j][i] - minus[j][i]) / (2.0 * h[j]);
        for (int j = 0; j < 3; ++j)
            for (int k = j; k < 3; ++k) outer[j][k] += s[j] * s[k];
    }
    for (int j = 0; j < 3; ++j)
        for (int k = j; k < 3; ++k) {
            est.i_hat[j][k] = outer[j][k] / n;
            est.i_hat[k][j] = est.i_hat[j][k];
        }

    est.cond_j = condition_number(est.j_hat);
    est.cond_i = condition_number(est.i_hat);
    est.singular = !(est.cond_j < kCondLimit) || !(est.cond_i < kCondLimit);
    return est;
}

std::array<double, 3> loglik_gradient_fd(const EssModel& model, std::span<const double> data) {
    const BaseFamily fam = family_of(model.base());
    const LogLik ll(fam, model.order(), data);
    const std::array<double, 3> eta = {model.mu(), concentration_of(model.base()),
                                       model.lambda()};
    const auto h = info_steps(eta[0], eta[1], eta[2], fam, 1.0 - 1e-7);
    std::array<double, 3> g{};
    for (int j = 0; j < 3; ++j) {
        std::array<double, 3> d{};
        d[j] = h[j];
        g[j] = (ll(eta[0] + d[0], eta[1] + d[1], eta[2] + d[2]) -
                ll(eta[0] - d[0], eta[1] - d[1], eta[2] - d[2])) /
               (2.0 * h[j]);
    }
    return g;
}

FitReport fit_mle(std::span<const double> data, const FitConfig& config) {
    if (data.size() < 4) throw std::invalid_argument("fit_mle: need at least 4 observations");
    if (config.starts < 1) throw std::invalid_argument("fit_mle: starts must be >= 1");
    if (!(config.delta_lambda >= 0.0 && config.delta_lambda < 1.0))
        throw std::invalid_argument("fit_mle: delta_lambda must lie in [0, 1)");

    std::vector<double> wrapped(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) wrapped[i] = wrap_pi(data[i]);

    const LogLik ll(config.family, config.order, wrapped);
    Transform tr;
    if (config.family == BaseFamily::von_mises) {
        tr.conc_lo = config.kappa_min;
        tr.conc_hi = config.kappa_max;
    } else {
        tr.conc_lo = config.rho_min;
        tr.conc_hi = config.rho_max;
    }
    tr.lambda_scale = 1.0 - config.delta_lambda;

    auto objective = [&](std::span<const double> t) {
        const auto eta = tr.natural(t);
        return -ll(eta[0], eta[1], eta[2]);
    };

    // Deterministic start design: sample mean direction plus +-pi/4 offsets
    // (skew biases the MD away from mu), moment-inverted concentration, and
    // three skewness starts. When config.starts trims the design, keep the
    // points with the best initial objective.
    const double md = circ_mean_direction(wrapped);
    const double rbar = circ_mean_resultant(wrapped);
    const double conc0 = config.family == BaseFamily::von_mises
                             ? std::clamp(vm_kappa_from_resultant(rbar), tr.conc_lo * 1.01,
                                          tr.conc_hi * 0.99)
                             : std::clamp(rbar, 0.01, 0.99);
    struct Start {
        std::array<double, 3> t;
        double f;
    };
    std::vector<Start> starts;
    for (double moff : {0.0, kPi / 4.0, -kPi / 4.0}) {
        for (double l0 : {0.0, 0.5, -0.5}) {
            const double l_start = std::clamp(l0, -0.9 * tr.lambda_scale, 0.9 * tr.lambda_scale);
            Start s{tr.internal(md + moff, conc0, l_start), 0.0};
            s.f = objective(std::span<const double>(s.t.data(), 3));
            starts.push_back(s);
        }
    }
    std::stable_sort(starts.begin(), starts.end(),
                     [](const Start& a, const Start& b) { return a.f < b.f; });
    const int keep = std::min<int>(config.starts, static_cast<int>(starts.size()));

    NelderMeadResult best;
    best.fmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < keep; ++i) {
        auto r = nelder_mead(objective, std::span<const double>(starts[i].t.data(), 3), 0.25,
                             config.tol, config.max_iter);
        if (r.fmin < best.fmin) best = std::move(r);
    }
    // Polish the champion with a fresh smaller simplex, then a few projected
    // Newton steps in the natural parameters; simplex search alone stalls
    // well short of the parameter accuracy the equivariance contracts need.
    {
        auto polish = nelder_mead(objective, best.x, 0.05, std::min(config.tol, 1e-12),
                                  config.max_iter);
        if (polish.fmin <= best.fmin) best = std::move(polish);
    }
    bool converged = best.converged;

    std::array<double, 3> eta = tr.natural(best.x);
    {
        const double lam_cap = tr.lambda_scale;
        auto clamp_eta = [&](std::array<double, 3> e) {
            e[1] = std::clamp(e[1], tr.conc_lo, tr.conc_hi);
            e[2] = std::clamp(e[2], -lam_cap, lam_cap);
            return e;
        };
        double cur = ll(eta[0], eta[1], eta[2]);
        for (int it = 0; it < 4; ++it) {
            std::array<double, 3> h;
            for (int j = 0; j < 3; ++j) h[j] = std::max(2e-6, 2e-6 * std::abs(eta[j]));
            if (config.family == BaseFamily::wrapped_cauchy)
                h[1] = std::min(h[1], std::max(1e-9, (tr.conc_hi - eta[1]) / 2.0));
            const auto g = gradient_at(ll, eta, h);
            const Matrix3 hess = hessian_at(ll, eta, h);
            Matrix3 hinv;
            if (!invert3(hess, hinv)) break;
            std::array<double, 3> dir{};
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) dir[j] -= hinv[j][k] * g[k];
            bool improved = false;
            for (double step = 1.0; step >= 0.0625; step *= 0.5) {
                const auto cand = clamp_eta(
                    {eta[0] + step * dir[0], eta[1] + step * dir[1], eta[2] + step * dir[2]});
                const double val = ll(cand[0], cand[1], cand[2]);
                if (val > cur) {
                    eta = cand;
                    cur = val;
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
        }
        best.fmin = -cur;
    }

    FitReport rep;
    rep.family = config.family;
    rep.order = config.order;
    rep.n = static_cast<int>(data.size());
    rep.mu = wrap_pi(eta[0]);
    rep.concentration = eta[1];
    rep.lambda = eta[2];
    rep.loglik = -best.fmin;
    rep.converged = converged;
    rep.boundary = std::abs(rep.lambda) > 0.99;
    rep.aic = -2.0 * rep.loglik + 2.0 * 3.0;
    rep.tic = rep.aic;
    rep.tic_available = false;

    if (config.compute_information) {
        const EssModel fitted(rep.mu, make_base(config.family, rep.concentration), rep.lambda,
                              config.order);
        const InformationEstimate info = observed_information(fitted, wrapped);
        rep.j_hat = info.j_hat;
        rep.i_hat = info.i_hat;
        rep.info_singular = info.singular;

        Matrix3 jinv;
        if (!info.singular && invert3(info.j_hat, jinv)) {
            double penalty = 0.0;
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) penalty += jinv[j][k] * info.i_hat[k][j];
            rep.tic_penalty = penalty;
            rep.tic = -2.0 * rep.loglik + 2.0 * penalty;
            rep.tic_available = true;

            const double n = static_cast<double>(data.size());
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) rep.cov[j][k] = jinv[j][k] / n;
            rep.cov_available = true;

            if (rep.boundary) {
                rep.se_available = false;
                rep.se_note = "suppressed: skewness estimate at the boundary";
            } else {
                // Sandwich J^-1 I J^-1.
                Matrix3 tmp{}, sand{};
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int c = 0; c < 3; ++c) tmp[a][b] += jinv[a][c] * info.i_hat[c][b];
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int c = 0; c < 3; ++c) sand[a][b] += tmp[a][c] * jinv[c][b];
                bool ok = true;
                for (int j = 0; j < 3; ++j) {
                    if (rep.cov[j][j] < 0.0 || sand[j][j] < 0.0) ok = false;
                }
                if (ok) {
                    for (int j = 0; j < 3; ++j) {
                        rep.se[j] = std::sqrt(rep.cov[j][j]);
                        rep.se_robust[j] = std::sqrt(sand[j][j] / n);
                    }
                    rep.se_available = true;
                } else {
                    rep.se_note = "suppressed: information estimate not positive definite";
                }
            }
        } else {
            rep.se_note = "suppressed: singular information estimate";
        }
    }
    return rep;
}

}  // namespace esscirc
