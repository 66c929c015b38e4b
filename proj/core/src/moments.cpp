#include "esscirc/moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "esscirc/angles.hpp"

namespace esscirc {
namespace {

void check_odd_order(int n) {
    if (n < 1 || n % 2 == 0 || n > 2 * kMaxMomentOrder + 1)
        throw std::invalid_argument("sin_power_coeffs: n must be odd and in [1, " +
                                    std::to_string(2 * kMaxMomentOrder + 1) + "]");
}

}  // namespace

SinPowerExpansion sin_power_coeffs_binomial(int n) {
    check_odd_order(n);
    SinPowerExpansion e;
    e.n = n;
    const int half = (n - 1) / 2;
    const Rational scale = Rational::pow2(-(n - 1));
    for (int k = 0; k <= half; ++k) {
        Rational c = Rational::binomial(n, k) * scale;
        if ((half - k) % 2 == 1) c = -c;
        e.exact.push_back(c);
        e.coeffs.push_back(c.value());
    }
    return e;
}

SinPowerExpansion sin_power_coeffs_triangular(int n) {
    check_odd_order(n);
    // a[q][j]: coefficient of sin^j theta in sin(q theta), odd q and j.
    // From de Moivre, sin(q theta) = sum_t binom(q, 2t+1) (-1)^t
    //   sin^{2t+1} theta (1 - sin^2 theta)^{(q-1-2t)/2}, then the even power
    // is expanded binomially.
    const int half = (n - 1) / 2;
    auto idx = [](int odd) { return (odd - 1) / 2; };
    std::vector<std::vector<Rational>> a(half + 1, std::vector<Rational>(half + 1, Rational(0)));
    for (int q = 1; q <= n; q += 2) {
        for (int t = 0; 2 * t + 1 <= q; ++t) {
            const int mdeg = (q - 1 - 2 * t) / 2;
            Rational outer = Rational::binomial(q, 2 * t + 1);
            if (t % 2 == 1) outer = -outer;
            for (int j = 0; j <= mdeg; ++j) {
                Rational inner = Rational::binomial(mdeg, j);
                if (j % 2 == 1) inner = -inner;
                a[idx(q)][idx(2 * t + 1 + 2 * j)] += outer * inner;
            }
        }
    }
    // Solve sum_q x_q a_{q,j} = delta_{j,n} by descending substitution; the
    // diagonal entries a_{q,q} = (-1)^{(q-1)/2} 2^{q-1} never vanish.
    std::vector<Rational> x(half + 1, Rational(0));
    x[idx(n)] = Rational(1) / a[idx(n)][idx(n)];
    for (int j = n - 2; j >= 1; j -= 2) {
        Rational acc(0);
        for (int q = j + 2; q <= n; q += 2) acc += x[idx(q)] * a[idx(q)][idx(j)];
        x[idx(j)] = -acc / a[idx(j)][idx(j)];
    }
    SinPowerExpansion e;
    e.n = n;
    for (int k = 0; k <= half; ++k) {
        const Rational c = x[idx(n - 2 * k)];
        e.exact.push_back(c);
        e.coeffs.push_back(c.value());
    }
    return e;
}

SinPowerExpansion sin_power_coeffs(int n) {
    SinPowerExpansion binom = sin_power_coeffs_binomial(n);
    const SinPowerExpansion tri = sin_power_coeffs_triangular(n);
    for (std::size_t k = 0; k < binom.exact.size(); ++k) {
        if (binom.exact[k] != tri.exact[k])
            throw std::logic_error("sin_power_coeffs: derivations disagree at n=" +
                                   std::to_string(n));
    }
    return binom;
}

std::pair<double, double> centered_moments(const EssModel& model, int p) {
    const int m = model.order();
    if (m > kMaxMomentOrder)
        throw std::invalid_argument("centered_moments: order exceeds kMaxMomentOrder");
    const double lambda = model.lambda();
    const double alpha_p = base_cosine_moment(model.base(), p);

    // Base cosine moments for every index |n - 2k +- p| that can appear.
    const int qmax = 2 * m + 1 + std::abs(p);
    std::vector<double> alpha0(qmax + 1);
    for (int q = 0; q <= qmax; ++q) alpha0[q] = base_cosine_moment(model.base(), q);

    const Rational cm = model.skewing().exact_normalizer();
    double beta_p = 0.0;
    double lambda_pow = lambda;  // lambda^{2l+1}
    for (int l = 0; l <= m; ++l) {
        const int n = 2 * l + 1;
        const SinPowerExpansion exp_n = sin_power_coeffs(n);
        double inner = 0.0;
        for (int k = 0; k <= l; ++k) {
            const int freq = n - 2 * k;
            inner += exp_n.coeffs[k] *
                     (alpha0[std::abs(freq + p)] - alpha0[std::abs(freq - p)]);
        }
        Rational w = cm * Rational::binomial(m, l) / Rational(n);
        if (l % 2 == 0) w = -w;  // (-1)^{l+1}
        beta_p += w.value() * lambda_pow * inner;
        lambda_pow *= lambda * lambda;
    }
    return {alpha_p, beta_p};
}

TrigMoments moments(const EssModel& model, int p) {
    const auto [alpha_c, beta_c] = centered_moments(model, p);
    const double c = std::cos(p * model.mu());
    const double s = std::sin(p * model.mu());
    TrigMoments tm;
    tm.p = p;
    tm.alpha = c * alpha_c - s * beta_c;
    tm.beta = c * beta_c + s * alpha_c;
    tm.mean_resultant_length = std::hypot(tm.alpha, tm.beta);
    if (tm.mean_resultant_length < 1e-12)
        throw std::domain_error("moments: resultant length below 1e-12, mean direction undefined");
    tm.mean_direction = std::atan2(tm.beta, tm.alpha);
    if (tm.mean_direction == -kPi) tm.mean_direction = kPi;  // convention: (-pi, pi]
    return tm;
}

double circular_skewness(const EssModel& model) {
    const TrigMoments m1 = moments(model, 1);
    if (1.0 - m1.mean_resultant_length < 1e-10)
        throw std::domain_error("circular_skewness: undefined, MRL too close to 1");
    const TrigMoments m2 = moments(model, 2);
    // Second central sine moment: Im{(alpha_2 + i beta_2) e^{-2i MD_1}}.
    const double beta2_centered = m2.beta * std::cos(2.0 * m1.mean_direction) -
                                  m2.alpha * std::sin(2.0 * m1.mean_direction);
    return beta2_centered / std::pow(1.0 - m1.mean_resultant_length, 1.5);
}

namespace {

double abs_skewness_vm(double kappa, int order) {
    const EssModel model(0.0, VonMises(kappa), 1.0, order);
    return std::abs(circular_skewness(model));
}

}  // namespace

SkewnessRange skewness_range_vm(int order) {
    constexpr double kLo = 0.01, kHi = 50.0;
    constexpr int kScan = 200;
    // Coarse log-spaced bracket, then golden-section refinement.
    double best_v = -1.0;
    int best_i = 0;
    const double step = std::log(kHi / kLo) / (kScan - 1);
    for (int i = 0; i < kScan; ++i) {
        const double v = abs_skewness_vm(kLo * std::exp(step * i), order);
        if (v > best_v) {
            best_v = v;
            best_i = i;
        }
    }
    if (best_i == 0 || best_i == kScan - 1)
        throw std::runtime_error("skewness_range_vm: maximizer at scan boundary");
    double a = kLo * std::exp(step * (best_i - 1));
    double b = kLo * std::exp(step * (best_i + 1));
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = abs_skewness_vm(x1, order);
    double f2 = abs_skewness_vm(x2, order);
    while (b - a > 1e-8) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = abs_skewness_vm(x2, order);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = abs_skewness_vm(x1, order);
        }
    }
    SkewnessRange out;
    out.order = order;
    out.kappa = 0.5 * (a + b);
    const double s_star = abs_skewness_vm(out.kappa, order);
    out.s_min = -s_star;
    out.s_max = s_star;
    out.lambda_at_max = -1.0;
    return out;
}

}  // namespace esscirc
