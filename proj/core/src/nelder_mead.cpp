#include "esscirc/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace esscirc {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> x0, double initial_step, double ftol,
                             int max_iter) {
    const int dim = static_cast<int>(x0.size());
    const int nv = dim + 1;
    std::vector<std::vector<double>> verts(nv, std::vector<double>(x0.begin(), x0.end()));
    // Step away from the origin: keeps mirrored starting points on mirrored
    // trajectories, which the fit equivariance properties rely on.
    for (int i = 0; i < dim; ++i)
        verts[i + 1][i] += x0[i] >= 0.0 ? initial_step : -initial_step;

    std::vector<double> fv(nv);
    int evals = 0;
    auto eval = [&](std::span<const double> x) {
        ++evals;
        return f(x);
    };
    for (int v = 0; v < nv; ++v) fv[v] = eval(verts[v]);

    std::vector<int> order(nv);
    std::vector<double> centroid(dim), xr(dim), xt(dim);
    bool converged = false;

    for (int iter = 0; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int best = order[0];
        const int worst = order[nv - 1];
        const int second_worst = order[nv - 2];

        if (std::abs(fv[worst] - fv[best]) <=
            ftol * (std::abs(fv[best]) + std::abs(fv[worst])) * 0.5 + 1e-15) {
            converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (int v = 0; v < nv; ++v) {
            if (v == worst) continue;
            for (int i = 0; i < dim; ++i) centroid[i] += verts[v][i];
        }
        for (int i = 0; i < dim; ++i) centroid[i] /= dim;

        for (int i = 0; i < dim; ++i) xr[i] = centroid[i] + (centroid[i] - verts[worst][i]);
        const double fr = eval(xr);

        if (fr < fv[best]) {
            for (int i = 0; i < dim; ++i) xt[i] = centroid[i] + 2.0 * (xr[i] - centroid[i]);
            const double fe = eval(xt);
            if (fe < fr) {
                verts[worst] = xt;
                fv[worst] = fe;
            } else {
                verts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            verts[worst] = xr;
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            const auto& anchor = outside ? xr : verts[worst];
            for (int i = 0; i < dim; ++i) xt[i] = centroid[i] + 0.5 * (anchor[i] - centroid[i]);
            const double fc = eval(xt);
            if (fc < (outside ? fr : fv[worst])) {
                verts[worst] = xt;
                fv[worst] = fc;
            } else {
                for (int v = 0; v < nv; ++v) {
                    if (v == best) continue;
                    for (int i = 0; i < dim; ++i)
                        verts[v][i] = verts[best][i] + 0.5 * (verts[v][i] - verts[best][i]);
                    fv[v] = eval(verts[v]);
                }
            }
        }
    }

    int best = 0;
    for (int v = 1; v < nv; ++v)
        if (fv[v] < fv[best]) best = v;
    return {std::move(verts[best]), fv[best], evals, converged};
}

}  // namespace esscirc
