// SPDX-License-Identifier: Apache-2.0
#include "chaingp/hyperfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace chaingp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Objective {
    const Dataset& data;
    const TrendBasis& basis;
    const KernelConfig& tmpl;
    double nugget_ratio;

    KernelConfig config_at(const Vec& log_l, double variance) const {
        KernelConfig cfg = tmpl;
        cfg.lengthscales = log_l.array().exp();
        cfg.variance = variance;
        cfg.nugget = nugget_ratio * variance;
        return cfg;
    }

    // LOO log predictive probability with the variance profiled out.
    // Returns (score, optimal variance); score is -inf on any failure.
    std::pair<double, double> operator()(const Vec& log_l) const {
        try {
            const KrigingModel model = uk_fit(data, basis, config_at(log_l, 1.0));
            const int n = model.n_obs();
            double sum_log_q = 0.0;
            double sum_sq = 0.0;
            for (int k = 0; k < n; ++k) {
                const double qkk = model.loo_precision_diag(k);
                if (!(qkk > 0.0)) return {kNegInf, 1.0};
                const double resid = model.v_c()[k] / qkk;
                sum_log_q += std::log(qkk);
                sum_sq += resid * resid * qkk;
            }
            const double var = sum_sq / n;
            if (!(var > 0.0) || !std::isfinite(var)) return {kNegInf, 1.0};
            constexpr double log2pi = 1.83787706640934548356;
            const double score =
                -0.5 * (n * log2pi + n * std::log(var) - sum_log_q + n);
            return {std::isfinite(score) ? score : kNegInf, var};
        } catch (const std::exception&) {
            return {kNegInf, 1.0};
        }
    }
};

Vec clip(Vec x, const Vec& lo, const Vec& hi) {
    for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], lo[j], hi[j]);
    return x;
}

// Nelder-Mead with bound clipping; returns the best vertex found.
Vec nelder_mead(const Objective& obj, Vec start, const Vec& lo, const Vec& hi, int max_iters) {
    const int d = static_cast<int>(start.size());
    std::vector<Vec> simplex;
    std::vector<double> fval;
    simplex.push_back(clip(start, lo, hi));
    for (int j = 0; j < d; ++j) {
        Vec v = simplex[0];
        const double step = 0.15 * (hi[j] - lo[j]);
        v[j] = v[j] + step <= hi[j] ? v[j] + step : v[j] - step;
        simplex.push_back(clip(v, lo, hi));
    }
    for (const auto& v : simplex) fval.push_back(obj(v).first);

    std::vector<int> order(simplex.size());
    for (int it = 0; it < max_iters; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fval[a] > fval[b]; });
        const int best = order.front(), worst = order.back(), second = order[order.size() - 2];
        if (std::isfinite(fval[best]) && std::isfinite(fval[worst]) &&
            std::abs(fval[best] - fval[worst]) <
                1e-10 * (1.0 + std::abs(fval[best])))
            break;

        Vec centroid = Vec::Zero(d);
        for (std::size_t i = 0; i < simplex.size(); ++i)
            if (static_cast<int>(i) != worst) centroid += simplex[i];
        centroid /= static_cast<double>(simplex.size() - 1);

        auto eval = [&](double coef) {
            Vec x = clip(centroid + coef * (centroid - simplex[worst]), lo, hi);
            return std::make_pair(x, obj(x).first);
        };
        auto [xr, fr] = eval(1.0);  // reflection
        if (fr > fval[best]) {
            auto [xe, fe] = eval(2.0);  // expansion
            if (fe > fr) { simplex[worst] = xe; fval[worst] = fe; }
            else { simplex[worst] = xr; fval[worst] = fr; }
        } else if (fr > fval[second]) {
            simplex[worst] = xr;
            fval[worst] = fr;
        } else {
            auto [xc, fc] = eval(fr > fval[worst] ? 0.5 : -0.5);  // contraction
            if (fc > std::max(fr, fval[worst])) { simplex[worst] = xc; fval[worst] = fc; }
            else {
                for (std::size_t i = 0; i < simplex.size(); ++i) {  // shrink
                    if (static_cast<int>(i) == best) continue;
                    simplex[i] = clip(simplex[best] + 0.5 * (simplex[i] - simplex[best]), lo, hi);
                    fval[i] = obj(simplex[i]).first;
                }
            }
        }
    }
    const int best = static_cast<int>(
        std::max_element(fval.begin(), fval.end()) - fval.begin());
    return simplex[best];
}

}  // namespace

KernelConfig fit_hyperparameters(const Dataset& data, const TrendBasis& basis,
                                 const KernelConfig& kernel_template,
                                 const SearchConfig& search) {
    kernel_template.validate();
    if (!(search.lengthscale_lo > 0.0) || !(search.lengthscale_hi > search.lengthscale_lo) ||
        !std::isfinite(search.lengthscale_hi))
        throw ConfigError("fit_hyperparameters: search bounds must be positive and finite");
    if (search.n_starts < 1) throw ConfigError("fit_hyperparameters: n_starts must be >= 1");

    const int d = data.dim();
    if (kernel_template.dim() != d)
        throw DimensionError("fit_hyperparameters: kernel/data dimension mismatch");

    Vec lo(d), hi(d);
    for (int j = 0; j < d; ++j) {
        double range = data.inputs.col(j).maxCoeff() - data.inputs.col(j).minCoeff();
        if (!(range > 0.0)) range = 1.0;
        lo[j] = std::log(search.lengthscale_lo * range);
        hi[j] = std::log(search.lengthscale_hi * range);
    }

    const Objective obj{data, basis, kernel_template,
                        kernel_template.nugget / kernel_template.variance};

    // Latin-hypercube starting points in log-space
    std::mt19937_64 rng(search.seed);
    std::vector<Vec> starts;
    if (search.warm_start) {
        if (search.warm_start->size() != d)
            throw DimensionError("fit_hyperparameters: warm start dimension mismatch");
        starts.push_back(clip(search.warm_start->array().log().matrix(), lo, hi));
    }
    {
        const int n = search.n_starts;
        Mat grid(n, d);
        for (int j = 0; j < d; ++j) {
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            for (int i = 0; i < n; ++i)
                grid(i, j) = lo[j] + (perm[i] + unif(rng)) / n * (hi[j] - lo[j]);
        }
        for (int i = 0; i < n; ++i) starts.push_back(grid.row(i));
    }

    double best_score = kNegInf;
    double best_var = 1.0;
    Vec best_log_l;
    for (const Vec& s : starts) {
        const Vec cand = nelder_mead(obj, s, lo, hi, search.max_iters);
        const auto [score, var] = obj(cand);
        if (score > best_score) {
            best_score = score;
            best_var = var;
            best_log_l = cand;
        }
    }
    if (!std::isfinite(best_score))
        throw NumericError(
            "fit_hyperparameters: every start failed factorization; increase the nugget");
    return obj.config_at(best_log_l, best_var);
}

}  // namespace chaingp
