// SPDX-License-Identifier: Apache-2.0
#include "chaingp/nested.hpp"

#include "chaingp/quadrature.hpp"

#include <cmath>
#include <random>
#include <string>

namespace chaingp {

Vec z_point(double phi1, const Vec& x2) {
    Vec z(1 + x2.size());
    z[0] = phi1;
    z.tail(x2.size()) = x2;
    return z;
}

namespace {

bool analytic_capable(const KrigingModel& m2, std::string* why) {
    if (m2.kernel().family == KernelFamily::Matern52) {
        if (why) *why = "kernel family matern52 has no poly-exp form";
        return false;
    }
    for (const auto& f : m2.basis().fns) {
        if (!f.separable) {
            if (why) *why = "trend basis '" + f.name + "' is not in separable poly-exp form";
            return false;
        }
    }
    return true;
}

void check_query(const NestedPredictor& pred, const Vec& x1, const Vec& x2) {
    if (x1.size() != pred.model1->input_dim())
        throw DimensionError("nested moments: x1 dimension mismatch");
    if (1 + x2.size() != pred.model2->input_dim())
        throw DimensionError("nested moments: x2 dimension mismatch");
    require_finite(x1, "nested moments");
    require_finite(x2, "nested moments");
}

}  // namespace

NestedPredictor::NestedPredictor(std::shared_ptr<const KrigingModel> m1,
                                 std::shared_ptr<const KrigingModel> m2, StrategyConfig s)
    : model1(std::move(m1)), model2(std::move(m2)), strategy(s) {
    if (!model1 || !model2) throw DimensionError("NestedPredictor: null model");
    if (model2->input_dim() < 1)
        throw DimensionError("NestedPredictor: second model must take the phi1 channel");
    if (strategy.kind == MomentStrategy::Analytic) {
        std::string why;
        if (!analytic_capable(*model2, &why))
            throw UnsupportedFamilyError("NestedPredictor: analytic strategy requires a "
                                         "Gaussian-class second model (" + why + ")");
    }
}

NestedMoments moments_mc_given(const KrigingModel& model2, double mu1, double s1sq,
                               const Vec& x2, int n_samples, std::uint64_t seed) {
    if (n_samples < 2) throw DimensionError("moments_mc_given: need at least 2 samples");
    const double s1 = s1sq > 0.0 ? std::sqrt(s1sq) : 0.0;
    if (s1 == 0.0) {
        const auto [m, v] = model2.predict(z_point(mu1, x2));
        return {m, m * m + v};
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double acc1 = 0.0, acc2 = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        const double phi = mu1 + s1 * gauss(rng);
        const auto [m, v] = model2.predict(z_point(phi, x2));
        acc1 += m;
        acc2 += m * m + v;
    }
    return {acc1 / n_samples, acc2 / n_samples};
}

NestedMoments moments_gh_given(const KrigingModel& model2, double mu1, double s1sq,
                               const Vec& x2, int n_nodes) {
    if (n_nodes < 1) throw DimensionError("moments_gh_given: need at least 1 node");
    const double s1 = s1sq > 0.0 ? std::sqrt(s1sq) : 0.0;
    if (s1 == 0.0) {
        const auto [m, v] = model2.predict(z_point(mu1, x2));
        return {m, m * m + v};
    }
    const GaussHermiteRule& rule = gauss_hermite(n_nodes);
    double acc1 = 0.0, acc2 = 0.0;
    for (int i = 0; i < n_nodes; ++i) {
        const auto [m, v] = model2.predict(z_point(mu1 + s1 * rule.nodes[i], x2));
        acc1 += rule.weights[i] * m;
        acc2 += rule.weights[i] * (m * m + v);
    }
    return {acc1, acc2};
}

NestedMoments moments_analytic_given(const KrigingModel& model2, double mu1, double s1sq,
                                     const Vec& x2) {
    std::string why;
    if (!analytic_capable(model2, &why))
        throw UnsupportedFamilyError("moments_analytic_given: " + why);
    if (s1sq < 0.0) s1sq = 0.0;

    const KernelConfig& kern = model2.kernel();
    const int n = model2.n_obs();
    const int m = model2.basis().size();
    const double sigma2sq = kern.variance;

    // phi factor of the kernel and its per-observation shifted copies
    const PolyExpSum rho = kernel_as_poly_exp(kern, 0);
    std::vector<PolyExpSum> rho_obs(n);
    for (int i = 0; i < n; ++i)
        rho_obs[i] = rho.shifted(model2.data().inputs(i, 0));

    // x2 tensor factors per observation
    Vec L = Vec::Ones(n);
    for (int i = 0; i < n; ++i)
        for (int j = 1; j < model2.input_dim(); ++j)
            L[i] *= kernel_factor(kern, j, x2[j - 1] - model2.data().inputs(i, j));

    Vec mvals(m);
    std::vector<PolyExpSum> g(m);
    for (int k = 0; k < m; ++k) {
        const auto& sep = *model2.basis().fns[k].separable;
        mvals[k] = sep.m ? sep.m(x2) : 1.0;
        g[k].terms.push_back(sep.g);
    }

    // first moment: E[h^T v_h + r^T v_c]
    double m1 = 0.0;
    for (int k = 0; k < m; ++k)
        m1 += model2.v_h()[k] * mvals[k] * gaussian_poly_exp_mean(mu1, s1sq, g[k]);
    for (int i = 0; i < n; ++i)
        m1 += sigma2sq * model2.v_c()[i] * L[i] * gaussian_poly_exp_mean(mu1, s1sq, rho_obs[i]);

    // second moment: (variance + nugget) + E[h A_h h] + E[r A_c r] + E[r A_ch h]
    double m2 = sigma2sq + kern.nugget;
    for (int k = 0; k < m; ++k) {
        for (int kp = 0; kp < m; ++kp) {
            const double c = model2.A_h()(k, kp) * mvals[k] * mvals[kp];
            if (c == 0.0) continue;
            m2 += c * gaussian_poly_exp_mean(mu1, s1sq, poly_exp_product(g[k], g[kp]));
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double c = model2.A_c()(i, j) * sigma2sq * sigma2sq * L[i] * L[j];
            if (c == 0.0) continue;
            m2 += c * gaussian_poly_exp_mean(mu1, s1sq, poly_exp_product(rho_obs[i], rho_obs[j]));
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k) {
            const double c = model2.A_ch()(i, k) * sigma2sq * L[i] * mvals[k];
            if (c == 0.0) continue;
            m2 += c * gaussian_poly_exp_mean(mu1, s1sq, poly_exp_product(rho_obs[i], g[k]));
        }
    }
    return {m1, m2};
}

NestedMoments nested_moments_mc(const NestedPredictor& pred, const Vec& x1, const Vec& x2) {
    if (pred.strategy.kind != MomentStrategy::MonteCarlo &&
        pred.strategy.kind != MomentStrategy::GaussHermite)
        throw ConfigError("nested_moments_mc: strategy must be MonteCarlo or GaussHermite");
    check_query(pred, x1, x2);
    const auto [mu1, s1sq] = pred.model1->predict(x1);
    if (pred.strategy.kind == MomentStrategy::MonteCarlo)
        return moments_mc_given(*pred.model2, mu1, s1sq, x2, pred.strategy.n_samples,
                                pred.strategy.seed);
    return moments_gh_given(*pred.model2, mu1, s1sq, x2, pred.strategy.n_nodes);
}

NestedMoments nested_moments_analytic(const NestedPredictor& pred, const Vec& x1,
                                      const Vec& x2) {
    check_query(pred, x1, x2);
    const auto [mu1, s1sq] = pred.model1->predict(x1);
    return moments_analytic_given(*pred.model2, mu1, s1sq, x2);
}

NestedMoments nested_moments(const NestedPredictor& pred, const Vec& x1, const Vec& x2) {
    switch (pred.strategy.kind) {
        case MomentStrategy::MonteCarlo:
        case MomentStrategy::GaussHermite: return nested_moments_mc(pred, x1, x2);
        case MomentStrategy::Analytic: return nested_moments_analytic(pred, x1, x2);
        case MomentStrategy::Linearized: {
            check_query(pred, x1, x2);
            return LinearizedNestedModel(pred.model1, pred.model2).moments(x1, x2);
        }
    }
    throw ConfigError("nested_moments: unknown strategy");
}

LinearizedNestedModel::LinearizedNestedModel(std::shared_ptr<const KrigingModel> m1,
                                             std::shared_ptr<const KrigingModel> m2)
    : m1_(std::move(m1)), m2_(std::move(m2)) {
    if (!m1_ || !m2_) throw DimensionError("LinearizedNestedModel: null model");
    for (const auto& f : m2_->basis().fns)
        if (!f.dphi1)
            throw NumericError("linearize: basis '" + f.name +
                               "' lacks a phi1 derivative; the mean slope is undefined");
}

double LinearizedNestedModel::mean(const Vec& x1, const Vec& x2) const {
    return m2_->mean(z_point(m1_->mean(x1), x2));
}

double LinearizedNestedModel::mean_slope(const Vec& x1, const Vec& x2) const {
    return m2_->mean_grad_phi1(m1_->mean(x1), x2);
}

double LinearizedNestedModel::variance(const Vec& x1, const Vec& x2) const {
    const auto [mu1, s1sq] = m1_->predict(x1);
    const double g = m2_->mean_grad_phi1(mu1, x2);
    return m2_->variance(z_point(mu1, x2)) + g * g * s1sq;
}

double LinearizedNestedModel::cov(const Vec& x1, const Vec& x2, const Vec& x1b,
                                  const Vec& x2b) const {
    const double mu1a = m1_->mean(x1);
    const double mu1b = m1_->mean(x1b);
    const double ga = m2_->mean_grad_phi1(mu1a, x2);
    const double gb = m2_->mean_grad_phi1(mu1b, x2b);
    return m2_->cov(z_point(mu1a, x2), z_point(mu1b, x2b)) + ga * gb * m1_->cov(x1, x1b);
}

NestedMoments LinearizedNestedModel::moments(const Vec& x1, const Vec& x2) const {
    const auto [mu1, s1sq] = m1_->predict(x1);
    const auto [m, v2] = m2_->predict(z_point(mu1, x2));
    const double g = m2_->mean_grad_phi1(mu1, x2);
    const double var = v2 + g * g * s1sq;
    return {m, m * m + var};
}

LinearizedNestedModel linearize(const NestedPredictor& pred) {
    return LinearizedNestedModel(pred.model1, pred.model2);
}

}  // namespace chaingp
