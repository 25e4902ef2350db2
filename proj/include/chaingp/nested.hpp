// SPDX-License-Identifier: Apache-2.0
//
// The nested predictor y2_hat(y1_hat(x1), x2) and its three moment engines:
// sampled (Monte-Carlo / Gauss-Hermite over the scalar Gaussian channel),
// exact (poly-exp calculus, Gaussian-class kernels only), and linearized
// (first-order propagation of the code-1 uncertainty, itself a GP).
#ifndef CHAINGP_NESTED_HPP
#define CHAINGP_NESTED_HPP

#include "chaingp/gp.hpp"

#include <cstdint>
#include <memory>

namespace chaingp {

enum class MomentStrategy { MonteCarlo, GaussHermite, Analytic, Linearized };

struct StrategyConfig {
    MomentStrategy kind = MomentStrategy::GaussHermite;
    int n_samples = 1000;     // MonteCarlo
    std::uint64_t seed = 0;   // MonteCarlo
    int n_nodes = 64;         // GaussHermite

    static StrategyConfig mc(int n, std::uint64_t seed) {
        return {MomentStrategy::MonteCarlo, n, seed, 0};
    }
    static StrategyConfig quadrature(int nodes) {
        return {MomentStrategy::GaussHermite, 0, 0, nodes};
    }
    static StrategyConfig analytic() { return {MomentStrategy::Analytic, 0, 0, 0}; }
    static StrategyConfig linearized() { return {MomentStrategy::Linearized, 0, 0, 0}; }
};

struct NestedMoments {
    double m1 = 0.0;  // E[y_nest]
    double m2 = 0.0;  // E[y_nest^2]
    double variance() const { return m2 - m1 * m1; }
};

struct NestedPredictor {
    std::shared_ptr<const KrigingModel> model1;  // over X1
    std::shared_ptr<const KrigingModel> model2;  // over R x X2, coord 0 = phi1
    StrategyConfig strategy;

    NestedPredictor(std::shared_ptr<const KrigingModel> m1,
                    std::shared_ptr<const KrigingModel> m2, StrategyConfig s);

    int d2() const { return model2->input_dim() - 1; }
};

/// Prop-1 engines: both moments as one-dimensional Gaussian integrals over
/// the code-1 posterior law, sampled (MonteCarlo) or by quadrature
/// (GaussHermite). Deterministic given the strategy's seed / node count.
NestedMoments nested_moments_mc(const NestedPredictor& pred, const Vec& x1, const Vec& x2);

/// Exact moments via the poly-exp calculus.
NestedMoments nested_moments_analytic(const NestedPredictor& pred, const Vec& x1, const Vec& x2);

/// Dispatch on the predictor's strategy (Linearized uses the plug-in mean
/// and the first-order variance).
NestedMoments nested_moments(const NestedPredictor& pred, const Vec& x1, const Vec& x2);

// Engines parameterized directly by the phi1 law N(mu1, s1sq); the public
// operations and the moment-convergence studies share these.
NestedMoments moments_mc_given(const KrigingModel& model2, double mu1, double s1sq,
                               const Vec& x2, int n_samples, std::uint64_t seed);
NestedMoments moments_gh_given(const KrigingModel& model2, double mu1, double s1sq,
                               const Vec& x2, int n_nodes);
NestedMoments moments_analytic_given(const KrigingModel& model2, double mu1, double s1sq,
                                     const Vec& x2);

/// Prop-3 Gaussian view of the nested predictor: closed-form mean and
/// covariance, valid when the code-1 residual is small.
class LinearizedNestedModel {
public:
    LinearizedNestedModel(std::shared_ptr<const KrigingModel> m1,
                          std::shared_ptr<const KrigingModel> m2);

    double mean(const Vec& x1, const Vec& x2) const;
    double variance(const Vec& x1, const Vec& x2) const;
    double cov(const Vec& x1, const Vec& x2, const Vec& x1b, const Vec& x2b) const;
    NestedMoments moments(const Vec& x1, const Vec& x2) const;

    /// d(mu2)/d(phi1) at the believed trajectory point.
    double mean_slope(const Vec& x1, const Vec& x2) const;

    const KrigingModel& model1() const { return *m1_; }
    const KrigingModel& model2() const { return *m2_; }

private:
    std::shared_ptr<const KrigingModel> m1_, m2_;
};

LinearizedNestedModel linearize(const NestedPredictor& pred);

/// (phi1, x2) concatenation helper for code-2 model inputs.
Vec z_point(double phi1, const Vec& x2);

}  // namespace chaingp

#endif
