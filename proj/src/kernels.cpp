// SPDX-License-Identifier: Apache-2.0
#include "chaingp/kernels.hpp"

#include <cmath>
#include <string>

namespace chaingp {

const char* kernel_family_name(KernelFamily f) {
    switch (f) {
        case KernelFamily::Gaussian: return "gaussian";
        case KernelFamily::Matern52: return "matern52";
        case KernelFamily::GaussianDerivative: return "gaussian_derivative";
    }
    return "?";
}

void KernelConfig::validate() const {
    if (lengthscales.size() == 0)
        throw DimensionError("KernelConfig: no lengthscales");
    for (Eigen::Index i = 0; i < lengthscales.size(); ++i)
        if (!(lengthscales[i] > 0.0) || !std::isfinite(lengthscales[i]))
            throw DimensionError("KernelConfig: lengthscale " + std::to_string(i) +
                                 " must be positive and finite");
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw DimensionError("KernelConfig: variance must be positive and finite");
    if (!(nugget >= 0.0) || !std::isfinite(nugget))
        throw DimensionError("KernelConfig: nugget must be non-negative and finite");
    if (family == KernelFamily::GaussianDerivative) {
        if (derivative_orders.size() != static_cast<std::size_t>(lengthscales.size()))
            throw DimensionError("KernelConfig: derivative_orders size mismatch");
        for (int n : derivative_orders)
            if (n < 0) throw DimensionError("KernelConfig: negative derivative order");
    } else {
        for (int n : derivative_orders)
            if (n != 0)
                throw DimensionError(
                    "KernelConfig: derivative_orders must be zero unless family is "
                    "GaussianDerivative");
    }
}

KernelConfig KernelConfig::gaussian(Vec l, double variance, double nugget) {
    KernelConfig cfg;
    cfg.family = KernelFamily::Gaussian;
    cfg.lengthscales = std::move(l);
    cfg.variance = variance;
    cfg.nugget = nugget;
    cfg.validate();
    return cfg;
}

KernelConfig KernelConfig::matern52(Vec l, double variance, double nugget) {
    KernelConfig cfg;
    cfg.family = KernelFamily::Matern52;
    cfg.lengthscales = std::move(l);
    cfg.variance = variance;
    cfg.nugget = nugget;
    cfg.validate();
    return cfg;
}

KernelConfig KernelConfig::gaussian_derivative(Vec l, std::vector<int> orders, double variance,
                                               double nugget) {
    KernelConfig cfg;
    cfg.family = KernelFamily::GaussianDerivative;
    cfg.lengthscales = std::move(l);
    cfg.derivative_orders = std::move(orders);
    cfg.variance = variance;
    cfg.nugget = nugget;
    cfg.validate();
    return cfg;
}

std::vector<double> hermite_coefficients(int n) {
    // He_{k+1}(x) = x He_k(x) - k He_{k-1}(x)
    std::vector<double> prev{1.0};
    if (n == 0) return prev;
    std::vector<double> cur{0.0, 1.0};
    for (int k = 1; k < n; ++k) {
        std::vector<double> next(k + 2, 0.0);
        for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
        for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= k * prev[j];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

double odd_double_factorial(int n) {
    // (2n-1)!! with the empty-product convention for n = 0
    double v = 1.0;
    for (int k = 3; k <= 2 * n - 1; k += 2) v *= k;
    return v;
}

double gaussian_factor(double delta, double l) {
    const double u = delta / l;
    return std::exp(-0.5 * u * u);
}

double matern52_factor(double delta, double l) {
    const double u = std::sqrt(5.0) * std::abs(delta) / l;
    return (1.0 + u + u * u / 3.0) * std::exp(-u);
}

double gaussian_derivative_factor(double delta, double l, int n) {
    if (n == 0) return gaussian_factor(delta, l);
    const double u = delta / l;
    const auto he = hermite_coefficients(2 * n);
    double poly = 0.0;
    for (int j = static_cast<int>(he.size()) - 1; j >= 0; --j) poly = poly * u + he[j];
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * poly * std::exp(-0.5 * u * u) / odd_double_factorial(n);
}

}  // namespace

double kernel_factor(const KernelConfig& cfg, int dim, double delta) {
    const double l = cfg.lengthscales[dim];
    switch (cfg.family) {
        case KernelFamily::Gaussian: return gaussian_factor(delta, l);
        case KernelFamily::Matern52: return matern52_factor(delta, l);
        case KernelFamily::GaussianDerivative:
            return gaussian_derivative_factor(delta, l, cfg.derivative_orders[dim]);
    }
    return 0.0;
}

double kernel_factor_deriv(const KernelConfig& cfg, int dim, double delta) {
    const double l = cfg.lengthscales[dim];
    switch (cfg.family) {
        case KernelFamily::Gaussian: {
            const double u = delta / l;
            return -(u / l) * std::exp(-0.5 * u * u);
        }
        case KernelFamily::Matern52: {
            const double a = std::sqrt(5.0) / l;
            const double r = std::abs(delta);
            return -(a * a / 3.0) * delta * (1.0 + a * r) * std::exp(-a * r);
        }
        case KernelFamily::GaussianDerivative:
            return kernel_as_poly_exp(cfg, dim).derivative().eval(delta);
    }
    return 0.0;
}

double kernel_eval(const KernelConfig& cfg, const Vec& x, const Vec& y) {
    if (x.size() != cfg.lengthscales.size() || y.size() != cfg.lengthscales.size())
        throw DimensionError("kernel_eval: point dimension does not match lengthscales");
    require_finite(x, "kernel_eval");
    require_finite(y, "kernel_eval");
    double v = cfg.variance;
    if (cfg.family == KernelFamily::Gaussian) {
        double sq = 0.0;
        for (int j = 0; j < cfg.dim(); ++j) {
            const double u = (x[j] - y[j]) / cfg.lengthscales[j];
            sq += u * u;
        }
        v *= std::exp(-0.5 * sq);
    } else {
        for (int j = 0; j < cfg.dim(); ++j) v *= kernel_factor(cfg, j, x[j] - y[j]);
    }
    if (bitwise_equal(x, y)) v += cfg.nugget;
    return v;
}

PolyExpSum kernel_as_poly_exp(const KernelConfig& cfg, int dim) {
    if (cfg.family == KernelFamily::Matern52)
        throw UnsupportedFamilyError(
            "kernel_as_poly_exp: Matern52 has no poly-exp representation");
    if (dim < 0 || dim >= cfg.dim())
        throw DimensionError("kernel_as_poly_exp: dimension index out of range");
    const double l = cfg.lengthscales[dim];
    const double quad = -0.5 / (l * l);
    const int n =
        cfg.family == KernelFamily::GaussianDerivative ? cfg.derivative_orders[dim] : 0;
    PolyExpSum out;
    if (n == 0) {
        out.terms.push_back({1.0, 0.0, 0, 0.0, quad});
        return out;
    }
    const auto he = hermite_coefficients(2 * n);
    const double scale = ((n % 2 == 0) ? 1.0 : -1.0) / odd_double_factorial(n);
    double linv = 1.0;  // l^{-power}
    for (std::size_t p = 0; p < he.size(); ++p) {
        if (he[p] != 0.0)
            out.terms.push_back({scale * he[p] * linv, 0.0, static_cast<int>(p), 0.0, quad});
        linv /= l;
    }
    return out;
}

}  // namespace chaingp
