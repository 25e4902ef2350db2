// SPDX-License-Identifier: Apache-2.0
#ifndef CHAINGP_KERNELS_HPP
#define CHAINGP_KERNELS_HPP

#include "chaingp/common.hpp"
#include "chaingp/polyexp.hpp"

#include <vector>

namespace chaingp {

enum class KernelFamily { Gaussian, Matern52, GaussianDerivative };

const char* kernel_family_name(KernelFamily f);

/// Stationary covariance in tensor-product form: one lengthscale per input
/// dimension, an overall variance, and a nugget added only when the two
/// points are bitwise-identical (which keeps models exactly interpolating).
///
/// GaussianDerivative dimensions carry the covariance of the n-th derivative
/// of a Gaussian-class process, normalized so the zero-distance factor is 1:
///   factor(d) = (-1)^n He_{2n}(d/l) exp(-d^2/(2 l^2)) / (2n-1)!!
struct KernelConfig {
    KernelFamily family = KernelFamily::Gaussian;
    Vec lengthscales;
    double variance = 1.0;
    double nugget = 0.0;
    std::vector<int> derivative_orders;  // per dimension; only GaussianDerivative

    int dim() const { return static_cast<int>(lengthscales.size()); }
    void validate() const;

    static KernelConfig gaussian(Vec lengthscales, double variance, double nugget = 0.0);
    static KernelConfig matern52(Vec lengthscales, double variance, double nugget = 0.0);
    static KernelConfig gaussian_derivative(Vec lengthscales, std::vector<int> orders,
                                            double variance, double nugget = 0.0);
};

/// Covariance between two points. Adds the nugget iff x and y have
/// bitwise-equal coordinates.
double kernel_eval(const KernelConfig& cfg, const Vec& x, const Vec& y);

/// One tensor factor, as a function of the raw coordinate difference.
double kernel_factor(const KernelConfig& cfg, int dim, double delta);

/// d/d(delta) of kernel_factor.
double kernel_factor_deriv(const KernelConfig& cfg, int dim, double delta);

/// The 1-D factor along `dim` as a poly-exp sum in the coordinate
/// difference. Only Gaussian-class families have one; Matern52 throws
/// UnsupportedFamilyError.
PolyExpSum kernel_as_poly_exp(const KernelConfig& cfg, int dim);

/// out[i] = kernel(raw_rows.row(i), x). scaled_cols = raw_rows scaled by the
/// inverse lengthscales (each column contiguous). SIMD batch path for the
/// Gaussian and Matern52 families; adds the nugget on bitwise-equal rows.
void kernel_corr_batch(const KernelConfig& cfg, const Mat& scaled_cols, const Mat& raw_rows,
                       const Vec& x, Vec& out);

/// Coefficients of the probabilists' Hermite polynomial He_n (index = power).
std::vector<double> hermite_coefficients(int n);

}  // namespace chaingp

#endif
