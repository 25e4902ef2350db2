// SPDX-License-Identifier: Apache-2.0
#include "chaingp/simd.hpp"

#include <cmath>

namespace chaingp::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_dot_scalar(const double* w, const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * a[i] * b[i];
    return s;
}

void sq_diff_accum_scalar(double* acc, const double* col, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = col[i] - s;
        acc[i] += d * d;
    }
}

void gaussian_corr_scalar(double* out, const double* sq, std::size_t n, double scale) {
    for (std::size_t i = 0; i < n; ++i) out[i] = scale * std::exp(-0.5 * sq[i]);
}

void matern52_mul_scalar(double* out, const double* col, double s, std::size_t n) {
    constexpr double sqrt5 = 2.23606797749978969641;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = sqrt5 * std::abs(col[i] - s);
        out[i] *= (1.0 + u + u * u / 3.0) * std::exp(-u);
    }
}

}  // namespace

const Ops scalar_ops = {dot_scalar, weighted_dot_scalar, sq_diff_accum_scalar,
                        gaussian_corr_scalar, matern52_mul_scalar};

}  // namespace chaingp::simd::detail
