// SPDX-License-Identifier: Apache-2.0
//
// Batch kernels for the arithmetic inner loops (correlation vectors, dot
// products, candidate scoring). Every operation has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant selected at runtime.
// The two are equivalence-tested against each other; results agree to
// floating-point reassociation noise, not bit-exactly.
#ifndef CHAINGP_SIMD_HPP
#define CHAINGP_SIMD_HPP

#include <cstddef>

namespace chaingp::simd {

enum class Backend { scalar, avx2 };

/// Backend currently routed to (dispatch happens once, at first use).
Backend active_backend() noexcept;
const char* backend_name() noexcept;
bool avx2_supported() noexcept;

/// Force a specific backend (used by the equivalence tests). Returns false
/// if the requested backend is unavailable on this machine.
bool set_backend(Backend b) noexcept;

/// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n) noexcept;

/// sum_i w[i]*a[i]*b[i]
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) noexcept;

/// acc[i] += (col[i] - s)^2
void sq_diff_accum(double* acc, const double* col, double s, std::size_t n) noexcept;

/// out[i] = scale * exp(-0.5 * sq[i]); in-place (out == sq) allowed.
void gaussian_corr_from_sq(double* out, const double* sq, std::size_t n, double scale) noexcept;

/// out[i] *= (1 + u + u^2/3) * exp(-u) with u = sqrt(5) * |col[i] - s|.
/// col holds coordinates pre-scaled by the inverse lengthscale.
void matern52_factor_mul(double* out, const double* col, double s, std::size_t n) noexcept;

namespace detail {
struct Ops {
    double (*dot)(const double*, const double*, std::size_t);
    double (*weighted_dot)(const double*, const double*, const double*, std::size_t);
    void (*sq_diff_accum)(double*, const double*, double, std::size_t);
    void (*gaussian_corr_from_sq)(double*, const double*, std::size_t, double);
    void (*matern52_factor_mul)(double*, const double*, double, std::size_t);
};
extern const Ops scalar_ops;
extern const Ops avx2_ops;
}  // namespace detail

}  // namespace chaingp::simd

#endif
