// SPDX-License-Identifier: Apache-2.0
#include "chaingp/simd.hpp"

#include <atomic>

namespace chaingp::simd {

namespace {

bool detect_avx2() {
#if defined(CHAINGP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const detail::Ops* initial_ops() {
    return detect_avx2() ? &detail::avx2_ops : &detail::scalar_ops;
}

std::atomic<const detail::Ops*>& ops_slot() {
    static std::atomic<const detail::Ops*> slot{initial_ops()};
    return slot;
}

const detail::Ops& ops() { return *ops_slot().load(std::memory_order_relaxed); }

}  // namespace

bool avx2_supported() noexcept { return detect_avx2(); }

Backend active_backend() noexcept {
    return ops_slot().load(std::memory_order_relaxed) == &detail::avx2_ops ? Backend::avx2
                                                                           : Backend::scalar;
}

const char* backend_name() noexcept {
    return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

bool set_backend(Backend b) noexcept {
    if (b == Backend::avx2) {
        if (!detect_avx2()) return false;
        ops_slot().store(&detail::avx2_ops, std::memory_order_relaxed);
    } else {
        ops_slot().store(&detail::scalar_ops, std::memory_order_relaxed);
    }
    return true;
}

double dot(const double* a, const double* b, std::size_t n) noexcept {
    return ops().dot(a, b, n);
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) noexcept {
    return ops().weighted_dot(w, a, b, n);
}

void sq_diff_accum(double* acc, const double* col, double s, std::size_t n) noexcept {
    ops().sq_diff_accum(acc, col, s, n);
}

void gaussian_corr_from_sq(double* out, const double* sq, std::size_t n, double scale) noexcept {
    ops().gaussian_corr_from_sq(out, sq, n, scale);
}

void matern52_factor_mul(double* out, const double* col, double s, std::size_t n) noexcept {
    ops().matern52_factor_mul(out, col, s, n);
}

}  // namespace chaingp::simd
