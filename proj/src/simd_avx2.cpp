// SPDX-License-Identifier: Apache-2.0
//
// AVX2+FMA variants. Compiled with -mavx2 -mfma; only reached when the
// runtime dispatcher has confirmed CPU support.
#include "chaingp/simd.hpp"

#ifdef CHAINGP_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace chaingp::simd::detail {
namespace {

// exp(x) for 4 doubles, Cephes-style: reduce x = n*ln2 + r, evaluate a
// Pade approximant of e^r on |r| <= ln2/2, rescale by 2^n. Accurate to a
// couple of ulp, which the equivalence tests pin down.
inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.44269504088896340736);
    const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

    x = _mm256_max_pd(x, _mm256_set1_pd(-708.0));
    x = _mm256_min_pd(x, _mm256_set1_pd(708.0));

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    // r = x - n*ln2, with ln2 split for extra precision
    __m256d r = _mm256_fnmadd_pd(n, c1, x);
    r = _mm256_fnmadd_pd(n, c2, r);

    const __m256d rr = _mm256_mul_pd(r, r);
    __m256d px = _mm256_fmadd_pd(p0, rr, p1);
    px = _mm256_fmadd_pd(px, rr, p2);
    px = _mm256_mul_pd(px, r);
    __m256d qx = _mm256_fmadd_pd(q0, rr, q1);
    qx = _mm256_fmadd_pd(qx, rr, q2);
    qx = _mm256_fmadd_pd(qx, rr, q3);
    const __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    __m256d res = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

    // 2^n via exponent-field arithmetic; n is integral and |n| < 2^51
    const __m256d magic = _mm256_set1_pd(6755399441055744.0);  // 1.5 * 2^52
    const __m256i ni = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)),
                                        _mm256_castpd_si256(magic));
    const __m256i pow2 =
        _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(res, _mm256_castsi256_pd(pow2));
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_dot_avx2(const double* w, const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), ab, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * a[i] * b[i];
    return s;
}

void sq_diff_accum_avx2(double* acc, const double* col, double s, std::size_t n) {
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(col + i), sv);
        _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(d, d, _mm256_loadu_pd(acc + i)));
    }
    for (; i < n; ++i) {
        const double d = col[i] - s;
        acc[i] += d * d;
    }
}

void gaussian_corr_avx2(double* out, const double* sq, std::size_t n, double scale) {
    const __m256d half = _mm256_set1_pd(-0.5);
    const __m256d sc = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d e = exp4(_mm256_mul_pd(half, _mm256_loadu_pd(sq + i)));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(sc, e));
    }
    for (; i < n; ++i) out[i] = scale * std::exp(-0.5 * sq[i]);
}

void matern52_mul_avx2(double* out, const double* col, double s, std::size_t n) {
    constexpr double sqrt5 = 2.23606797749978969641;
    const __m256d sv = _mm256_set1_pd(s);
    const __m256d k5 = _mm256_set1_pd(sqrt5);
    const __m256d third = _mm256_set1_pd(1.0 / 3.0);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_and_pd(_mm256_sub_pd(_mm256_loadu_pd(col + i), sv), absmask);
        const __m256d u = _mm256_mul_pd(k5, d);
        const __m256d poly =
            _mm256_add_pd(one, _mm256_fmadd_pd(_mm256_mul_pd(u, u), third, u));
        const __m256d f = _mm256_mul_pd(poly, exp4(_mm256_sub_pd(_mm256_setzero_pd(), u)));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(out + i), f));
    }
    for (; i < n; ++i) {
        const double u = sqrt5 * std::abs(col[i] - s);
        out[i] *= (1.0 + u + u * u / 3.0) * std::exp(-u);
    }
}

}  // namespace

const Ops avx2_ops = {dot_avx2, weighted_dot_avx2, sq_diff_accum_avx2,
                      gaussian_corr_avx2, matern52_mul_avx2};

}  // namespace chaingp::simd::detail

#else  // !CHAINGP_HAVE_AVX2

namespace chaingp::simd::detail {
// Non-x86 builds fall back to the scalar reference for every entry point.
const Ops avx2_ops = scalar_ops;
}  // namespace chaingp::simd::detail

#endif
