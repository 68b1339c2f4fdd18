// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; callers must gate on avx2_available() before using them.
#include "qrelax/kernels.hpp"

#if defined(__x86_64__)
#include <immintrin.h>

namespace qrelax {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double sum_sq_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double sum_abs2_avx2(const double* re, const double* im, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(re + i);
        __m256d m = _mm256_loadu_pd(im + i);
        acc = _mm256_fmadd_pd(r, r, acc);
        acc = _mm256_fmadd_pd(m, m, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += re[i] * re[i] + im[i] * im[i];
    return s;
}

double sum_abs4_avx2(const double* re, const double* im, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(re + i);
        __m256d m = _mm256_loadu_pd(im + i);
        __m256d a2 = _mm256_fmadd_pd(m, m, _mm256_mul_pd(r, r));
        acc = _mm256_fmadd_pd(a2, a2, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double a2 = re[i] * re[i] + im[i] * im[i];
        s += a2 * a2;
    }
    return s;
}

double weighted_abs2_avx2(const double* w, const double* re, const double* im,
                          std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d r = _mm256_loadu_pd(re + i);
        __m256d m = _mm256_loadu_pd(im + i);
        __m256d a2 = _mm256_fmadd_pd(m, m, _mm256_mul_pd(r, r));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), a2, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * (re[i] * re[i] + im[i] * im[i]);
    return s;
}

void cmul_avx2(const double* are, const double* aim, const double* bre,
               const double* bim, double* outre, double* outim, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ar = _mm256_loadu_pd(are + i);
        __m256d ai = _mm256_loadu_pd(aim + i);
        __m256d br = _mm256_loadu_pd(bre + i);
        __m256d bi = _mm256_loadu_pd(bim + i);
        _mm256_storeu_pd(outre + i, _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi)));
        _mm256_storeu_pd(outim + i, _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br)));
    }
    for (; i < n; ++i) {
        const double r = are[i] * bre[i] - aim[i] * bim[i];
        const double m = are[i] * bim[i] + aim[i] * bre[i];
        outre[i] = r;
        outim[i] = m;
    }
}

void dot_conj_avx2(const double* are, const double* aim, const double* bre,
                   const double* bim, std::size_t n, double* re, double* im) {
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ar = _mm256_loadu_pd(are + i);
        __m256d ai = _mm256_loadu_pd(aim + i);
        __m256d br = _mm256_loadu_pd(bre + i);
        __m256d bi = _mm256_loadu_pd(bim + i);
        accr = _mm256_fmadd_pd(ar, br, accr);
        accr = _mm256_fmadd_pd(ai, bi, accr);
        acci = _mm256_fmadd_pd(ar, bi, acci);
        acci = _mm256_fnmadd_pd(ai, br, acci);
    }
    double sr = hsum(accr), si = hsum(acci);
    for (; i < n; ++i) {
        sr += are[i] * bre[i] + aim[i] * bim[i];
        si += are[i] * bim[i] - aim[i] * bre[i];
    }
    *re = sr;
    *im = si;
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k = {sum_sq_avx2,       sum_abs2_avx2, sum_abs4_avx2,
                              weighted_abs2_avx2, cmul_avx2,     dot_conj_avx2,
                              "avx2"};
    return k;
}

} // namespace qrelax
#endif
