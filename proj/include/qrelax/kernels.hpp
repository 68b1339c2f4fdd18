#pragma once
#include <cstddef>

// Data-parallel inner loops used by the time-evolution pipeline.
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vectorized variant. The active set is chosen once at startup
// from CPUID; QRELAX_KERNELS=scalar|avx2 in the environment forces a choice.
// SIMD variants may reassociate sums, so results can differ from the scalar
// reference at the level of rounding noise; the equivalence tests bound this.

namespace qrelax {

struct Kernels {
    // sum of squares of a real array
    double (*sum_sq)(const double* x, std::size_t n);
    // sum of |z|^2 over a split-complex array
    double (*sum_abs2)(const double* re, const double* im, std::size_t n);
    // sum of |z|^4
    double (*sum_abs4)(const double* re, const double* im, std::size_t n);
    // sum of w[i] * |z[i]|^2
    double (*weighted_abs2)(const double* w, const double* re, const double* im,
                            std::size_t n);
    // elementwise complex multiply: out = a * b
    void (*cmul)(const double* are, const double* aim, const double* bre,
                 const double* bim, double* outre, double* outim, std::size_t n);
    // conjugate dot product: sum conj(a[i]) * b[i]
    void (*dot_conj)(const double* are, const double* aim, const double* bre,
                     const double* bim, std::size_t n, double* re, double* im);
    const char* name;
};

const Kernels& scalar_kernels();
bool avx2_available();
#if defined(__x86_64__)
const Kernels& avx2_kernels();
#endif

// Dispatched set (resolved once, thread-safe).
const Kernels& kernels();

} // namespace qrelax
