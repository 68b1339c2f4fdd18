#include "qrelax/kernels.hpp"

namespace qrelax {
namespace {

double sum_sq_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double sum_abs2_scalar(const double* re, const double* im, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += re[i] * re[i] + im[i] * im[i];
    return s;
}

double sum_abs4_scalar(const double* re, const double* im, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a2 = re[i] * re[i] + im[i] * im[i];
        s += a2 * a2;
    }
    return s;
}

double weighted_abs2_scalar(const double* w, const double* re, const double* im,
                            std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * (re[i] * re[i] + im[i] * im[i]);
    return s;
}

void cmul_scalar(const double* are, const double* aim, const double* bre,
                 const double* bim, double* outre, double* outim, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = are[i] * bre[i] - aim[i] * bim[i];
        const double m = are[i] * bim[i] + aim[i] * bre[i];
        outre[i] = r;
        outim[i] = m;
    }
}

void dot_conj_scalar(const double* are, const double* aim, const double* bre,
                     const double* bim, std::size_t n, double* re, double* im) {
    double sr = 0.0, si = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sr += are[i] * bre[i] + aim[i] * bim[i];
        si += are[i] * bim[i] - aim[i] * bre[i];
    }
    *re = sr;
    *im = si;
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k = {sum_sq_scalar,       sum_abs2_scalar, sum_abs4_scalar,
                              weighted_abs2_scalar, cmul_scalar,     dot_conj_scalar,
                              "scalar"};
    return k;
}

} // namespace qrelax
