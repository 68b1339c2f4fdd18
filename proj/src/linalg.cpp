#include "qrelax/linalg.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <cmath>
#include <stdexcept>
#include <string>

namespace qrelax {

double relative_asymmetry(const Matrix& a) {
    const std::size_t n = a.rows();
    double max_abs = 0.0, max_diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            max_abs = std::max(max_abs, std::max(std::fabs(a(i, j)), std::fabs(a(j, i))));
            max_diff = std::max(max_diff, std::fabs(a(i, j) - a(j, i)));
        }
        max_abs = std::max(max_abs, std::fabs(a(j, j)));
    }
    if (max_abs == 0.0) return 0.0;
    return max_diff / max_abs;
}

void symmetrize(Matrix& a) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }
}

void gemm(char trans_a, double alpha, const Matrix& a, const double* b,
          std::size_t b_rows, std::size_t b_cols, double beta, double* c) {
    const CBLAS_TRANSPOSE ta = (trans_a == 'T') ? CblasTrans : CblasNoTrans;
    const std::size_t m = (trans_a == 'T') ? a.cols() : a.rows();
    const std::size_t k = (trans_a == 'T') ? a.rows() : a.cols();
    if (k != b_rows) throw std::invalid_argument("gemm: inner dimension mismatch");
    cblas_dgemm(CblasColMajor, ta, CblasNoTrans, static_cast<int>(m),
                static_cast<int>(b_cols), static_cast<int>(k), alpha, a.data(),
                static_cast<int>(a.rows()), b, static_cast<int>(b_rows), beta, c,
                static_cast<int>(m));
}

void symv(const Matrix& a, const double* x, double* y) {
    cblas_dsymv(CblasColMajor, CblasLower, static_cast<int>(a.rows()), 1.0, a.data(),
                static_cast<int>(a.rows()), x, 1, 0.0, y, 1);
}

void eigh(const Matrix& a, std::vector<double>& eigenvalues, Matrix& eigenvectors) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n) throw std::invalid_argument("eigh: matrix not square");
    eigenvectors = a;
    eigenvalues.assign(n, 0.0);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                       eigenvectors.data(), static_cast<lapack_int>(n),
                       eigenvalues.data());
    if (info != 0)
        throw std::runtime_error("eigh: dsyevd failed (info=" + std::to_string(info) +
                                 ", dim=" + std::to_string(n) + ")");
}

std::vector<double> eigvalsh(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n == 0 || a.cols() != n) throw std::invalid_argument("eigvalsh: matrix not square");
    Matrix work = a;
    std::vector<double> w(n, 0.0);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', static_cast<lapack_int>(n),
                       work.data(), static_cast<lapack_int>(n), w.data());
    if (info != 0)
        throw std::runtime_error("eigvalsh: dsyevd failed (info=" + std::to_string(info) +
                                 ", dim=" + std::to_string(n) + ")");
    return w;
}

} // namespace qrelax
