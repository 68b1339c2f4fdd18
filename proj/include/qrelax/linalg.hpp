#pragma once
#include <cstddef>
#include <string>
#include <vector>

namespace qrelax {

// Dense column-major matrix of doubles (LAPACK layout, no transposition on
// the way in or out of the solvers).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i + j * rows_]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i + j * rows_]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    // pointer to column j
    double* col(std::size_t j) { return data_.data() + j * rows_; }
    const double* col(std::size_t j) const { return data_.data() + j * rows_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Real symmetric operator together with the label of the basis it is
// expressed in.
struct HermitianOperator {
    Matrix mat;
    std::string basis_label = "computational";

    std::size_t dim() const { return mat.rows(); }
};

// max |A_ij - A_ji| over i<j, relative to the largest |A_ij|
double relative_asymmetry(const Matrix& a);

// (A + A^T)/2 in place
void symmetrize(Matrix& a);

// C = alpha * op(A) * B + beta * C with op in {N, T}; B and C are
// rows x cols panels.
void gemm(char trans_a, double alpha, const Matrix& a, const double* b,
          std::size_t b_rows, std::size_t b_cols, double beta, double* c);

// y = A * x
void symv(const Matrix& a, const double* x, double* y);

// Eigendecomposition of a symmetric matrix: ascending eigenvalues and the
// orthogonal eigenvector matrix (column n = eigenvector n). Throws
// std::runtime_error when the LAPACK solver fails to converge.
void eigh(const Matrix& a, std::vector<double>& eigenvalues, Matrix& eigenvectors);

// Eigenvalues only (cheaper; no vector accumulation).
std::vector<double> eigvalsh(const Matrix& a);

} // namespace qrelax
