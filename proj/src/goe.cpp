#include "qrelax/goe.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qrelax/rng.hpp"

namespace qrelax {

HermitianOperator sample_goe(const GoeParams& params) {
    if (params.dim == 0) throw std::invalid_argument("sample_goe: dim must be >= 1");
    if (!(params.lambda > 0.0)) throw std::invalid_argument("sample_goe: lambda must be > 0");

    const std::size_t n = params.dim;
    HermitianOperator op;
    op.mat = Matrix(n, n);
    GaussianStream gauss(params.seed);

    // Draw order is part of the format: upper-triangle entries row by row,
    // then the diagonal. Entries are standard normals scaled afterwards, so
    // the lambda dependence is an exact final multiplication.
    const double off_scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double diag_scale = std::sqrt(2.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = params.lambda * (gauss.next() * off_scale);
            op.mat(i, j) = v;
            op.mat(j, i) = v;
        }
    for (std::size_t i = 0; i < n; ++i)
        op.mat(i, i) = params.lambda * (gauss.next() * diag_scale);
    return op;
}

double semicircle_density(double energy, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("semicircle_density: lambda must be > 0");
    const double r = 2.0 * lambda;
    if (energy <= -r || energy >= r) return 0.0;
    return std::sqrt(r * r - energy * energy) / (2.0 * std::numbers::pi * lambda * lambda);
}

} // namespace qrelax
