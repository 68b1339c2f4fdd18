#pragma once
#include <cstdint>

#include "qrelax/linalg.hpp"

namespace qrelax {

// Parameters of a Gaussian Orthogonal Ensemble draw. The normalization is
// fixed so the limiting level density is a semicircle of radius 2*lambda:
// off-diagonal variance lambda^2/dim, diagonal variance 2*lambda^2/dim.
struct GoeParams {
    std::size_t dim = 0;
    double lambda = 1.0;
    std::uint64_t seed = 0;
};

// Draw one symmetric dim x dim matrix. Identical (dim, lambda, seed) gives a
// bit-identical matrix; scaling lambda by c multiplies the lambda=1 draw by c
// exactly. Throws std::invalid_argument on dim = 0 or lambda <= 0.
HermitianOperator sample_goe(const GoeParams& params);

// Wigner semicircle density (1/(2 pi lambda^2)) sqrt(4 lambda^2 - E^2);
// zero outside |E| <= 2 lambda. Integrates to 1.
double semicircle_density(double energy, double lambda);

} // namespace qrelax
