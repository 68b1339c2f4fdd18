#pragma once
#include <cstdint>
#include <vector>

#include "qrelax/linalg.hpp"
#include "qrelax/observables.hpp"

// Spinless bosons on equidistant single-particle levels with GOE-like random
// two-body interactions, assembled in the eigenbasis of the non-interacting
// Hamiltonian.

namespace qrelax {

struct BosonModelParams {
    std::size_t n_bosons = 6;
    std::size_t n_levels = 11;
    double v = 1.0;  // two-body strength
    std::uint64_t seed = 0;
    std::size_t dim_cap = 100000;
};

// Many-body dimension C(n_bosons + n_levels - 1, n_bosons).
std::size_t boson_dimension(std::size_t n_bosons, std::size_t n_levels);

// Complete occupation-number basis in descending lexicographic order read
// from the lowest level; index 0 has all bosons in the lowest level.
struct OccupationBasis {
    std::size_t n_levels = 0;
    std::vector<std::vector<std::uint8_t>> states;

    std::size_t dim() const { return states.size(); }
};

OccupationBasis enumerate_basis(const BosonModelParams& p);

// H = H0 + v V. H0 = sum_k k n_k (unit level spacing, lowest level at 0).
// V = 1/2 sum_{klmn} V_{kl,mn} c+_k c+_l c_m c_n with independent Gaussian
// pair elements respecting hermiticity and the pair-index symmetries;
// diagonal pair elements carry doubled variance. The assembled matrix is
// exactly symmetric.
HermitianOperator build_hamiltonian(const BosonModelParams& p, const OccupationBasis& basis);

struct BosonRelaxation {
    RelaxationRecord record;
    FormFactorSeries form_factor;  // on the same scaled-time grid
    double lambda = 0.0;           // spectral width of H
    double lambda0 = 0.0;          // width of the non-interacting part alone
};

// Full pipeline: assemble, diagonalize, evolve the basis state
// initial_index, and report the record plus the trace form factor. Scaled
// time uses the spectral width; lambda_a is recorded for per-state
// rescaling.
BosonRelaxation run_boson_relaxation(const BosonModelParams& p, std::size_t initial_index,
                                     const RelaxationOptions& opt);

} // namespace qrelax
