#pragma once
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qrelax/linalg.hpp"

namespace qrelax {

// Result of diagonalizing a HermitianOperator: ascending eigenvalues and the
// orthogonal eigenvector matrix, column n = |n>. Immutable after
// construction and safe to share across threads.
struct Spectrum {
    std::vector<double> energies;
    Matrix vectors;
    std::string basis_label;

    std::size_t dim() const { return energies.size(); }
};

struct WavePacket {
    std::string basis_label;
    std::vector<std::complex<double>> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm_sq() const;
};

// One column of the propagator matrix: entries[a] = <a| exp(-i H t) |a0>.
struct PropagatorColumn {
    double t = 0.0;
    std::size_t source_index = 0;
    std::vector<std::complex<double>> entries;

    std::size_t dim() const { return entries.size(); }
};

// Eigendecomposition with contract checks: input must be symmetric within
// 1e-12 relative asymmetry; the output satisfies the orthogonality and
// residual invariants asserted in the tests.
Spectrum diagonalize(const HermitianOperator& h);

// Exact phase-dynamics propagation psi(t) = U exp(-i E t) U^T psi0.
WavePacket evolve(const Spectrum& spec, const WavePacket& psi0, double t);

// Overlap <a|b> = sum conj(a_i) b_i.
std::complex<double> overlap(const WavePacket& a, const WavePacket& b);

PropagatorColumn propagator_column(const Spectrum& spec, std::size_t a0, double t);

// Diagonal propagator amplitude f_{a0 a0}(t) alone; O(N) once the row of U
// is extracted, used for dense time scans of the survival amplitude.
std::complex<double> survival_amplitude_numeric(const Spectrum& spec, std::size_t a0,
                                                double t);

// Trace form factor F(t) = (1/N) sum_n exp(-i E_n t) on a time grid.
// Returns one triple of channels per grid point: Re F, Im F, |F|^2.
struct FormFactorSeries {
    std::vector<double> t_grid;
    std::vector<double> re;
    std::vector<double> im;
    std::vector<double> abs2;
};
FormFactorSeries trace_form_factor(const Spectrum& spec, const std::vector<double>& t_grid);

// Spectral width sqrt(Tr H^2 / N - (Tr H / N)^2) from matrix entries, no
// diagonalization.
double spectral_width(const HermitianOperator& h);

// Per-state width lambda_a = sqrt(<a|H^2|a> - <a|H|a>^2); one matrix-vector
// product.
double state_width(const HermitianOperator& h, std::size_t a);

// Variance of the diagonal matrix elements.
double diagonal_variance(const HermitianOperator& h);

// Coefficients of the short-time expansion Q_a(t) = c0 + c1 t + c2 t^2 + ...,
// evaluated through explicit nested commutators: c0 = <a|Q|a>, c1 = 0,
// c2 = -1/2 <a|[H,[H,Q]]|a>.
struct ShortTimeCoefficients {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};
ShortTimeCoefficients short_time_expansion(const HermitianOperator& h,
                                           const HermitianOperator& q, std::size_t a);

// Leading short-time weight of an off-diagonal propagator element,
// |f_{a a'}(t)|^2 = t^2 H_{a a'}^2 + O(t^4) for a != a'. The quadratic
// coefficient printed in the source material subtracts <a|H^2|a'> as well,
// which is not sign-consistent with |f|^2 >= 0; only the H_{aa'}^2 term
// survives, as the tests verify against the exact propagator.
double offdiagonal_short_time_weight(const HermitianOperator& h, std::size_t a,
                                     std::size_t a_prime, double t);

} // namespace qrelax
