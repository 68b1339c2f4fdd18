#pragma once
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qrelax/linalg.hpp"
#include "qrelax/spectral.hpp"

namespace qrelax {

// Eigenvalues of the observable in the basis where it is diagonal.
struct ObservableSpectrum {
    std::vector<double> values;
    std::string basis_label = "computational";

    std::size_t dim() const { return values.size(); }
    double trace() const;
    double trace_sq_over_dim() const;
};

// Default observable for generated runs: dim equally spaced values on
// [-sqrt(3) q, +sqrt(3) q], shifted to exact zero trace; Tr Q^2/N ~ q^2.
ObservableSpectrum uniform_traceless_observable(std::size_t dim, double q_scale = 1.0);

// Index whose eigenvalue is nearest to target; ties break toward the lower
// index.
std::size_t nearest_index(const ObservableSpectrum& q, double target);

// <psi|Q|psi> for psi in the Q-diagonal basis.
double expectation_q(const ObservableSpectrum& q, const WavePacket& psi);

// Variance of Q in psi.
double uncertainty_q(const ObservableSpectrum& q, const WavePacket& psi);

// Momentum operator P = i[H,Q], the Heisenberg time derivative of Q. The
// commutator K = HQ - QH of two real symmetric matrices is real
// antisymmetric, so P = iK is Hermitian; K is what gets stored.
struct MomentumOperator {
    Matrix commutator;  // K, real antisymmetric

    std::size_t dim() const { return commutator.rows(); }
    // <psi| iK |psi> (real by construction)
    double expectation(const WavePacket& psi) const;
    // <psi| P^2 |psi> = |K psi|^2
    double square_expectation(const WavePacket& psi) const;
};

MomentumOperator momentum_operator(const HermitianOperator& h, const HermitianOperator& q);
MomentumOperator momentum_operator(const HermitianOperator& h, const ObservableSpectrum& q);

// Number of principal components of a propagator column,
// (sum_a |f_a|^4)^-1.
double npc(const PropagatorColumn& col);

// Static inverse participation ratios. The basis-index form expands
// eigenvector n in the computational basis; the vector form expands an
// arbitrary normalized vector in the eigenbasis.
double static_npc(const Spectrum& spec, std::size_t eigenvector_index);
double static_npc(const std::vector<std::complex<double>>& direction);

// The three normalization components: survival |f_{a0 a0}|^2 and the sums
// of squared real/imaginary parts over a != a0. They add to |f|^2 of the
// whole column (1 for exact propagation).
struct AmplitudeDecomposition {
    double survival = 0.0;
    double sum_re2 = 0.0;
    double sum_im2 = 0.0;
};
AmplitudeDecomposition amplitude_decomposition(const PropagatorColumn& col);

enum class AmplitudePart { Real, Imag };

// Histogram of off-diagonal amplitude parts, normalized as a density, with
// companion axes rescaled so the peak sits at 0 with unit log-curvature
// (peak-aligned, curvature-normalized comparison axes).
struct Histogram {
    std::vector<double> edges;
    std::vector<double> centers;
    std::vector<double> density;
    std::vector<double> scaled_x;
    std::vector<double> scaled_density;
};
Histogram amplitude_histogram(const PropagatorColumn& col, AmplitudePart part,
                              std::size_t bins = 0);  // 0 = Freedman-Diaconis

// Time-dependent strength function: |f_{a a0}(t)|^2 binned over Q_a.
// Total mass is 1; smoothed_offdiag is a moving average of the off-diagonal
// weights ordered by Q (window in bins, must be odd).
struct StrengthFunction {
    std::vector<double> edges;
    std::vector<double> centers;
    std::vector<double> mass;
    std::vector<double> smoothed_q;
    std::vector<double> smoothed_offdiag;
};
StrengthFunction strength_function(const ObservableSpectrum& q, const PropagatorColumn& col,
                                   std::size_t bins = 0, std::size_t smooth_window = 51);

// All time-dependent diagnostics of one initial basis state on a scaled-time
// grid tau = lambda t.
struct RelaxationRecord {
    std::vector<double> tau;
    std::vector<double> survival;
    std::vector<double> re_f;
    std::vector<double> im_f;
    std::vector<double> q;
    std::vector<double> dq2;
    std::vector<double> p;
    std::vector<double> p2;
    std::vector<double> npc;
    std::vector<double> off_re2;
    std::vector<double> off_im2;

    std::size_t a0 = 0;
    double q0 = 0.0;
    double lambda = 0.0;
    double lambda_a = 0.0;
    std::vector<std::pair<double, PropagatorColumn>> snapshots;
};

struct RelaxationOptions {
    double tau_max = 20.0;
    std::size_t tau_steps = 2001;
    std::size_t chunk = 256;
    bool with_momentum = true;
    std::vector<double> snapshot_taus;  // columns captured at nearest grid points
};

// Batched pipeline: builds all record channels from the eigendecomposition
// with chunked BLAS products. lambda sets the scaled-time unit; lambda_a is
// reported for per-state rescaling.
RelaxationRecord run_relaxation(const Spectrum& spec, const ObservableSpectrum& q,
                                std::size_t a0, double lambda, double lambda_a,
                                const RelaxationOptions& opt);

} // namespace qrelax
