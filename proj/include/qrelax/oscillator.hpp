#pragma once
#include <complex>
#include <cstddef>
#include <vector>

// Regular-limit reference: coherent and (truncation-regularized) squeezed
// states of the harmonic oscillator, in closed form and in a truncated Fock
// basis.

namespace qrelax {

struct CoherentParams {
    std::complex<double> alpha{1.0, 0.0};
    double omega = 1.0;
    std::size_t n_max = 40;
};

struct SqueezedParams {
    double a_position = 1.0;  // coordinate eigenvalue
    double omega = 1.0;
    std::size_t n_max = 200;
};

struct OscillatorSeries {
    std::vector<double> t_grid;
    std::vector<double> q;
    std::vector<double> p;
    std::vector<double> dq2;
    std::vector<double> dp2;
    std::vector<double> cov_qp;  // symmetrized covariance <{Q,P}>/2 - <Q><P>
    std::vector<double> survival;
};

// Closed-form coherent-state channels: Q, P harmonic, both uncertainties
// pinned at 1/2, survival exp(-4 |alpha|^2 sin^2(omega t / 2)).
OscillatorSeries coherent_dynamics(const CoherentParams& p, const std::vector<double>& t_grid);

// Same channels from phase evolution in the truncated Fock basis. Throws
// when the truncation leaks more than 1e-12 of the coherent-state norm.
OscillatorSeries coherent_numeric(const CoherentParams& p, const std::vector<double>& t_grid);

// Coordinate eigenstate regularized by the Fock cutoff: expansion through
// the oscillator eigenfunctions, normalized after truncation. Q and P
// follow the classical oscillation of the regularized initial moments; the
// uncertainty ellipse (dq2, dp2, cov_qp) rotates with t; survival decays on
// the truncation scale.
OscillatorSeries squeezed_dynamics(const SqueezedParams& p, const std::vector<double>& t_grid);

// Fock-space amplitudes of the truncated, normalized coordinate eigenstate.
std::vector<double> squeezed_amplitudes(const SqueezedParams& p);

// Fock-space amplitudes of the coherent state (real alpha gives real
// amplitudes; general alpha complex). Factorials handled in log space.
std::vector<std::complex<double>> coherent_amplitudes(const CoherentParams& p);

// Truncation leakage 1 - sum |a_n|^2 of the coherent amplitudes.
double coherent_leakage(const CoherentParams& p);

} // namespace qrelax
