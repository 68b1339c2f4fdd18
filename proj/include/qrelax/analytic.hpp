#pragma once
#include <cstddef>
#include <vector>

// Closed-form reference curves for the fully chaotic (semicircle) limit:
// the Bessel survival amplitude, its derivative, the universal observable
// relaxation channels, and the analytic number of principal components.

namespace qrelax {

// Bessel functions of the first kind, orders 1 and 2, for x >= 0.
// Power series below x = 12, Hankel asymptotic expansion above; absolute
// accuracy ~1e-11 over the range used here (validated against a
// high-precision quadrature oracle in the test suite).
double bessel_j1(double x);
double bessel_j2(double x);

// Survival amplitude of the semicircle spectrum: f(tau) = J1(2 tau)/tau,
// with f(0) = 1.
double survival_amplitude(double tau);

// d f/d tau = -2 J2(2 tau)/tau, with value 0 at tau = 0.
double survival_amplitude_derivative(double tau);

// Number of principal components for an evolving state, full finite-N form
// built from f(tau) and f(2 tau).
double npc_analytic(double tau, std::size_t dim);

// Simplified form [ f^4 + 2/N ]^-1.
double npc_simple(double tau, std::size_t dim);

// Infinite-dimension limit |f|^-4 (diverges at roots of f).
double npc_infinite(double tau);

// Long-time survival envelope through the local maxima, 1/(pi tau^3).
double survival_envelope(double tau);

// The analytic relaxation channels for an initial observable eigenstate
// with eigenvalue q0 in a space of dimension dim with Tr Q^2 / N = tr_q2:
// q, dq2, p, p2, npc and survival evaluated on the given scaled-time grid.
struct UniversalChannels {
    std::vector<double> survival;
    std::vector<double> q;
    std::vector<double> dq2;
    std::vector<double> p;
    std::vector<double> p2;
    std::vector<double> npc;
};

UniversalChannels universal_channels(const std::vector<double>& tau_grid, double q0,
                                     std::size_t dim, double tr_q2_over_n);

} // namespace qrelax
