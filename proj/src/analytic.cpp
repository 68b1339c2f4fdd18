#include "qrelax/analytic.hpp"

#include <cmath>
#include <numbers>

namespace qrelax {
namespace {

constexpr double kSeriesAsymptoticSwitch = 12.0;

// Ascending power series sum_k (-1)^k (x/2)^{2k+nu} / (k! (k+nu)!).
// At the switchover the largest term is ~4e3 against values O(0.1), which
// costs ~12 digits of headroom and keeps the absolute error near 1e-12.
double jnu_series(int nu, double x) {
    const double h = 0.5 * x;
    double term = 1.0;
    for (int k = 1; k <= nu; ++k) term *= h / k;
    double sum = term;
    const double h2 = h * h;
    for (int k = 1; k < 64; ++k) {
        term *= -h2 / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (std::fabs(term) < 1e-18 * (1.0 + std::fabs(sum))) break;
    }
    return sum;
}

// Hankel asymptotic expansion: J_nu(x) ~ sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
// chi = x - (2 nu + 1) pi / 4. Terms are added while they keep decreasing.
double jnu_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    const double ix8 = 1.0 / (8.0 * x);
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = std::fabs(term);
    for (int k = 1; k <= 12; ++k) {
        const double f = mu - static_cast<double>(2 * k - 1) * (2 * k - 1);
        term *= f * ix8 / k;
        if (std::fabs(term) > prev) break;
        prev = std::fabs(term);
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            default: p += term; break;
        }
        if (std::fabs(term) < 1e-18) break;
    }
    const double chi = x - (2 * nu + 1) * std::numbers::pi / 4.0;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double jnu(int nu, double x) {
    if (x < kSeriesAsymptoticSwitch) return jnu_series(nu, x);
    return jnu_asymptotic(nu, x);
}

} // namespace

double bessel_j1(double x) { return jnu(1, x); }
double bessel_j2(double x) { return jnu(2, x); }

double survival_amplitude(double tau) {
    if (tau < 1e-8) {
        // J1(2t)/t = 1 - t^2/2 + t^4/12 - ...
        const double t2 = tau * tau;
        return 1.0 - 0.5 * t2 + t2 * t2 / 12.0;
    }
    return bessel_j1(2.0 * tau) / tau;
}

double survival_amplitude_derivative(double tau) {
    if (tau < 1e-8) {
        // -2 J2(2t)/t = -t + t^3/6 - ...
        return -tau + tau * tau * tau / 6.0;
    }
    return -2.0 * bessel_j2(2.0 * tau) / tau;
}

double npc_analytic(double tau, std::size_t dim) {
    const double f = survival_amplitude(tau);
    const double f2t = survival_amplitude(2.0 * tau);
    const double f2 = f * f;
    const double f4 = f2 * f2;
    const double bracket =
        f4 + (2.0 + 3.0 * f4 + f2t * f2t - 4.0 * f2 - 2.0 * f2 * f2t) /
                 static_cast<double>(dim);
    return 1.0 / bracket;
}

double npc_simple(double tau, std::size_t dim) {
    const double f = survival_amplitude(tau);
    const double f4 = f * f * f * f;
    return 1.0 / (f4 + 2.0 / static_cast<double>(dim));
}

double npc_infinite(double tau) {
    const double f = survival_amplitude(tau);
    return 1.0 / (f * f * f * f);
}

double survival_envelope(double tau) {
    return 1.0 / (std::numbers::pi * tau * tau * tau);
}

UniversalChannels universal_channels(const std::vector<double>& tau_grid, double q0,
                                     std::size_t dim, double tr_q2_over_n) {
    UniversalChannels out;
    const std::size_t m = tau_grid.size();
    out.survival.resize(m);
    out.q.resize(m);
    out.dq2.resize(m);
    out.p.resize(m);
    out.p2.resize(m);
    out.npc.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double tau = tau_grid[i];
        const double f = survival_amplitude(tau);
        const double fp = survival_amplitude_derivative(tau);
        const double f2 = f * f;
        const double fp2 = fp * fp;
        out.survival[i] = f2;
        out.q[i] = q0 * f2;
        out.dq2[i] = q0 * q0 * (f2 - f2 * f2) + (1.0 - f2) * tr_q2_over_n;
        out.p[i] = 2.0 * q0 * f * fp;
        out.p2[i] = q0 * q0 * (f2 + fp2) + (2.0 - f2 - fp2) * tr_q2_over_n;
        out.npc[i] = npc_analytic(tau, dim);
    }
    return out;
}

} // namespace qrelax
