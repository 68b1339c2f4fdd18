#include "qrelax/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qrelax/kernels.hpp"

namespace qrelax {
namespace {

// Truncated ladder applies: (Q psi)_n and (P psi)_n for Q = (c+c^+)/sqrt(2w),
// P = i sqrt(w/2)(c^+ - c).
void apply_q(double omega, const std::vector<std::complex<double>>& psi,
             std::vector<std::complex<double>>& out) {
    const std::size_t n = psi.size();
    out.assign(n, {0.0, 0.0});
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double g = std::sqrt((static_cast<double>(k) + 1.0) / (2.0 * omega));
        out[k] += g * psi[k + 1];
        out[k + 1] += g * psi[k];
    }
}

void apply_p(double omega, const std::vector<std::complex<double>>& psi,
             std::vector<std::complex<double>>& out) {
    const std::size_t n = psi.size();
    out.assign(n, {0.0, 0.0});
    const std::complex<double> i_unit{0.0, 1.0};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double g = std::sqrt(omega * (static_cast<double>(k) + 1.0) / 2.0);
        out[k] += -i_unit * g * psi[k + 1];
        out[k + 1] += i_unit * g * psi[k];
    }
}

OscillatorSeries evolve_fock(const std::vector<std::complex<double>>& amps0, double omega,
                             const std::vector<double>& t_grid) {
    const std::size_t n = amps0.size();
    OscillatorSeries s;
    s.t_grid = t_grid;
    const std::size_t m = t_grid.size();
    s.q.resize(m);
    s.p.resize(m);
    s.dq2.resize(m);
    s.dp2.resize(m);
    s.cov_qp.resize(m);
    s.survival.resize(m);

    std::vector<double> a0re(n), a0im(n), phre(n), phim(n), atre(n), atim(n);
    for (std::size_t k = 0; k < n; ++k) {
        a0re[k] = amps0[k].real();
        a0im[k] = amps0[k].imag();
    }
    std::vector<std::complex<double>> psi(n), qpsi, ppsi;
    const Kernels& K = kernels();

    for (std::size_t j = 0; j < m; ++j) {
        const double t = t_grid[j];
        for (std::size_t k = 0; k < n; ++k) {
            const double ph = -omega * (static_cast<double>(k) + 0.5) * t;
            phre[k] = std::cos(ph);
            phim[k] = std::sin(ph);
        }
        K.cmul(a0re.data(), a0im.data(), phre.data(), phim.data(), atre.data(),
               atim.data(), n);
        for (std::size_t k = 0; k < n; ++k) psi[k] = {atre[k], atim[k]};

        apply_q(omega, psi, qpsi);
        apply_p(omega, psi, ppsi);
        double q1 = 0.0, p1 = 0.0, q2 = 0.0, p2 = 0.0;
        std::complex<double> qp{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            q1 += (std::conj(psi[k]) * qpsi[k]).real();
            p1 += (std::conj(psi[k]) * ppsi[k]).real();
            q2 += std::norm(qpsi[k]);
            p2 += std::norm(ppsi[k]);
            qp += std::conj(qpsi[k]) * ppsi[k];
        }
        s.q[j] = q1;
        s.p[j] = p1;
        s.dq2[j] = q2 - q1 * q1;
        s.dp2[j] = p2 - p1 * p1;
        s.cov_qp[j] = qp.real() - q1 * p1;

        double ore = 0.0, oim = 0.0;
        K.dot_conj(a0re.data(), a0im.data(), atre.data(), atim.data(), n, &ore, &oim);
        s.survival[j] = ore * ore + oim * oim;
    }
    return s;
}

} // namespace

std::vector<std::complex<double>> coherent_amplitudes(const CoherentParams& p) {
    const std::size_t n = p.n_max + 1;
    std::vector<std::complex<double>> a(n);
    const double absa = std::abs(p.alpha);
    const double arga = std::arg(p.alpha);
    const double log_absa = absa > 0.0 ? std::log(absa) : 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (absa == 0.0) {
            a[k] = (k == 0) ? 1.0 : 0.0;
            continue;
        }
        const double kk = static_cast<double>(k);
        const double log_mag = -0.5 * absa * absa + kk * log_absa - 0.5 * std::lgamma(kk + 1.0);
        const double mag = std::exp(log_mag);
        a[k] = {mag * std::cos(kk * arga), mag * std::sin(kk * arga)};
    }
    return a;
}

double coherent_leakage(const CoherentParams& p) {
    const auto a = coherent_amplitudes(p);
    double s = 0.0;
    for (const auto& z : a) s += std::norm(z);
    return 1.0 - s;
}

OscillatorSeries coherent_dynamics(const CoherentParams& p, const std::vector<double>& t_grid) {
    OscillatorSeries s;
    s.t_grid = t_grid;
    const std::size_t m = t_grid.size();
    s.q.resize(m);
    s.p.resize(m);
    s.dq2.assign(m, 1.0 / (2.0 * p.omega));
    s.dp2.assign(m, p.omega / 2.0);
    s.cov_qp.assign(m, 0.0);
    s.survival.resize(m);
    const double a2 = std::norm(p.alpha);
    for (std::size_t j = 0; j < m; ++j) {
        const double t = t_grid[j];
        const std::complex<double> at =
            p.alpha * std::exp(std::complex<double>(0.0, -p.omega * t));
        s.q[j] = std::sqrt(2.0 / p.omega) * at.real();
        s.p[j] = std::sqrt(2.0 * p.omega) * at.imag();
        const double sn = std::sin(0.5 * p.omega * t);
        s.survival[j] = std::exp(-4.0 * a2 * sn * sn);
    }
    return s;
}

OscillatorSeries coherent_numeric(const CoherentParams& p, const std::vector<double>& t_grid) {
    if (!(p.omega > 0.0)) throw std::invalid_argument("coherent_numeric: omega must be > 0");
    const double leak = coherent_leakage(p);
    if (leak > 1e-12)
        throw std::invalid_argument("coherent_numeric: truncation leakage above 1e-12; raise n_max");
    auto a = coherent_amplitudes(p);
    // normalize away the (tiny) truncated tail so norms stay exact
    double nn = 0.0;
    for (const auto& z : a) nn += std::norm(z);
    const double inv = 1.0 / std::sqrt(nn);
    for (auto& z : a) z *= inv;
    return evolve_fock(a, p.omega, t_grid);
}

std::vector<double> squeezed_amplitudes(const SqueezedParams& p) {
    if (!(p.omega > 0.0)) throw std::invalid_argument("squeezed_amplitudes: omega must be > 0");
    if (p.n_max < 2) throw std::invalid_argument("squeezed_amplitudes: n_max too small");
    const std::size_t n = p.n_max + 1;
    // oscillator eigenfunctions at the coordinate value, by recurrence
    const double x = std::sqrt(p.omega) * p.a_position;
    std::vector<double> c(n);
    c[0] = std::pow(p.omega / std::numbers::pi, 0.25) * std::exp(-0.5 * x * x);
    if (n > 1) c[1] = std::sqrt(2.0) * x * c[0];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        const double kk = static_cast<double>(k);
        c[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * x * c[k] -
                   std::sqrt(kk / (kk + 1.0)) * c[k - 1];
    }
    double nn = 0.0;
    for (double v : c) nn += v * v;
    if (!(nn > 0.0)) throw std::invalid_argument("squeezed_amplitudes: vanishing truncated norm");
    const double inv = 1.0 / std::sqrt(nn);
    for (double& v : c) v *= inv;
    return c;
}

OscillatorSeries squeezed_dynamics(const SqueezedParams& p, const std::vector<double>& t_grid) {
    const auto c = squeezed_amplitudes(p);
    std::vector<std::complex<double>> a(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) a[k] = c[k];
    return evolve_fock(a, p.omega, t_grid);
}

} // namespace qrelax
