#include "qrelax/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "qrelax/constants.hpp"
#include "qrelax/kernels.hpp"

namespace qrelax {

double WavePacket::norm_sq() const {
    double s = 0.0;
    for (const auto& z : amplitudes) s += std::norm(z);
    return s;
}

Spectrum diagonalize(const HermitianOperator& h) {
    if (h.dim() == 0) throw std::invalid_argument("diagonalize: empty operator");
    if (relative_asymmetry(h.mat) > tol::kSymmetryInput)
        throw std::invalid_argument("diagonalize: input is not symmetric");
    Spectrum spec;
    spec.basis_label = h.basis_label;
    eigh(h.mat, spec.energies, spec.vectors);
    return spec;
}

namespace {

// c = U^T psi for a complex psi, split into planar re/im.
void to_eigenbasis(const Spectrum& spec, const WavePacket& psi, std::vector<double>& cre,
                   std::vector<double>& cim) {
    const std::size_t n = spec.dim();
    std::vector<double> pre(n), pim(n);
    for (std::size_t i = 0; i < n; ++i) {
        pre[i] = psi.amplitudes[i].real();
        pim[i] = psi.amplitudes[i].imag();
    }
    cre.assign(n, 0.0);
    cim.assign(n, 0.0);
    gemm('T', 1.0, spec.vectors, pre.data(), n, 1, 0.0, cre.data());
    gemm('T', 1.0, spec.vectors, pim.data(), n, 1, 0.0, cim.data());
}

} // namespace

WavePacket evolve(const Spectrum& spec, const WavePacket& psi0, double t) {
    const std::size_t n = spec.dim();
    if (psi0.dim() != n) throw std::invalid_argument("evolve: dimension mismatch");

    std::vector<double> cre, cim;
    to_eigenbasis(spec, psi0, cre, cim);
    std::vector<double> zre(n), zim(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double ph = -spec.energies[k] * t;
        const double c = std::cos(ph), s = std::sin(ph);
        zre[k] = cre[k] * c - cim[k] * s;
        zim[k] = cre[k] * s + cim[k] * c;
    }
    std::vector<double> ore(n, 0.0), oim(n, 0.0);
    gemm('N', 1.0, spec.vectors, zre.data(), n, 1, 0.0, ore.data());
    gemm('N', 1.0, spec.vectors, zim.data(), n, 1, 0.0, oim.data());

    WavePacket out;
    out.basis_label = psi0.basis_label;
    out.amplitudes.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.amplitudes[i] = {ore[i], oim[i]};

    const double nrm = kernels().sum_abs2(ore.data(), oim.data(), n);
    if (std::fabs(nrm - psi0.norm_sq()) > tol::kNorm)
        throw std::runtime_error("evolve: norm drifted beyond tolerance");
    return out;
}

std::complex<double> overlap(const WavePacket& a, const WavePacket& b) {
    const std::size_t n = a.dim();
    if (b.dim() != n) throw std::invalid_argument("overlap: dimension mismatch");
    std::vector<double> are(n), aim(n), bre(n), bim(n);
    for (std::size_t i = 0; i < n; ++i) {
        are[i] = a.amplitudes[i].real();
        aim[i] = a.amplitudes[i].imag();
        bre[i] = b.amplitudes[i].real();
        bim[i] = b.amplitudes[i].imag();
    }
    double re = 0.0, im = 0.0;
    kernels().dot_conj(are.data(), aim.data(), bre.data(), bim.data(), n, &re, &im);
    return {re, im};
}

PropagatorColumn propagator_column(const Spectrum& spec, std::size_t a0, double t) {
    const std::size_t n = spec.dim();
    if (a0 >= n) throw std::invalid_argument("propagator_column: source index out of range");

    // entries[a] = sum_n U_{a n} e^{-i E_n t} U_{a0 n}
    std::vector<double> zre(n), zim(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double c = spec.vectors(a0, k);
        const double ph = -spec.energies[k] * t;
        zre[k] = c * std::cos(ph);
        zim[k] = c * std::sin(ph);
    }
    std::vector<double> ore(n, 0.0), oim(n, 0.0);
    gemm('N', 1.0, spec.vectors, zre.data(), n, 1, 0.0, ore.data());
    gemm('N', 1.0, spec.vectors, zim.data(), n, 1, 0.0, oim.data());

    PropagatorColumn col;
    col.t = t;
    col.source_index = a0;
    col.entries.resize(n);
    for (std::size_t i = 0; i < n; ++i) col.entries[i] = {ore[i], oim[i]};
    return col;
}

std::complex<double> survival_amplitude_numeric(const Spectrum& spec, std::size_t a0,
                                                double t) {
    const std::size_t n = spec.dim();
    if (a0 >= n) throw std::invalid_argument("survival_amplitude_numeric: index out of range");
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double w = spec.vectors(a0, k) * spec.vectors(a0, k);
        const double ph = -spec.energies[k] * t;
        re += w * std::cos(ph);
        im += w * std::sin(ph);
    }
    return {re, im};
}

FormFactorSeries trace_form_factor(const Spectrum& spec, const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("trace_form_factor: empty grid");
    const std::size_t n = spec.dim();
    FormFactorSeries out;
    out.t_grid = t_grid;
    out.re.resize(t_grid.size());
    out.im.resize(t_grid.size());
    out.abs2.resize(t_grid.size());
    for (std::size_t j = 0; j < t_grid.size(); ++j) {
        double re = 0.0, im = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double ph = -spec.energies[k] * t_grid[j];
            re += std::cos(ph);
            im += std::sin(ph);
        }
        re /= static_cast<double>(n);
        im /= static_cast<double>(n);
        out.re[j] = re;
        out.im[j] = im;
        out.abs2[j] = re * re + im * im;
    }
    return out;
}

double spectral_width(const HermitianOperator& h) {
    const std::size_t n = h.dim();
    const double tr2 = kernels().sum_sq(h.mat.data(), n * n);
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += h.mat(i, i);
    const double mean = tr / static_cast<double>(n);
    const double var = tr2 / static_cast<double>(n) - mean * mean;
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

double state_width(const HermitianOperator& h, std::size_t a) {
    const std::size_t n = h.dim();
    if (a >= n) throw std::invalid_argument("state_width: index out of range");
    // <a|H^2|a> = |H e_a|^2, <a|H|a> = H_aa
    const double h2aa = kernels().sum_sq(h.mat.col(a), n);
    const double haa = h.mat(a, a);
    const double var = h2aa - haa * haa;
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

double diagonal_variance(const HermitianOperator& h) {
    const std::size_t n = h.dim();
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += h.mat(i, i);
        s2 += h.mat(i, i) * h.mat(i, i);
    }
    const double mean = s / static_cast<double>(n);
    return s2 / static_cast<double>(n) - mean * mean;
}

ShortTimeCoefficients short_time_expansion(const HermitianOperator& h,
                                           const HermitianOperator& q, std::size_t a) {
    const std::size_t n = h.dim();
    if (q.dim() != n) throw std::invalid_argument("short_time_expansion: dimension mismatch");
    if (a >= n) throw std::invalid_argument("short_time_expansion: index out of range");

    // [H,[H,Q]] |a> built from matrix-vector products.
    std::vector<double> qa(n, 0.0), ha(n, 0.0), hha(n, 0.0), qha(n, 0.0);
    const double* ea_q = q.mat.col(a);  // Q e_a  (column a of symmetric Q)
    const double* ea_h = h.mat.col(a);  // H e_a
    qa.assign(ea_q, ea_q + n);
    ha.assign(ea_h, ea_h + n);
    symv(h.mat, ha.data(), hha.data());   // H^2 e_a
    symv(q.mat, ha.data(), qha.data());   // Q H e_a

    // <a|[H,[H,Q]]|a> = <a|H^2 Q|a> - 2 <a|H Q H|a> + <a|Q H^2|a>
    double h2q = 0.0, hqh = 0.0, qh2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        h2q += hha[i] * qa[i];
        hqh += ha[i] * qha[i];
        qh2 += qa[i] * hha[i];
    }
    ShortTimeCoefficients c;
    c.c0 = q.mat(a, a);
    c.c1 = 0.0;
    c.c2 = -0.5 * (h2q - 2.0 * hqh + qh2);
    return c;
}

double offdiagonal_short_time_weight(const HermitianOperator& h, std::size_t a,
                                     std::size_t a_prime, double t) {
    if (a >= h.dim() || a_prime >= h.dim())
        throw std::invalid_argument("offdiagonal_short_time_weight: index out of range");
    const double haa = h.mat(a, a_prime);
    return t * t * haa * haa;
}

} // namespace qrelax
