#include "qrelax/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrelax/constants.hpp"
#include "qrelax/kernels.hpp"

namespace qrelax {

double ObservableSpectrum::trace() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

double ObservableSpectrum::trace_sq_over_dim() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s / static_cast<double>(values.size());
}

ObservableSpectrum uniform_traceless_observable(std::size_t dim, double q_scale) {
    if (dim == 0) throw std::invalid_argument("uniform_traceless_observable: dim must be >= 1");
    ObservableSpectrum q;
    q.values.resize(dim);
    if (dim == 1) {
        q.values[0] = 0.0;
        return q;
    }
    const double root3 = std::sqrt(3.0);
    for (std::size_t a = 0; a < dim; ++a)
        q.values[a] = q_scale * root3 *
                      (2.0 * static_cast<double>(a) - static_cast<double>(dim - 1)) /
                      static_cast<double>(dim - 1);
    // remove the rounding residue so the trace is exactly centered
    double mean = 0.0;
    for (double v : q.values) mean += v;
    mean /= static_cast<double>(dim);
    for (double& v : q.values) v -= mean;
    return q;
}

std::size_t nearest_index(const ObservableSpectrum& q, double target) {
    if (q.values.empty()) throw std::invalid_argument("nearest_index: empty spectrum");
    std::size_t best = 0;
    double best_d = std::fabs(q.values[0] - target);
    for (std::size_t a = 1; a < q.values.size(); ++a) {
        const double d = std::fabs(q.values[a] - target);
        if (d < best_d) {
            best = a;
            best_d = d;
        }
    }
    return best;
}

double expectation_q(const ObservableSpectrum& q, const WavePacket& psi) {
    if (q.dim() != psi.dim()) throw std::invalid_argument("expectation_q: basis mismatch");
    double s = 0.0;
    for (std::size_t a = 0; a < q.dim(); ++a) s += q.values[a] * std::norm(psi.amplitudes[a]);
    return s;
}

double uncertainty_q(const ObservableSpectrum& q, const WavePacket& psi) {
    if (q.dim() != psi.dim()) throw std::invalid_argument("uncertainty_q: basis mismatch");
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t a = 0; a < q.dim(); ++a) {
        const double w = std::norm(psi.amplitudes[a]);
        s1 += q.values[a] * w;
        s2 += q.values[a] * q.values[a] * w;
    }
    return s2 - s1 * s1;
}

MomentumOperator momentum_operator(const HermitianOperator& h, const HermitianOperator& q) {
    const std::size_t n = h.dim();
    if (q.dim() != n) throw std::invalid_argument("momentum_operator: dimension mismatch");
    MomentumOperator p;
    p.commutator = Matrix(n, n);
    // K = HQ - QH
    gemm('N', 1.0, h.mat, q.mat.data(), n, n, 0.0, p.commutator.data());
    Matrix qh(n, n);
    gemm('N', 1.0, q.mat, h.mat.data(), n, n, 0.0, qh.data());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) p.commutator(i, j) -= qh(i, j);
    return p;
}

MomentumOperator momentum_operator(const HermitianOperator& h, const ObservableSpectrum& q) {
    const std::size_t n = h.dim();
    if (q.dim() != n) throw std::invalid_argument("momentum_operator: dimension mismatch");
    MomentumOperator p;
    p.commutator = Matrix(n, n);
    // K_ij = H_ij (Q_j - Q_i) for diagonal Q
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            p.commutator(i, j) = h.mat(i, j) * (q.values[j] - q.values[i]);
    return p;
}

double MomentumOperator::expectation(const WavePacket& psi) const {
    const std::size_t n = dim();
    if (psi.dim() != n) throw std::invalid_argument("MomentumOperator: dimension mismatch");
    // <psi| iK |psi> = -2 Im sum_ij conj(psi_i) K_ij psi_j / ... K real:
    // i (psi^dag K psi) with psi^dag K psi purely imaginary.
    std::vector<double> re(n), im(n), kre(n, 0.0), kim(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = psi.amplitudes[i].real();
        im[i] = psi.amplitudes[i].imag();
    }
    gemm('N', 1.0, commutator, re.data(), n, 1, 0.0, kre.data());
    gemm('N', 1.0, commutator, im.data(), n, 1, 0.0, kim.data());
    double dot_im = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot_im += re[i] * kim[i] - im[i] * kre[i];
    // i * (i * dot_im) = -dot_im
    return -dot_im;
}

double MomentumOperator::square_expectation(const WavePacket& psi) const {
    const std::size_t n = dim();
    if (psi.dim() != n) throw std::invalid_argument("MomentumOperator: dimension mismatch");
    std::vector<double> re(n), im(n), kre(n, 0.0), kim(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        re[i] = psi.amplitudes[i].real();
        im[i] = psi.amplitudes[i].imag();
    }
    gemm('N', 1.0, commutator, re.data(), n, 1, 0.0, kre.data());
    gemm('N', 1.0, commutator, im.data(), n, 1, 0.0, kim.data());
    return kernels().sum_abs2(kre.data(), kim.data(), n);
}

double npc(const PropagatorColumn& col) {
    double s4 = 0.0;
    for (const auto& z : col.entries) {
        const double a2 = std::norm(z);
        s4 += a2 * a2;
    }
    if (s4 <= 0.0) throw std::invalid_argument("npc: zero column");
    return 1.0 / s4;
}

double static_npc(const Spectrum& spec, std::size_t eigenvector_index) {
    const std::size_t n = spec.dim();
    if (eigenvector_index >= n) throw std::invalid_argument("static_npc: index out of range");
    const double* v = spec.vectors.col(eigenvector_index);
    double s2 = 0.0, s4 = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        const double w = v[a] * v[a];
        s2 += w;
        s4 += w * w;
    }
    if (s4 <= 0.0) throw std::invalid_argument("static_npc: zero vector");
    return s2 * s2 / s4;
}

double static_npc(const std::vector<std::complex<double>>& direction) {
    double s2 = 0.0, s4 = 0.0;
    for (const auto& z : direction) {
        const double w = std::norm(z);
        s2 += w;
        s4 += w * w;
    }
    if (s4 <= 0.0) throw std::invalid_argument("static_npc: zero vector");
    return s2 * s2 / s4;
}

AmplitudeDecomposition amplitude_decomposition(const PropagatorColumn& col) {
    AmplitudeDecomposition d;
    for (std::size_t a = 0; a < col.entries.size(); ++a) {
        if (a == col.source_index) continue;
        const double r = col.entries[a].real();
        const double m = col.entries[a].imag();
        d.sum_re2 += r * r;
        d.sum_im2 += m * m;
    }
    d.survival = std::norm(col.entries[col.source_index]);
    return d;
}

namespace {

std::size_t freedman_diaconis_bins(std::vector<double> sorted, double lo, double hi) {
    const std::size_t n = sorted.size();
    const double q1 = sorted[n / 4];
    const double q3 = sorted[(3 * n) / 4];
    const double iqr = q3 - q1;
    const double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
    if (!(width > 0.0) || !(hi > lo)) return 16;
    const double b = std::ceil((hi - lo) / width);
    return static_cast<std::size_t>(std::clamp(b, 4.0, 4096.0));
}

// Quadratic vertex fit on log density around the histogram peak. Falls back
// to sample mean/stddev when the peak sits on the boundary or neighbors are
// empty.
void peak_normalized_axes(Histogram& h, double sample_mean, double sample_sd) {
    const std::size_t nb = h.density.size();
    std::size_t pk = 0;
    for (std::size_t i = 1; i < nb; ++i)
        if (h.density[i] > h.density[pk]) pk = i;

    double x0 = sample_mean;
    double sigma = sample_sd > 0.0 ? sample_sd : 1.0;
    double d0 = h.density[pk];
    if (pk > 0 && pk + 1 < nb && h.density[pk - 1] > 0.0 && h.density[pk + 1] > 0.0) {
        const double dx = h.centers[1] - h.centers[0];
        const double lm = std::log(h.density[pk - 1]);
        const double l0 = std::log(h.density[pk]);
        const double lp = std::log(h.density[pk + 1]);
        const double curv = (lm - 2.0 * l0 + lp) / (dx * dx);
        if (curv < 0.0) {
            const double shift = 0.5 * (lm - lp) / (lm - 2.0 * l0 + lp);
            x0 = h.centers[pk] + shift * dx;
            sigma = 1.0 / std::sqrt(-curv);
            const double lpk = l0 - 0.25 * (lm - lp) * shift;
            d0 = std::exp(lpk);
        }
    }
    h.scaled_x.resize(nb);
    h.scaled_density.resize(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        h.scaled_x[i] = (h.centers[i] - x0) / sigma;
        h.scaled_density[i] = d0 > 0.0 ? h.density[i] / d0 : h.density[i];
    }
}

} // namespace

Histogram amplitude_histogram(const PropagatorColumn& col, AmplitudePart part,
                              std::size_t bins) {
    const std::size_t n = col.entries.size();
    if (n < 101) throw std::invalid_argument("amplitude_histogram: needs >= 100 off-diagonal entries");

    std::vector<double> x;
    x.reserve(n - 1);
    for (std::size_t a = 0; a < n; ++a) {
        if (a == col.source_index) continue;
        x.push_back(part == AmplitudePart::Real ? col.entries[a].real()
                                                : col.entries[a].imag());
    }
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front();
    const double hi = sorted.back();
    if (bins == 0) bins = freedman_diaconis_bins(sorted, lo, hi);

    Histogram h;
    const double span = (hi > lo) ? (hi - lo) : 1.0;
    const double width = span / static_cast<double>(bins);
    h.edges.resize(bins + 1);
    h.centers.resize(bins);
    h.density.assign(bins, 0.0);
    for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = lo + width * static_cast<double>(i);
    for (std::size_t i = 0; i < bins; ++i) h.centers[i] = 0.5 * (h.edges[i] + h.edges[i + 1]);
    for (double v : x) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        if (b >= bins) b = bins - 1;
        h.density[b] += 1.0;
    }
    const double norm = 1.0 / (static_cast<double>(x.size()) * width);
    for (double& d : h.density) d *= norm;

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    peak_normalized_axes(h, mean, std::sqrt(var));
    return h;
}

StrengthFunction strength_function(const ObservableSpectrum& q, const PropagatorColumn& col,
                                   std::size_t bins, std::size_t smooth_window) {
    const std::size_t n = col.entries.size();
    if (q.dim() != n) throw std::invalid_argument("strength_function: basis mismatch");

    std::vector<double> sorted_q = q.values;
    std::sort(sorted_q.begin(), sorted_q.end());
    const double lo = sorted_q.front();
    const double hi = sorted_q.back();
    if (bins == 0) bins = freedman_diaconis_bins(sorted_q, lo, hi);

    StrengthFunction g;
    const double span = (hi > lo) ? (hi - lo) : 1.0;
    const double width = span / static_cast<double>(bins);
    g.edges.resize(bins + 1);
    g.centers.resize(bins);
    g.mass.assign(bins, 0.0);
    for (std::size_t i = 0; i <= bins; ++i) g.edges[i] = lo + width * static_cast<double>(i);
    for (std::size_t i = 0; i < bins; ++i) g.centers[i] = 0.5 * (g.edges[i] + g.edges[i + 1]);
    for (std::size_t a = 0; a < n; ++a) {
        auto b = static_cast<std::size_t>((q.values[a] - lo) / width);
        if (b >= bins) b = bins - 1;
        g.mass[b] += std::norm(col.entries[a]);
    }

    // moving average of off-diagonal weights along Q
    if (smooth_window % 2 == 0) ++smooth_window;
    std::vector<std::pair<double, double>> offd;
    offd.reserve(n - 1);
    for (std::size_t a = 0; a < n; ++a) {
        if (a == col.source_index) continue;
        offd.emplace_back(q.values[a], std::norm(col.entries[a]));
    }
    std::sort(offd.begin(), offd.end());
    const std::size_t half = smooth_window / 2;
    g.smoothed_q.resize(offd.size());
    g.smoothed_offdiag.resize(offd.size());
    double window_sum = 0.0;
    for (std::size_t i = 0; i < offd.size(); ++i) {
        const std::size_t b = (i >= half) ? i - half : 0;
        const std::size_t e = std::min(offd.size(), i + half + 1);
        if (i == 0) {
            for (std::size_t k = b; k < e; ++k) window_sum += offd[k].second;
        } else {
            const std::size_t pb = (i - 1 >= half) ? i - 1 - half : 0;
            const std::size_t pe = std::min(offd.size(), i + half);
            if (b > pb) window_sum -= offd[pb].second;
            if (e > pe) window_sum += offd[e - 1].second;
        }
        g.smoothed_q[i] = offd[i].first;
        g.smoothed_offdiag[i] = window_sum / static_cast<double>(e - b);
    }
    return g;
}

RelaxationRecord run_relaxation(const Spectrum& spec, const ObservableSpectrum& q,
                                std::size_t a0, double lambda, double lambda_a,
                                const RelaxationOptions& opt) {
    const std::size_t n = spec.dim();
    if (q.dim() != n) throw std::invalid_argument("run_relaxation: observable dimension mismatch");
    if (a0 >= n) throw std::invalid_argument("run_relaxation: initial index out of range");
    if (opt.tau_steps < 2) throw std::invalid_argument("run_relaxation: tau_steps must be >= 2");
    if (!(opt.tau_max > 0.0)) throw std::invalid_argument("run_relaxation: tau_max must be > 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("run_relaxation: lambda must be > 0");

    RelaxationRecord rec;
    rec.a0 = a0;
    rec.q0 = q.values[a0];
    rec.lambda = lambda;
    rec.lambda_a = lambda_a;
    const std::size_t steps = opt.tau_steps;
    rec.tau.resize(steps);
    const double dtau = opt.tau_max / static_cast<double>(steps - 1);
    for (std::size_t j = 0; j < steps; ++j) rec.tau[j] = dtau * static_cast<double>(j);

    rec.survival.resize(steps);
    rec.re_f.resize(steps);
    rec.im_f.resize(steps);
    rec.q.resize(steps);
    rec.dq2.resize(steps);
    rec.npc.resize(steps);
    rec.off_re2.resize(steps);
    rec.off_im2.resize(steps);
    if (opt.with_momentum) {
        rec.p.resize(steps);
        rec.p2.resize(steps);
    }

    // nearest grid index for each requested snapshot
    std::vector<std::size_t> snap_idx;
    for (double ts : opt.snapshot_taus) {
        const double j = std::clamp(std::round(ts / dtau), 0.0, static_cast<double>(steps - 1));
        snap_idx.push_back(static_cast<std::size_t>(j));
    }

    // Propagator phases follow the traceless convention Tr H = 0: a constant
    // energy offset only rotates the overall phase of the column, so every
    // channel except Re f / Im f is unaffected; those two are reported in
    // the centered convention.
    std::vector<double> energies = spec.energies;
    double ebar = 0.0;
    for (double e : energies) ebar += e;
    ebar /= static_cast<double>(n);
    for (double& e : energies) e -= ebar;

    // row a0 of the eigenvector matrix: c_k = <k|a0>
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = spec.vectors(a0, k);

    std::vector<double> qsq(n);
    for (std::size_t a = 0; a < n; ++a) qsq[a] = q.values[a] * q.values[a];

    const Kernels& K = kernels();
    const std::size_t chunk = std::max<std::size_t>(1, opt.chunk);
    std::vector<double> zre(n * chunk), zim(n * chunk);
    std::vector<double> pre(n * chunk), pim(n * chunk);    // Psi
    std::vector<double> vre, vim, gre, gim, wre, wim;      // H Psi and H Q Psi panels
    if (opt.with_momentum) {
        vre.resize(n * chunk);
        vim.resize(n * chunk);
        gre.resize(n * chunk);
        gim.resize(n * chunk);
        wre.resize(n * chunk);
        wim.resize(n * chunk);
    }

    for (std::size_t j0 = 0; j0 < steps; j0 += chunk) {
        const std::size_t m = std::min(chunk, steps - j0);
        // coefficients z_k = c_k exp(-i E_k t), one column per grid point
        for (std::size_t jj = 0; jj < m; ++jj) {
            const double t = rec.tau[j0 + jj] / lambda;
            double* zr = zre.data() + jj * n;
            double* zi = zim.data() + jj * n;
            for (std::size_t k = 0; k < n; ++k) {
                const double ph = -energies[k] * t;
                zr[k] = c[k] * std::cos(ph);
                zi[k] = c[k] * std::sin(ph);
            }
        }
        gemm('N', 1.0, spec.vectors, zre.data(), n, m, 0.0, pre.data());
        gemm('N', 1.0, spec.vectors, zim.data(), n, m, 0.0, pim.data());

        if (opt.with_momentum) {
            // V = H Psi = U (E z); reuse z scaled by E
            for (std::size_t jj = 0; jj < m; ++jj) {
                double* zr = zre.data() + jj * n;
                double* zi = zim.data() + jj * n;
                for (std::size_t k = 0; k < n; ++k) {
                    zr[k] *= energies[k];
                    zi[k] *= energies[k];
                }
            }
            gemm('N', 1.0, spec.vectors, zre.data(), n, m, 0.0, vre.data());
            gemm('N', 1.0, spec.vectors, zim.data(), n, m, 0.0, vim.data());

            // W = H (Q Psi) routed through the eigenbasis
            for (std::size_t jj = 0; jj < m; ++jj)
                for (std::size_t a = 0; a < n; ++a) {
                    wre[jj * n + a] = q.values[a] * pre[jj * n + a];
                    wim[jj * n + a] = q.values[a] * pim[jj * n + a];
                }
            gemm('T', 1.0, spec.vectors, wre.data(), n, m, 0.0, gre.data());
            gemm('T', 1.0, spec.vectors, wim.data(), n, m, 0.0, gim.data());
            for (std::size_t jj = 0; jj < m; ++jj)
                for (std::size_t k = 0; k < n; ++k) {
                    gre[jj * n + k] *= energies[k];
                    gim[jj * n + k] *= energies[k];
                }
            gemm('N', 1.0, spec.vectors, gre.data(), n, m, 0.0, wre.data());
            gemm('N', 1.0, spec.vectors, gim.data(), n, m, 0.0, wim.data());
        }

        for (std::size_t jj = 0; jj < m; ++jj) {
            const std::size_t j = j0 + jj;
            const double* fr = pre.data() + jj * n;
            const double* fi = pim.data() + jj * n;
            const double fr0 = fr[a0], fi0 = fi[a0];
            rec.re_f[j] = fr0;
            rec.im_f[j] = fi0;
            rec.survival[j] = fr0 * fr0 + fi0 * fi0;
            const double qs = K.weighted_abs2(q.values.data(), fr, fi, n);
            const double q2s = K.weighted_abs2(qsq.data(), fr, fi, n);
            rec.q[j] = qs;
            rec.dq2[j] = q2s - qs * qs;
            rec.npc[j] = 1.0 / K.sum_abs4(fr, fi, n);
            rec.off_re2[j] = K.sum_sq(fr, n) - fr0 * fr0;
            rec.off_im2[j] = K.sum_sq(fi, n) - fi0 * fi0;

            if (opt.with_momentum) {
                const double* vr = vre.data() + jj * n;
                const double* vi = vim.data() + jj * n;
                const double* hr = wre.data() + jj * n;
                const double* hi = wim.data() + jj * n;
                // u = Q psi; p = -2 Im(v^dag u) / lambda
                double dim_ = 0.0, p2 = 0.0;
                for (std::size_t a = 0; a < n; ++a) {
                    const double ur = q.values[a] * fr[a];
                    const double ui = q.values[a] * fi[a];
                    dim_ += vr[a] * ui - vi[a] * ur;
                    const double er = hr[a] - q.values[a] * vr[a];
                    const double ei = hi[a] - q.values[a] * vi[a];
                    p2 += er * er + ei * ei;
                }
                rec.p[j] = -2.0 * dim_ / lambda;
                rec.p2[j] = p2 / (lambda * lambda);
            }

            for (std::size_t s = 0; s < snap_idx.size(); ++s) {
                if (snap_idx[s] != j) continue;
                PropagatorColumn colsnap;
                colsnap.t = rec.tau[j] / lambda;
                colsnap.source_index = a0;
                colsnap.entries.resize(n);
                for (std::size_t a = 0; a < n; ++a) colsnap.entries[a] = {fr[a], fi[a]};
                rec.snapshots.emplace_back(rec.tau[j], std::move(colsnap));
            }
        }
    }
    return rec;
}

} // namespace qrelax
