#include "qrelax/boson.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "qrelax/rng.hpp"
#include "qrelax/spectral.hpp"

namespace qrelax {

std::size_t boson_dimension(std::size_t n_bosons, std::size_t n_levels) {
    if (n_bosons == 0 || n_levels == 0)
        throw std::invalid_argument("boson_dimension: counts must be >= 1");
    // C(n + l - 1, n) with overflow guard
    unsigned __int128 num = 1;
    for (std::size_t i = 1; i <= n_bosons; ++i) {
        num = num * (n_levels - 1 + i);
        num /= i;
        if (num > static_cast<unsigned __int128>(1) << 62)
            throw std::overflow_error("boson_dimension: dimension overflow");
    }
    return static_cast<std::size_t>(num);
}

namespace {

void enumerate_rec(std::vector<std::uint8_t>& prefix, std::size_t remaining,
                   std::size_t levels_left, std::vector<std::vector<std::uint8_t>>& out) {
    if (levels_left == 1) {
        prefix.push_back(static_cast<std::uint8_t>(remaining));
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (std::size_t k = remaining + 1; k-- > 0;) {
        prefix.push_back(static_cast<std::uint8_t>(k));
        enumerate_rec(prefix, remaining - k, levels_left - 1, out);
        prefix.pop_back();
    }
}

// occupation vector -> 64-bit key (bit_width(n_bosons) bits per level)
struct OccupationKey {
    unsigned bits;
    std::uint64_t operator()(const std::vector<std::uint8_t>& s) const {
        std::uint64_t key = 0;
        for (std::uint8_t o : s) key = (key << bits) | o;
        return key;
    }
};

} // namespace

OccupationBasis enumerate_basis(const BosonModelParams& p) {
    const std::size_t dim = boson_dimension(p.n_bosons, p.n_levels);
    if (dim > p.dim_cap)
        throw std::overflow_error("enumerate_basis: dimension " + std::to_string(dim) +
                                  " exceeds cap " + std::to_string(p.dim_cap));
    OccupationBasis basis;
    basis.n_levels = p.n_levels;
    basis.states.reserve(dim);
    std::vector<std::uint8_t> prefix;
    prefix.reserve(p.n_levels);
    enumerate_rec(prefix, p.n_bosons, p.n_levels, basis.states);
    return basis;
}

HermitianOperator build_hamiltonian(const BosonModelParams& p, const OccupationBasis& basis) {
    const std::size_t dim = basis.dim();
    if (dim == 0 || basis.n_levels != p.n_levels)
        throw std::invalid_argument("build_hamiltonian: basis does not match params");
    const std::size_t nl = p.n_levels;

    const unsigned bits = std::bit_width(static_cast<unsigned>(p.n_bosons));
    if (bits * nl > 64)
        throw std::invalid_argument("build_hamiltonian: occupation key exceeds 64 bits");
    OccupationKey keyer{bits};
    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(dim * 2);
    for (std::size_t i = 0; i < dim; ++i) index.emplace(keyer(basis.states[i]), i);

    // unordered level pairs (k <= l)
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k < nl; ++k)
        for (std::size_t l = k; l < nl; ++l) pairs.emplace_back(k, l);
    const std::size_t np = pairs.size();

    // GOE-like pair-element matrix, drawn in documented row-major
    // upper-triangle order; diagonal elements get doubled variance.
    Matrix vmat(np, np);
    GaussianStream gauss(p.seed);
    for (std::size_t a = 0; a < np; ++a)
        for (std::size_t b = a; b < np; ++b) {
            double g = gauss.next();
            if (a == b) g *= std::sqrt(2.0);
            vmat(a, b) = g;
            vmat(b, a) = g;
        }

    HermitianOperator h;
    h.basis_label = "occupation";
    h.mat = Matrix(dim, dim);

    std::vector<std::uint8_t> mid(nl), tgt(nl);
    for (std::size_t j = 0; j < dim; ++j) {
        const auto& s = basis.states[j];
        double e0 = 0.0;
        for (std::size_t k = 0; k < nl; ++k) e0 += static_cast<double>(k) * s[k];
        h.mat(j, j) += e0;

        for (std::size_t qi = 0; qi < np; ++qi) {
            const auto [m, n] = pairs[qi];
            double famp;
            if (m == n) {
                if (s[m] < 2) continue;
                famp = std::sqrt(static_cast<double>(s[m]) * (s[m] - 1));
            } else {
                if (s[m] < 1 || s[n] < 1) continue;
                famp = std::sqrt(static_cast<double>(s[m]) * s[n]);
            }
            mid.assign(s.begin(), s.end());
            --mid[m];
            --mid[n];
            const double wq = (m == n) ? 1.0 : 2.0;

            for (std::size_t pi = 0; pi < np; ++pi) {
                const auto [k, l] = pairs[pi];
                tgt.assign(mid.begin(), mid.end());
                double gamp;
                if (k == l) {
                    gamp = std::sqrt(static_cast<double>(tgt[k] + 1) * (tgt[k] + 2));
                    tgt[k] += 2;
                } else {
                    gamp = std::sqrt(static_cast<double>(tgt[k] + 1) * (tgt[l] + 1));
                    ++tgt[k];
                    ++tgt[l];
                }
                const auto it = index.find(keyer(tgt));
                const std::size_t i = it->second;
                // accumulate the lower triangle only; mirrored afterwards so
                // the result is exactly symmetric
                if (i < j) continue;
                const double wp = (k == l) ? 1.0 : 2.0;
                h.mat(i, j) += 0.5 * wq * wp * p.v * vmat(pi, qi) * famp * gamp;
            }
        }
    }
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = j + 1; i < dim; ++i) h.mat(j, i) = h.mat(i, j);
    return h;
}

BosonRelaxation run_boson_relaxation(const BosonModelParams& p, std::size_t initial_index,
                                     const RelaxationOptions& opt) {
    const OccupationBasis basis = enumerate_basis(p);
    const std::size_t dim = basis.dim();
    if (initial_index >= dim)
        throw std::invalid_argument("run_boson_relaxation: initial index out of range");

    const HermitianOperator h = build_hamiltonian(p, basis);
    BosonRelaxation out;
    out.lambda = spectral_width(h);
    {
        double s = 0.0, s2 = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            double e0 = 0.0;
            for (std::size_t k = 0; k < p.n_levels; ++k)
                e0 += static_cast<double>(k) * basis.states[j][k];
            s += e0;
            s2 += e0 * e0;
        }
        const double mean = s / static_cast<double>(dim);
        out.lambda0 = std::sqrt(std::max(0.0, s2 / static_cast<double>(dim) - mean * mean));
    }
    const double lambda_a = state_width(h, initial_index);

    const Spectrum spec = diagonalize(h);
    const ObservableSpectrum q = uniform_traceless_observable(dim);
    out.record = run_relaxation(spec, q, initial_index, out.lambda, lambda_a, opt);

    // form factor on the same grid, in scaled time and centered energies
    std::vector<double> t_grid(out.record.tau.size());
    for (std::size_t j = 0; j < t_grid.size(); ++j) t_grid[j] = out.record.tau[j] / out.lambda;
    double tr = 0.0;
    for (double e : spec.energies) tr += e;
    const double ebar = tr / static_cast<double>(dim);
    Spectrum centered;
    centered.basis_label = spec.basis_label;
    centered.energies = spec.energies;
    for (double& e : centered.energies) e -= ebar;
    out.form_factor = trace_form_factor(centered, t_grid);
    out.form_factor.t_grid = out.record.tau;
    return out;
}

} // namespace qrelax
