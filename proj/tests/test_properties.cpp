#include <doctest.h>

#include <cmath>
#include <complex>

#include "qrelax/constants.hpp"
#include "qrelax/observables.hpp"
#include "qrelax/rng.hpp"
#include "qrelax/spectral.hpp"

// Property suite over random small Hamiltonian/observable pairs: the
// algebraic identities that must hold for every input, not just ensembles.

using namespace qrelax;
using cplx = std::complex<double>;

namespace {

struct Sample {
    HermitianOperator h;
    ObservableSpectrum q;
    std::size_t dim;
};

Sample random_sample(SplitMix64& rng) {
    Sample s;
    s.dim = 2 + static_cast<std::size_t>(rng.next_u64() % 63);
    GaussianStream g(rng.next_u64());
    s.h.mat = Matrix(s.dim, s.dim);
    const double scale = 0.1 + 3.0 * rng.next_unit();
    for (std::size_t i = 0; i < s.dim; ++i)
        for (std::size_t j = i; j < s.dim; ++j) {
            const double v = scale * g.next();
            s.h.mat(i, j) = v;
            s.h.mat(j, i) = v;
        }
    s.q.values.resize(s.dim);
    for (auto& v : s.q.values) v = 2.0 * g.next();
    return s;
}

} // namespace

TEST_CASE("algebraic identities hold on 100 random small systems") {
    SplitMix64 rng(20240817);
    for (int iter = 0; iter < 100; ++iter) {
        const Sample s = random_sample(rng);
        const auto spec = diagonalize(s.h);
        GaussianStream g(rng.next_u64());

        // normalized random packet
        WavePacket psi;
        psi.amplitudes.resize(s.dim);
        double nn = 0.0;
        for (auto& z : psi.amplitudes) {
            z = {g.next(), g.next()};
            nn += std::norm(z);
        }
        for (auto& z : psi.amplitudes) z /= std::sqrt(nn);
        WavePacket phi;
        phi.amplitudes.resize(s.dim);
        nn = 0.0;
        for (auto& z : phi.amplitudes) {
            z = {g.next(), g.next()};
            nn += std::norm(z);
        }
        for (auto& z : phi.amplitudes) z /= std::sqrt(nn);

        const double t = -3.0 + 6.0 * rng.next_unit();

        // unitarity
        const auto psit = evolve(spec, psi, t);
        CHECK(std::fabs(psit.norm_sq() - 1.0) < tol::kUnitarity);

        // overlap conservation
        const auto phit = evolve(spec, phi, t);
        CHECK(std::abs(overlap(phit, psit) - overlap(phi, psi)) < tol::kOverlap);

        // width identity: mean_a lambda_a^2 = lambda^2 - Var[H_aa]
        double acc = 0.0;
        for (std::size_t a = 0; a < s.dim; ++a) {
            const double w = state_width(s.h, a);
            acc += w * w;
        }
        acc /= static_cast<double>(s.dim);
        const double lam = spectral_width(s.h);
        const double expect = lam * lam - diagonal_variance(s.h);
        CHECK(std::fabs(acc - expect) < 1e-10 * std::max(1.0, std::fabs(expect)));

        // propagator pairing f_{a a'}(t) = conj(f_{a' a}(-t)) and the
        // same-time symmetry f_{a a'}(t) = f_{a' a}(t)
        const std::size_t a = rng.next_u64() % s.dim;
        const std::size_t ap = rng.next_u64() % s.dim;
        const auto fwd = propagator_column(spec, ap, t);
        const auto bwd = propagator_column(spec, a, -t);
        CHECK(std::abs(fwd.entries[a] - std::conj(bwd.entries[ap])) < 1e-10);
        const auto fwd2 = propagator_column(spec, a, t);
        CHECK(std::abs(fwd.entries[a] - fwd2.entries[ap]) < 1e-10);

        // strength function carries unit mass
        const auto sf = strength_function(s.q, fwd, 1 + iter % 16);
        double mass = 0.0;
        for (const double m : sf.mass) mass += m;
        CHECK(std::fabs(mass - 1.0) < tol::kStrengthMass);
    }
}
