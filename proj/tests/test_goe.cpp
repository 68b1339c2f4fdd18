#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qrelax/goe.hpp"
#include "qrelax/linalg.hpp"
#include "qrelax/spectral.hpp"

using namespace qrelax;

TEST_CASE("sample_goe rejects bad parameters") {
    CHECK_THROWS_AS(sample_goe({0, 1.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(sample_goe({10, 0.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(sample_goe({10, -1.0, 1}), std::invalid_argument);
}

TEST_CASE("dim=1 draw is trivially symmetric") {
    const auto op = sample_goe({1, 1.0, 7});
    CHECK(op.dim() == 1);
}

TEST_CASE("draws are exactly symmetric and bit-reproducible") {
    const auto a = sample_goe({64, 1.0, 42});
    for (std::size_t i = 0; i < 64; ++i)
        for (std::size_t j = 0; j < 64; ++j) CHECK(a.mat(i, j) == a.mat(j, i));
    const auto b = sample_goe({64, 1.0, 42});
    CHECK(a.mat == b.mat);
    const auto c = sample_goe({64, 1.0, 43});
    CHECK(a.mat != c.mat);
}

TEST_CASE("lambda scaling is an exact multiplication") {
    const auto unit = sample_goe({32, 1.0, 5});
    const auto scaled = sample_goe({32, 2.5, 5});
    for (std::size_t i = 0; i < 32; ++i)
        for (std::size_t j = 0; j < 32; ++j)
            CHECK(scaled.mat(i, j) == 2.5 * unit.mat(i, j));
}

TEST_CASE("semicircle density values and normalization") {
    CHECK(semicircle_density(0.0, 1.0) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-14));
    CHECK(semicircle_density(2.0, 1.0) == 0.0);
    CHECK(semicircle_density(-2.0, 1.0) == 0.0);
    CHECK(semicircle_density(5.0, 1.0) == 0.0);
    CHECK_THROWS_AS(semicircle_density(0.0, 0.0), std::invalid_argument);

    // integral over the support via quadrature with the edge substitution
    // E = 2 lambda sin(theta)
    for (const double lambda : {1.0, 0.37}) {
        auto g = [lambda](double th) {
            const double e = 2.0 * lambda * std::sin(th);
            return semicircle_density(e, lambda) * 2.0 * lambda * std::cos(th);
        };
        const double total = oracle::integrate(g, -std::numbers::pi / 2, std::numbers::pi / 2);
        CHECK(std::fabs(total - 1.0) < 1e-10);
    }
}

TEST_CASE("dim=2000 sample matches the semicircle scale") {
    const auto op = sample_goe({2000, 1.0, 11});
    const double width = spectral_width(op);
    CHECK(width > 0.97);
    CHECK(width < 1.03);

    const auto evals = eigvalsh(op.mat);
    std::size_t outside = 0;
    for (const double e : evals)
        if (std::fabs(e) > 2.1) ++outside;
    CHECK(static_cast<double>(outside) / 2000.0 < 1e-3);
    // spectrum edges near +-2 lambda
    CHECK(evals.front() > -2.1);
    CHECK(evals.front() < -1.9);
    CHECK(evals.back() > 1.9);
    CHECK(evals.back() < 2.1);
}
