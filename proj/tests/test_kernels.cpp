#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qrelax/kernels.hpp"
#include "qrelax/rng.hpp"

using namespace qrelax;

namespace {

std::vector<double> random_vec(SplitMix64& rng, std::size_t n, double scale = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = scale * rng.next_symmetric();
    return v;
}

} // namespace

TEST_CASE("scalar and dispatched kernels agree on random inputs") {
    const Kernels& ref = scalar_kernels();
    const Kernels& act = kernels();
    INFO("active kernel set: ", act.name);
    SplitMix64 rng(123);
    // lengths straddle the vector width and include the empty case
    for (const std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 17u, 64u, 1000u, 1003u}) {
        const auto re = random_vec(rng, n), im = random_vec(rng, n), w = random_vec(rng, n);
        const double tol = 1e-13 * (static_cast<double>(n) + 1.0);
        CHECK(ref.sum_sq(re.data(), n) == doctest::Approx(act.sum_sq(re.data(), n)).epsilon(tol));
        CHECK(ref.sum_abs2(re.data(), im.data(), n) ==
              doctest::Approx(act.sum_abs2(re.data(), im.data(), n)).epsilon(tol));
        CHECK(ref.sum_abs4(re.data(), im.data(), n) ==
              doctest::Approx(act.sum_abs4(re.data(), im.data(), n)).epsilon(tol));
        CHECK(ref.weighted_abs2(w.data(), re.data(), im.data(), n) ==
              doctest::Approx(act.weighted_abs2(w.data(), re.data(), im.data(), n)).epsilon(tol));

        std::vector<double> or1(n), oi1(n), or2(n), oi2(n);
        ref.cmul(re.data(), im.data(), w.data(), re.data(), or1.data(), oi1.data(), n);
        act.cmul(re.data(), im.data(), w.data(), re.data(), or2.data(), oi2.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(or1[i] == doctest::Approx(or2[i]).epsilon(1e-14));
            CHECK(oi1[i] == doctest::Approx(oi2[i]).epsilon(1e-14));
        }

        double r1, i1, r2, i2;
        ref.dot_conj(re.data(), im.data(), w.data(), re.data(), n, &r1, &i1);
        act.dot_conj(re.data(), im.data(), w.data(), re.data(), n, &r2, &i2);
        CHECK(r1 == doctest::Approx(r2).epsilon(tol));
        CHECK(i1 == doctest::Approx(i2).epsilon(tol));
    }
}

TEST_CASE("kernel identities on structured inputs") {
    const Kernels& k = kernels();
    std::vector<double> ones(10, 1.0), zeros(10, 0.0);
    CHECK(k.sum_sq(ones.data(), 10) == doctest::Approx(10.0));
    CHECK(k.sum_abs2(ones.data(), ones.data(), 10) == doctest::Approx(20.0));
    CHECK(k.sum_abs4(ones.data(), ones.data(), 10) == doctest::Approx(40.0));
    CHECK(k.sum_abs2(zeros.data(), zeros.data(), 10) == 0.0);

    // |z|^2-weighted sums match explicit complex arithmetic
    SplitMix64 rng(7);
    const auto a = random_vec(rng, 129), b = random_vec(rng, 129), w = random_vec(rng, 129);
    double expect = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) expect += w[i] * (a[i] * a[i] + b[i] * b[i]);
    CHECK(k.weighted_abs2(w.data(), a.data(), b.data(), a.size()) ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("avx2 detection is consistent with the dispatch") {
    if (avx2_available()) {
#if defined(__x86_64__)
        CHECK(std::string(avx2_kernels().name) == "avx2");
#endif
    }
    CHECK((std::string(kernels().name) == "avx2" || std::string(kernels().name) == "scalar"));
}
