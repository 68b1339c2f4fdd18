#pragma once
// Independent numerical oracles used only by the test suites. These stay
// deliberately naive and separate from the library implementations they
// check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <set>
#include <vector>

namespace oracle {

// Adaptive Simpson quadrature.
inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fb, double fm, double whole, double eps,
                          int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, fm, flm, left, 0.5 * eps, depth - 1) +
           simpson_rec(f, m, b, fm, fb, frm, right, 0.5 * eps, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-13) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fb, fm, whole, eps, 48);
}

// Survival amplitude of the semicircle spectrum by direct quadrature of
// (1/2pi) Int sqrt(4-e^2) cos(e tau) de with the substitution e = 2 sin(th),
// which removes the edge singularities.
inline double semicircle_transform(double tau) {
    auto g = [tau](double th) {
        const double c = std::cos(th);
        return (2.0 / std::numbers::pi) * c * c * std::cos(2.0 * tau * std::sin(th));
    };
    return integrate(g, -std::numbers::pi / 2.0, std::numbers::pi / 2.0);
}

// d f / d tau by quadrature: -(1/2pi) Int sqrt(4-e^2) e sin(e tau) de.
inline double semicircle_transform_derivative(double tau) {
    auto g = [tau](double th) {
        const double c = std::cos(th);
        const double e = 2.0 * std::sin(th);
        return -(2.0 / std::numbers::pi) * c * c * e * std::sin(e * tau);
    };
    return integrate(g, -std::numbers::pi / 2.0, std::numbers::pi / 2.0);
}

// Exhaustive bosonic occupation enumeration with dedup, for cross-checking
// the production basis generator.
inline void brute_occupations_rec(std::vector<int>& cur, std::size_t level, int left,
                                  std::set<std::vector<int>>& out) {
    if (level + 1 == cur.size()) {
        cur[level] = left;
        out.insert(cur);
        return;
    }
    for (int k = 0; k <= left; ++k) {
        cur[level] = k;
        brute_occupations_rec(cur, level + 1, left - k, out);
    }
}

inline std::set<std::vector<int>> brute_occupations(int n_bosons, int n_levels) {
    std::set<std::vector<int>> out;
    std::vector<int> cur(n_levels, 0);
    brute_occupations_rec(cur, 0, n_bosons, out);
    return out;
}

} // namespace oracle
