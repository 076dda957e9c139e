#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "../errors.hpp"

namespace copulas {
namespace tools {

namespace detail {

template <class F>
struct SimpsonState {
    F& f;
    double tol_leftover = 0.0; // error surrendered by panels that hit max depth

    double run(double a, double fa, double m, double fm, double b, double fb,
               double whole, double tol, int depth)
    {
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double err = (left + right - whole) / 15.0;
        if (std::abs(err) <= tol || depth <= 0) {
            if (depth <= 0 && std::abs(err) > tol)
                tol_leftover += std::abs(err);
            return left + right + err;
        }
        return run(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1)
            + run(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
    }
};

} // namespace detail

//! adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol
//!
//! Throws NumericError (reporting the tolerance actually achieved) when
//! refinement bottoms out before the error estimate falls below tol.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48)
{
    if (!(a <= b))
        throw std::invalid_argument("adaptive_simpson: interval endpoints out of order");
    if (a == b)
        return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    detail::SimpsonState<F> state{f};
    const double value = state.run(a, fa, m, fm, b, fb, whole, tol, max_depth);
    if (state.tol_leftover > tol) {
        throw NumericError("quadrature did not converge: achieved tolerance "
                           + std::to_string(state.tol_leftover) + ", requested "
                           + std::to_string(tol));
    }
    return value;
}

//! nodes and weights of the n-point Gauss-Legendre rule on [-1, 1]
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n)
{
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: order must be positive");
    std::vector<double> x(n), w(n);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root
        double z = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p0 / pp;
            if (std::abs(z - z1) < 1e-15)
                break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
    return {std::move(x), std::move(w)};
}

//! Gauss-Legendre rule mapped onto [0, 1]
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre01(int n)
{
    auto [x, w] = gauss_legendre(n);
    for (int i = 0; i < n; ++i) {
        x[i] = 0.5 * (x[i] + 1.0);
        w[i] *= 0.5;
    }
    return {std::move(x), std::move(w)};
}

}
}
