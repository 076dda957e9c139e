#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "../errors.hpp"
#include "quadrature.hpp"

namespace copulas {
namespace tools {

//! standard normal cdf
inline double normal_cdf(double x)
{
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

//! standard normal quantile (Acklam's rational estimate plus one Halley step)
inline double normal_quantile(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("normal_quantile: probability outside [0, 1]");
    if (p == 0.0)
        return -std::numeric_limits<double>::infinity();
    if (p == 1.0)
        return std::numeric_limits<double>::infinity();

    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement against the exact cdf
    const double e = normal_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

//! digamma function for x > 0
inline double digamma(double x)
{
    if (!(x > 0.0))
        throw std::invalid_argument("digamma: argument must be positive");
    double r = 0.0;
    while (x < 10.0) {
        r -= 1.0 / x;
        x += 1.0;
    }
    const double f = 1.0 / (x * x);
    return r + std::log(x) - 0.5 / x
        - f
        * (1.0 / 12.0
           - f * (1.0 / 120.0
                  - f * (1.0 / 252.0
                         - f * (1.0 / 240.0 - f * (1.0 / 132.0 - f * 691.0 / 32760.0)))));
}

//! trigamma function for x > 0
inline double trigamma(double x)
{
    if (!(x > 0.0))
        throw std::invalid_argument("trigamma: argument must be positive");
    double r = 0.0;
    while (x < 10.0) {
        r += 1.0 / (x * x);
        x += 1.0;
    }
    const double f = 1.0 / (x * x);
    return r + 1.0 / x + 0.5 * f
        + f / x
        * (1.0 / 6.0 - f * (1.0 / 30.0 - f * (1.0 / 42.0 - f * (1.0 / 30.0 - f * 5.0 / 66.0))));
}

//! regularized lower incomplete gamma P(a, x)
inline double gamma_p(double a, double x)
{
    if (!(a > 0.0))
        throw std::invalid_argument("gamma_p: shape must be positive");
    if (!(x >= 0.0))
        throw std::invalid_argument("gamma_p: argument must be nonnegative");
    if (x == 0.0)
        return 0.0;
    const double log_prefactor = a * std::log(x) - x - std::lgamma(a);
    if (x < a + 1.0) {
        // series for the lower function
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < 1000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16)
                return std::min(1.0, sum * std::exp(log_prefactor));
        }
        throw NumericError("gamma_p: series did not converge");
    }
    // Lentz continued fraction for the upper function
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return std::max(0.0, 1.0 - std::exp(log_prefactor) * h);
    }
    throw NumericError("gamma_p: continued fraction did not converge");
}

//! log of the binomial coefficient C(n, k)
inline double log_binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        throw std::invalid_argument("log_binomial: invalid pair");
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

//! Debye function of order one, D1(x) = (1/x) * int_0^x t/(e^t - 1) dt
inline double debye1(double x)
{
    if (x == 0.0)
        return 1.0;
    auto integrand = [](double t) {
        return std::abs(t) < 1e-8 ? 1.0 - 0.5 * t : t / std::expm1(t);
    };
    const double lo = std::min(0.0, x);
    const double hi = std::max(0.0, x);
    double integral = adaptive_simpson(integrand, lo, hi, 1e-13);
    if (x < 0.0)
        integral = -integral;
    return integral / x;
}

}
}
