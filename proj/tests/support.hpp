#pragma once

//! shared helpers for the test suites: KS statistics, C-volumes, and a
//! finite-difference mixed derivative for density checks

#include <algorithm>
#include <cmath>
#include <concepts>
#include <vector>

#include <Eigen/Dense>

#include <copulas/copula.hpp>

namespace support {

//! one-sample Kolmogorov-Smirnov statistic against Uniform(0, 1)
inline double ks_uniform(Eigen::VectorXd x)
{
    std::sort(x.begin(), x.end());
    const auto n = static_cast<double>(x.size());
    double d = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        d = std::max(d, x[i] - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - x[i]);
    }
    return d;
}

//! asymptotic 1% critical value for the one-sample KS statistic
inline double ks_critical_1pct(Eigen::Index n)
{
    return 1.6276236307187293 / std::sqrt(static_cast<double>(n));
}

//! two-sample Kolmogorov-Smirnov statistic
inline double ks_two_sample(Eigen::VectorXd x, Eigen::VectorXd y)
{
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const auto nx = static_cast<double>(x.size());
    const auto ny = static_cast<double>(y.size());
    double d = 0.0;
    Eigen::Index i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] <= y[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    return d;
}

//! asymptotic 1% critical value for the two-sample KS statistic
inline double ks2_critical_1pct(Eigen::Index n, Eigen::Index m)
{
    const auto nn = static_cast<double>(n);
    const auto mm = static_cast<double>(m);
    return 1.6276236307187293 * std::sqrt((nn + mm) / (nn * mm));
}

//! measure the box (lo, hi] under the copula by inclusion-exclusion
inline double c_volume(const copulas::Copula& c, const Eigen::VectorXd& lo,
                       const Eigen::VectorXd& hi)
{
    const Eigen::Index d = lo.size();
    double volume = 0.0;
    for (unsigned corner = 0; corner < (1u << d); ++corner) {
        Eigen::VectorXd u(d);
        int n_low = 0;
        for (Eigen::Index k = 0; k < d; ++k) {
            const bool low = corner & (1u << k);
            u[k] = low ? lo[k] : hi[k];
            n_low += low;
        }
        volume += (n_low % 2 == 0 ? 1.0 : -1.0) * c.cdf(u);
    }
    return volume;
}

//! mixed second derivative of a bivariate cdf by Richardson-extrapolated
//! central differences; the stencil must stay inside the domain
template <typename F>
    requires std::invocable<F&, double, double>
double mixed_fd_density(F&& cdf2, double u, double v, double h = 1e-3)
{
    auto cross = [&](double step) {
        return (cdf2(u + step, v + step) - cdf2(u + step, v - step)
                - cdf2(u - step, v + step) + cdf2(u - step, v - step))
            / (4.0 * step * step);
    };
    return (16.0 * cross(h / 2.0) - cross(h)) / 15.0;
}

inline double mixed_fd_density(const copulas::Copula& c, double u, double v, double h = 1e-3)
{
    return mixed_fd_density(
        [&c](double a, double b) {
            Eigen::VectorXd p(2);
            p << a, b;
            return c.cdf(p);
        },
        u, v, h);
}

}
