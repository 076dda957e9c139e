#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "../errors.hpp"

namespace copulas {
namespace tools {

//! root of a continuous f with f(lo) and f(hi) of opposite sign
template <class F>
double bisect_root(F&& f, double lo, double hi, double xtol, int max_iter = 200)
{
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0)
        return lo;
    if (fhi == 0.0)
        return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw std::invalid_argument("bisect_root: no sign change over the bracket");
    for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (fmid == 0.0)
            return mid;
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

//! smallest x >= start with g(x) >= level, found by doubling the step
//!
//! g must be nondecreasing. Gives up (NumericError) after 1024 doublings.
template <class G>
double expand_upper(G&& g, double level, double start)
{
    double hi = start;
    double step = start > 0.0 ? start : 1.0;
    for (int it = 0; it < 1024; ++it) {
        if (g(hi) >= level)
            return hi;
        hi += step;
        step *= 2.0;
    }
    throw NumericError("expand_upper: no bracket after 1024 doublings");
}

//! generalized inverse inf{x : g(x) >= level} of a nondecreasing g
//!
//! Bisects [lo, hi] (requires g(hi) >= level > g(lo) unless lo attains it)
//! to relative width rel_tol and returns the upper end, so jumps of g
//! resolve to the infimum from above.
template <class G>
double invert_nondecreasing(G&& g, double level, double lo, double hi,
                            double rel_tol = 1e-12, int max_iter = 400)
{
    if (g(lo) >= level)
        return lo;
    for (int it = 0; it < max_iter; ++it) {
        const double width = hi - lo;
        if (width <= rel_tol * std::max(1.0, std::abs(hi)))
            break;
        const double mid = 0.5 * (lo + hi);
        if (g(mid) >= level)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

//! maximizer of a unimodal f on [a, b] by golden-section search
template <class F>
std::pair<double, double> golden_section_max(F&& f, double a, double b, double xtol,
                                             int max_iter = 400)
{
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter && b - a > xtol; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        }
    }
    return f1 < f2 ? std::make_pair(x2, f2) : std::make_pair(x1, f1);
}

}
}
