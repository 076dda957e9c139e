#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>

#include <Eigen/Dense>

#include "errors.hpp"
#include "generators.hpp"
#include "radial.hpp"
#include "random.hpp"
#include "tools/quadrature.hpp"
#include "tools/roots.hpp"

namespace copulas {

//! uniform draw from the unit simplex {s_i >= 0, sum s_i = 1}
inline Eigen::VectorXd sample_simplex(int d, RandomEngine& rng)
{
    if (d < 2)
        throw std::invalid_argument("sample_simplex: dimension must be at least 2");
    Eigen::VectorXd e(d);
    for (int i = 0; i < d; ++i)
        e[i] = exponential1(rng);
    return e / e.sum();
}

//! draw from a radial law through the generalized inverse of its cdf
//!
//! Brackets by doubling from x = 1, then bisects to relative width 1e-12
//! keeping the upper end, so atoms resolve to their exact location.
inline double sample_radial(const RadialDistribution& r, RandomEngine& rng)
{
    const double u = uniform01(rng);
    auto cdf = [&r](double x) { return r.cdf(x); };
    double hi = r.upper_bound();
    if (!std::isfinite(hi))
        hi = tools::expand_upper(cdf, u, 1.0);
    return tools::invert_nondecreasing(cdf, u, 0.0, hi, 1e-12);
}

//! generator built from a radial law by the Williamson d-transform,
//! phi(t) = E[(1 - t/R)_+^{d-1}]
//!
//! Discrete laws are summed exactly; otherwise the expectation is computed
//! by adaptive quadrature of the parts-integrated form
//! phi(t) = (d-1) * int_0^1 (1-v)^{d-2} (1 - F(t/v)) dv.
class WilliamsonGenerator final : public ArchimedeanGenerator {
public:
    WilliamsonGenerator(std::shared_ptr<const RadialDistribution> radial, int d)
        : radial_(std::move(radial))
        , d_(d)
    {
        if (!radial_)
            throw std::invalid_argument("WilliamsonGenerator: null radial law");
        if (d < 2)
            throw std::invalid_argument("WilliamsonGenerator: dimension must be at least 2");
    }

    double phi(double t) const override
    {
        check_nonnegative(t);
        if (t == 0.0)
            return 1.0;
        if (t >= radial_->upper_bound())
            return 0.0;
        if (const auto* atoms = radial_->atoms()) {
            double s = 0.0;
            for (const RadialDistribution::Atom& a : *atoms)
                if (a.location > t)
                    s += a.weight * std::pow(1.0 - t / a.location, d_ - 1.0);
            return s;
        }
        auto integrand = [this, t](double v) {
            if (v <= 0.0)
                return 0.0;
            const double tail = 1.0 - radial_->cdf(t / v);
            if (tail <= 0.0)
                return 0.0;
            return std::pow(1.0 - v, d_ - 2.0) * tail;
        };
        // the integrand vanishes for v <= t / sup R; keeping that dead zone in
        // the domain lets the quadrature probe only zeros and converge falsely
        double lo = 0.0;
        if (std::isfinite(radial_->upper_bound()))
            lo = t / radial_->upper_bound();
        const double value = (d_ - 1.0) * tools::adaptive_simpson(integrand, lo, 1.0, 1e-11);
        return std::min(1.0, std::max(0.0, value));
    }

    double upper_support() const override { return radial_->upper_bound(); }

    const RadialDistribution& radial_law() const { return *radial_; }

    int transform_dim() const { return d_; }

private:
    std::shared_ptr<const RadialDistribution> radial_;
    int d_;
};

//! Williamson d-transform of a radial law
inline std::shared_ptr<const WilliamsonGenerator>
williamson_transform(std::shared_ptr<const RadialDistribution> radial, int d)
{
    return std::make_shared<WilliamsonGenerator>(std::move(radial), d);
}

//! radial law recovered from a generator by the inverse Williamson d-transform
//!
//! F_R(x) = 1 - sum_{k=0}^{d-2} (-1)^k x^k phi^(k)(x) / k!
//!            - (-1)^{d-1} x^{d-1} phi^(d-1)(x) / (d-1)!
//! with values clamped to [0, 1]; derivative noise can push the raw formula
//! a few ulp outside.
class GeneratorRadial final : public RadialDistribution {
public:
    GeneratorRadial(std::shared_ptr<const ArchimedeanGenerator> gen, int d)
        : gen_(std::move(gen))
        , d_(d)
    {
        if (!gen_)
            throw std::invalid_argument("GeneratorRadial: null generator");
        if (d < 2)
            throw std::invalid_argument("GeneratorRadial: dimension must be at least 2");
    }

    double cdf(double x) const override
    {
        // generators with a vertical tangent at 0 make x^k phi^(k)(x)
        // indeterminate there; the limit is 0
        if (x <= 1e-100)
            return 0.0;
        if (x >= gen_->upper_support())
            return 1.0;
        double sum = 0.0;
        double sign = 1.0;
        double xk = 1.0;
        double factorial = 1.0;
        for (int k = 0; k <= d_ - 2; ++k) {
            sum += sign * xk * gen_->phi_deriv(k, x) / factorial;
            sign = -sign;
            xk *= x;
            factorial *= k + 1.0;
        }
        sum += sign * xk * gen_->phi_deriv(d_ - 1, x) / factorial;
        const double f = 1.0 - sum;
        return std::min(1.0, std::max(0.0, f));
    }

    double upper_bound() const override { return gen_->upper_support(); }

private:
    std::shared_ptr<const ArchimedeanGenerator> gen_;
    int d_;
};

//! radial law of a generator in dimension d; families knowing their law in
//! closed form return it, everything else goes through GeneratorRadial
inline std::shared_ptr<const RadialDistribution>
inverse_williamson(std::shared_ptr<const ArchimedeanGenerator> gen, int d)
{
    if (!gen)
        throw std::invalid_argument("inverse_williamson: null generator");
    if (auto exact = gen->radial(d))
        return std::shared_ptr<const RadialDistribution>(std::move(exact));
    return std::make_shared<GeneratorRadial>(std::move(gen), d);
}

}
