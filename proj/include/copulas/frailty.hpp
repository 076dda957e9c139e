#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "random.hpp"
#include "tools/roots.hpp"
#include "tools/special.hpp"

namespace copulas {

//! positive mixing variable W whose Laplace transform is an Archimedean
//! generator; sampling U_i = laplace(E_i / W) yields that copula
class FrailtySampler {
public:
    virtual ~FrailtySampler() = default;

    virtual double draw(RandomEngine& rng) const = 0;

    //! E[exp(-t W)]
    virtual double laplace(double t) const = 0;
};

//! Gamma(shape, 1) frailty; Laplace transform (1 + t)^(-shape)
class GammaFrailty final : public FrailtySampler {
public:
    explicit GammaFrailty(double shape)
        : shape_(shape)
    {
        if (!(shape > 0.0))
            throw std::domain_error("GammaFrailty: shape must be positive");
    }

    double draw(RandomEngine& rng) const override
    {
        // quantile inversion keeps the draw at one engine word
        const double u = uniform01(rng);
        auto cdf = [this](double x) { return tools::gamma_p(shape_, x); };
        const double hi = tools::expand_upper(cdf, u, std::max(shape_, 1.0));
        return tools::invert_nondecreasing(cdf, u, 0.0, hi);
    }

    double laplace(double t) const override { return std::exp(-shape_ * std::log1p(t)); }

private:
    double shape_;
};

//! logarithmic-series frailty on {1, 2, ...} with weight p in (0, 1);
//! Laplace transform log(1 - p e^{-t}) / log(1 - p)
class LogSeriesFrailty final : public FrailtySampler {
public:
    explicit LogSeriesFrailty(double p)
        : p_(p)
        , log1p_neg_p_(std::log1p(-p))
    {
        if (!(p > 0.0 && p < 1.0))
            throw std::domain_error("LogSeriesFrailty: weight must lie in (0, 1)");
    }

    double draw(RandomEngine& rng) const override
    {
        // Kemp's second-uniform inversion; constant expected cost
        const double u = uniform01(rng);
        if (u > p_)
            return 1.0;
        const double v = uniform01(rng);
        const double q = -std::expm1(v * log1p_neg_p_);
        if (u < q * q)
            return std::floor(1.0 + std::log(u) / std::log(q));
        return u > q ? 1.0 : 2.0;
    }

    double laplace(double t) const override
    {
        return std::log1p(-p_ * std::exp(-t)) / log1p_neg_p_;
    }

private:
    double p_;
    double log1p_neg_p_;
};

//! one-sided alpha-stable frailty, alpha in (0, 1); Laplace transform e^{-t^alpha}
class StableFrailty final : public FrailtySampler {
public:
    explicit StableFrailty(double alpha)
        : alpha_(alpha)
    {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::domain_error("StableFrailty: index must lie in (0, 1)");
    }

    double draw(RandomEngine& rng) const override
    {
        // Kanter's representation, evaluated in logs to avoid overflow
        const double u = uniform01(rng);
        const double e = exponential1(rng);
        const double pu = std::numbers::pi * u;
        const double log_a = std::log(std::sin((1.0 - alpha_) * pu))
            + alpha_ / (1.0 - alpha_) * std::log(std::sin(alpha_ * pu))
            - 1.0 / (1.0 - alpha_) * std::log(std::sin(pu));
        return std::exp((1.0 - alpha_) / alpha_ * (log_a - std::log(e)));
    }

    double laplace(double t) const override { return std::exp(-std::pow(t, alpha_)); }

private:
    double alpha_;
};

}
