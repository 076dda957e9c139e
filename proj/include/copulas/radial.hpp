#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "random.hpp"
#include "tools/special.hpp"

namespace copulas {

//! nonnegative radial law with no mass at zero, described by its cdf
class RadialDistribution {
public:
    virtual ~RadialDistribution() = default;

    //! P(R <= x); right-continuous, 0 for x <= 0
    virtual double cdf(double x) const = 0;

    //! least upper bound of the support, +inf when unbounded
    virtual double upper_bound() const { return std::numeric_limits<double>::infinity(); }

    //! true when the law carries a direct sampler cheaper than cdf inversion
    virtual bool has_sampler() const { return false; }

    //! direct draw; only valid when has_sampler() is true
    virtual double sample(RandomEngine&) const
    {
        throw UnsupportedError("radial law has no direct sampler");
    }

    struct Atom {
        double location;
        double weight;
    };

    //! atom list for purely discrete laws, nullptr otherwise
    virtual const std::vector<Atom>* atoms() const { return nullptr; }
};

//! law concentrated on finitely many positive atoms
class DiscreteRadial final : public RadialDistribution {
public:
    explicit DiscreteRadial(std::vector<Atom> atoms)
        : atoms_(std::move(atoms))
    {
        if (atoms_.empty())
            throw std::invalid_argument("DiscreteRadial: no atoms");
        std::sort(atoms_.begin(), atoms_.end(),
                  [](const Atom& a, const Atom& b) { return a.location < b.location; });
        double total = 0.0;
        for (const Atom& a : atoms_) {
            if (!(a.location > 0.0))
                throw std::domain_error("DiscreteRadial: atom locations must be positive");
            if (!(a.weight >= 0.0))
                throw std::domain_error("DiscreteRadial: atom weights must be nonnegative");
            total += a.weight;
        }
        if (std::abs(total - 1.0) > 1e-12)
            throw std::domain_error("DiscreteRadial: weights sum to "
                                    + std::to_string(total) + ", expected 1");
    }

    double cdf(double x) const override
    {
        double p = 0.0;
        for (const Atom& a : atoms_) {
            if (a.location > x)
                break;
            p += a.weight;
        }
        return std::min(p, 1.0);
    }

    double upper_bound() const override { return atoms_.back().location; }

    const std::vector<Atom>* atoms() const override { return &atoms_; }

private:
    std::vector<Atom> atoms_;
};

//! Erlang(k, 1) law: sum of k unit-rate exponentials
class ErlangRadial final : public RadialDistribution {
public:
    explicit ErlangRadial(int k)
        : k_(k)
    {
        if (k < 1)
            throw std::domain_error("ErlangRadial: order must be positive");
    }

    double cdf(double x) const override
    {
        return x <= 0.0 ? 0.0 : tools::gamma_p(static_cast<double>(k_), x);
    }

    bool has_sampler() const override { return true; }

    double sample(RandomEngine& rng) const override
    {
        double s = 0.0;
        for (int i = 0; i < k_; ++i)
            s += exponential1(rng);
        return s;
    }

private:
    int k_;
};

}
