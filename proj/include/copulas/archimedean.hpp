#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "copula.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "tools/quadrature.hpp"
#include "tools/roots.hpp"
#include "williamson.hpp"

namespace copulas {

//! exchangeable copula C(u) = phi(sum_i phi_inv(u_i)) driven by a generator
//!
//! Sampling picks the cheapest valid representation at construction: the
//! frailty mixture when the generator is a known Laplace transform, otherwise
//! the radial-times-simplex representation through the Williamson transform.
class ArchimedeanCopula final : public Copula {
public:
    ArchimedeanCopula(int dim, std::shared_ptr<const ArchimedeanGenerator> gen)
        : Copula(dim)
        , gen_(std::move(gen))
    {
        if (!gen_)
            throw std::invalid_argument("ArchimedeanCopula: null generator");
        frailty_ = gen_->frailty();
        if (!frailty_)
            radial_ = inverse_williamson(gen_, dim);
    }

    const ArchimedeanGenerator& generator() const { return *gen_; }

    std::shared_ptr<const ArchimedeanGenerator> generator_ptr() const { return gen_; }

protected:
    double do_cdf(const Eigen::VectorXd& u) const override
    {
        // summing in sorted order makes the result permutation-invariant bit
        // for bit, not just up to rounding
        Eigen::VectorXd t(u.size());
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            if (u[i] == 0.0)
                return 0.0;
            t[i] = gen_->phi_inv(u[i]);
        }
        std::sort(t.begin(), t.end());
        return gen_->phi(t.sum());
    }

    double do_pdf(const Eigen::VectorXd& u) const override
    {
        const int d = dim();
        Eigen::VectorXd t(d);
        for (int i = 0; i < d; ++i)
            t[i] = gen_->phi_inv(u[i]);
        std::sort(t.begin(), t.end());
        const double s = t.sum();
        if (s >= gen_->upper_support())
            return 0.0;
        double value = gen_->phi_deriv(d, s);
        for (int i = 0; i < d; ++i)
            value /= gen_->phi_deriv(1, t[i]);
        if (!std::isfinite(value))
            throw NumericError("density overflowed at an extreme point; "
                               "generator derivatives left double range");
        return std::max(value, 0.0);
    }

    void do_sample_row(RandomEngine& rng, RowRef row) const override
    {
        if (frailty_) {
            const double w = frailty_->draw(rng);
            for (Eigen::Index j = 0; j < row.size(); ++j)
                row[j] = frailty_->laplace(exponential1(rng) / w);
        } else {
            const double r
                = radial_->has_sampler() ? radial_->sample(rng) : sample_radial(*radial_, rng);
            const Eigen::VectorXd s = sample_simplex(dim(), rng);
            for (Eigen::Index j = 0; j < row.size(); ++j)
                row[j] = gen_->phi(r * s[j]);
        }
    }

private:
    std::shared_ptr<const ArchimedeanGenerator> gen_;
    std::shared_ptr<const FrailtySampler> frailty_;
    std::shared_ptr<const RadialDistribution> radial_;
};

//! n draws through the radial representation, ignoring any frailty fast path
inline Eigen::MatrixXd sample_williamson(const ArchimedeanCopula& c, RandomEngine& rng, int n)
{
    if (n < 1)
        throw std::invalid_argument("sample_williamson: need at least one draw");
    const int d = c.dim();
    const auto& gen = c.generator();
    const auto radial = inverse_williamson(c.generator_ptr(), d);
    Eigen::MatrixXd out(n, d);
    for (int i = 0; i < n; ++i) {
        const double r
            = radial->has_sampler() ? radial->sample(rng) : sample_radial(*radial, rng);
        const Eigen::VectorXd s = sample_simplex(d, rng);
        for (int j = 0; j < d; ++j)
            out(i, j) = gen.phi(r * s[j]);
    }
    return out;
}

//! n draws through the frailty representation
//!
//! Throws UnsupportedError when the generator has no frailty law (for
//! example Clayton with theta < 0); callers fall back to sample_williamson.
inline Eigen::MatrixXd sample_frailty(const ArchimedeanCopula& c, RandomEngine& rng, int n)
{
    if (n < 1)
        throw std::invalid_argument("sample_frailty: need at least one draw");
    const auto frailty = c.generator().frailty();
    if (!frailty)
        throw UnsupportedError("generator has no frailty representation for "
                               "these parameters; use the Williamson sampler");
    const int d = c.dim();
    Eigen::MatrixXd out(n, d);
    for (int i = 0; i < n; ++i) {
        const double w = frailty->draw(rng);
        for (int j = 0; j < d; ++j)
            out(i, j) = frailty->laplace(exponential1(rng) / w);
    }
    return out;
}

//! Kendall tau of the copula generated by gen, by adaptive quadrature
//!
//! Evaluates tau = 1 - 4 * int_0^inf s phi'(s)^2 ds after the substitution
//! v = phi(s), which maps the domain onto [0, 1] and removes both endpoint
//! singularities: the integrand becomes -phi_inv(v) * phi'(phi_inv(v)) and
//! vanishes at v = 0 and v = 1 for every d-monotone generator.
inline double numeric_tau(const ArchimedeanGenerator& gen)
{
    auto integrand = [&gen](double v) {
        if (v <= 0.0 || v >= 1.0)
            return 0.0;
        const double s = gen.phi_inv(v);
        if (s == 0.0 || !std::isfinite(s))
            return 0.0;
        return -s * gen.phi_deriv(1, s);
    };
    return 1.0 - 4.0 * tools::adaptive_simpson(integrand, 0.0, 1.0, 1e-11);
}

//! Kendall tau of an Archimedean copula: closed form when the family has
//! one, numeric quadrature otherwise
inline double tau(const ArchimedeanCopula& c)
{
    if (auto closed = c.generator().tau_closed_form())
        return *closed;
    return numeric_tau(c.generator());
}

enum class ArchFamily { clayton, frank, gumbel };

inline std::string family_name(ArchFamily family)
{
    switch (family) {
    case ArchFamily::clayton:
        return "clayton";
    case ArchFamily::frank:
        return "frank";
    case ArchFamily::gumbel:
        return "gumbel";
    }
    throw std::invalid_argument("family_name: unknown family tag");
}

//! parameter producing a given Kendall tau
//!
//! Clayton and Gumbel invert their closed forms; Frank solves
//! tau(theta) = tau by bisection to |delta tau| <= 1e-12. Unattainable
//! targets raise std::domain_error. tau = 0 returns 0 for Clayton and
//! Frank (their independence limit) and 1 for Gumbel.
inline double theta_from_tau(ArchFamily family, double tau)
{
    if (!(tau > -1.0 && tau < 1.0)) {
        throw std::domain_error("tau = " + std::to_string(tau)
                                + " is outside the attainable open interval (-1, 1)");
    }
    switch (family) {
    case ArchFamily::clayton:
        return 2.0 * tau / (1.0 - tau);
    case ArchFamily::gumbel:
        if (tau < 0.0)
            throw std::domain_error("Gumbel attains only tau in [0, 1); got tau = "
                                    + std::to_string(tau));
        return 1.0 / (1.0 - tau);
    case ArchFamily::frank: {
        if (tau == 0.0)
            return 0.0;
        const double target = std::abs(tau);
        auto tau_of = [](double theta) { return *FrankGenerator(theta).tau_closed_form(); };
        double hi = 1.0;
        while (tau_of(hi) < target)
            hi *= 2.0;
        double lo = hi > 1.0 ? hi / 2.0 : 1e-10;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double t = tau_of(mid);
            if (std::abs(t - target) <= 1e-12)
                return tau < 0.0 ? -mid : mid;
            if (t < target)
                lo = mid;
            else
                hi = mid;
        }
        return tau < 0.0 ? -0.5 * (lo + hi) : 0.5 * (lo + hi);
    }
    }
    throw std::invalid_argument("theta_from_tau: unknown family tag");
}

//! Clayton copula, theta in [-1/(d-1), inf); theta = 0 degenerates to
//! independence through the exponential generator
inline ArchimedeanCopula clayton_copula(int dim, double theta)
{
    if (dim < 2)
        throw std::invalid_argument("clayton_copula: dimension must be at least 2");
    const double lower = -1.0 / (dim - 1.0);
    if (!(theta >= lower))
        throw std::domain_error("Clayton theta = " + std::to_string(theta)
                                + " outside [" + std::to_string(lower)
                                + ", inf) for dimension " + std::to_string(dim));
    if (theta == 0.0)
        return ArchimedeanCopula(dim, std::make_shared<ExponentialGenerator>());
    return ArchimedeanCopula(dim, std::make_shared<ClaytonGenerator>(theta));
}

//! Frank copula; any theta != 0 for d = 2, theta > 0 for d >= 3
inline ArchimedeanCopula frank_copula(int dim, double theta)
{
    if (dim < 2)
        throw std::invalid_argument("frank_copula: dimension must be at least 2");
    if (theta == 0.0)
        throw std::domain_error("Frank theta = 0 is outside the family; "
                                "use an independence copula");
    if (dim > 2 && theta < 0.0)
        throw std::domain_error("Frank theta = " + std::to_string(theta)
                                + " outside (0, inf) for dimension " + std::to_string(dim)
                                + "; negative theta is bivariate only");
    return ArchimedeanCopula(dim, std::make_shared<FrankGenerator>(theta));
}

//! Gumbel copula, theta in [1, inf); theta = 1 is independence
inline ArchimedeanCopula gumbel_copula(int dim, double theta)
{
    if (dim < 2)
        throw std::invalid_argument("gumbel_copula: dimension must be at least 2");
    if (!(theta >= 1.0))
        throw std::domain_error("Gumbel theta = " + std::to_string(theta)
                                + " outside [1, inf)");
    return ArchimedeanCopula(dim, std::make_shared<GumbelGenerator>(theta));
}

inline ArchimedeanCopula archimedean_copula(ArchFamily family, int dim, double theta)
{
    switch (family) {
    case ArchFamily::clayton:
        return clayton_copula(dim, theta);
    case ArchFamily::frank:
        return frank_copula(dim, theta);
    case ArchFamily::gumbel:
        return gumbel_copula(dim, theta);
    }
    throw std::invalid_argument("archimedean_copula: unknown family tag");
}

}
