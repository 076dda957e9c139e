#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "frailty.hpp"
#include "radial.hpp"
#include "tools/roots.hpp"

namespace copulas {

//! Archimedean generator phi: [0, inf) -> [0, 1], decreasing and convex,
//! with phi(0) = 1 and phi(t) -> 0
//!
//! Only phi itself is mandatory. The inverse falls back to bisection and
//! derivatives to central finite differences, so a generator defined by a
//! single formula is usable everywhere, just slower and less accurate than
//! one overriding the closed forms.
class ArchimedeanGenerator {
public:
    virtual ~ArchimedeanGenerator() = default;

    //! generator value at t >= 0
    virtual double phi(double t) const = 0;

    //! inverse of phi on [0, 1]; phi_inv(0) is the upper end of the support
    virtual double phi_inv(double u) const
    {
        check_unit(u);
        if (u == 1.0)
            return 0.0;
        if (u == 0.0)
            return upper_support();
        auto neg_phi = [this](double t) { return -phi(t); };
        const double hi = tools::expand_upper(neg_phi, -u, 1.0);
        return tools::invert_nondecreasing(neg_phi, -u, 0.0, hi, 1e-13);
    }

    //! k-th derivative of phi at t; k = 0 gives phi itself
    //!
    //! The fallback is a central finite-difference stencil, slid right when
    //! it would cross t = 0. Orders above 10 are refused (UnsupportedError)
    //! because the stencil loses all significant digits.
    virtual double phi_deriv(int k, double t) const
    {
        if (k < 0)
            throw std::invalid_argument("phi_deriv: negative order");
        if (k == 0)
            return phi(t);
        if (k > 10)
            throw UnsupportedError("phi_deriv: finite-difference fallback unreliable "
                                   "beyond order 10; override with a closed form");
        check_nonnegative(t);
        constexpr double eps = std::numeric_limits<double>::epsilon();
        const double h = std::max(t, 1.0) * std::pow(eps, 1.0 / (k + 2));
        const double center = std::max(t, 0.5 * k * h);
        double sum = 0.0;
        double coeff = 1.0; // binomial C(k, i), exact for k <= 10
        for (int i = 0; i <= k; ++i) {
            const double node = center + (0.5 * k - i) * h;
            sum += (i % 2 == 0 ? coeff : -coeff) * phi(node);
            coeff = coeff * (k - i) / (i + 1.0);
        }
        return sum / std::pow(h, k);
    }

    //! end of the support: smallest t with phi(t) = 0, +inf when phi > 0 everywhere
    virtual double upper_support() const { return std::numeric_limits<double>::infinity(); }

    //! closed-form bivariate Kendall tau when the family has one
    virtual std::optional<double> tau_closed_form() const { return std::nullopt; }

    //! frailty sampler when phi is a known Laplace transform, else nullptr
    virtual std::unique_ptr<FrailtySampler> frailty() const { return nullptr; }

    //! exact d-variate radial law when known in closed form, else nullptr
    virtual std::unique_ptr<RadialDistribution> radial(int) const { return nullptr; }

protected:
    static void check_nonnegative(double t)
    {
        if (!(t >= 0.0))
            throw std::invalid_argument("generator argument must be nonnegative");
    }

    static void check_unit(double u)
    {
        if (!(u >= 0.0 && u <= 1.0))
            throw std::invalid_argument("generator inverse argument must lie in [0, 1]");
    }
};

//! phi(t) = e^{-t}, the independence generator
class ExponentialGenerator final : public ArchimedeanGenerator {
public:
    double phi(double t) const override
    {
        check_nonnegative(t);
        return std::exp(-t);
    }

    double phi_inv(double u) const override
    {
        check_unit(u);
        return -std::log(u);
    }

    double phi_deriv(int k, double t) const override
    {
        if (k < 0)
            throw std::invalid_argument("phi_deriv: negative order");
        check_nonnegative(t);
        return (k % 2 == 0 ? 1.0 : -1.0) * std::exp(-t);
    }

    std::optional<double> tau_closed_form() const override { return 0.0; }

    std::unique_ptr<RadialDistribution> radial(int d) const override
    {
        return std::make_unique<ErlangRadial>(d);
    }
};

//! phi(t) = (1 + theta t)_+^{-1/theta} for theta in [-1, inf) \ {0}
//!
//! Negative theta gives a non-strict generator with support [0, -1/theta].
class ClaytonGenerator final : public ArchimedeanGenerator {
public:
    explicit ClaytonGenerator(double theta)
        : theta_(theta)
    {
        if (theta == 0.0)
            throw std::domain_error("ClaytonGenerator: theta = 0 is the independence "
                                    "limit; use ExponentialGenerator");
        if (theta < -1.0)
            throw std::domain_error("ClaytonGenerator: theta below -1 is not convex");
    }

    double theta() const { return theta_; }

    double phi(double t) const override
    {
        check_nonnegative(t);
        const double base = 1.0 + theta_ * t;
        if (base <= 0.0)
            return 0.0;
        return std::exp(-std::log1p(theta_ * t) / theta_);
    }

    double phi_inv(double u) const override
    {
        check_unit(u);
        if (u == 0.0)
            return upper_support();
        // expm1 form stays accurate through theta -> 0
        return std::expm1(-theta_ * std::log(u)) / theta_;
    }

    double phi_deriv(int k, double t) const override
    {
        if (k < 0)
            throw std::invalid_argument("phi_deriv: negative order");
        check_nonnegative(t);
        const double base = 1.0 + theta_ * t;
        if (base <= 0.0)
            return 0.0;
        double coeff = 1.0; // prod_{j<k} (1 + j theta)
        for (int j = 0; j < k; ++j)
            coeff *= 1.0 + j * theta_;
        const double power = std::exp(-(1.0 / theta_ + k) * std::log1p(theta_ * t));
        return (k % 2 == 0 ? coeff : -coeff) * power;
    }

    double upper_support() const override
    {
        return theta_ < 0.0 ? -1.0 / theta_ : std::numeric_limits<double>::infinity();
    }

    std::optional<double> tau_closed_form() const override { return theta_ / (theta_ + 2.0); }

    std::unique_ptr<FrailtySampler> frailty() const override
    {
        // phi rescaled to the Laplace transform (1 + t)^{-1/theta} of a
        // Gamma(1/theta, 1) frailty; generator scaling leaves the copula unchanged
        if (theta_ > 0.0)
            return std::make_unique<GammaFrailty>(1.0 / theta_);
        return nullptr;
    }

private:
    double theta_;
};

//! phi(t) = -log(1 - (1 - e^{-theta}) e^{-t}) / theta for theta != 0
class FrankGenerator final : public ArchimedeanGenerator {
public:
    explicit FrankGenerator(double theta)
        : theta_(theta)
        , a_(-std::expm1(-theta))
    {
        if (theta == 0.0)
            throw std::domain_error("FrankGenerator: theta = 0 is the independence "
                                    "limit; use ExponentialGenerator");
    }

    double theta() const { return theta_; }

    double phi(double t) const override
    {
        check_nonnegative(t);
        const double y = a_ * std::exp(-t);
        if (y > 0.5) {
            // 1 - y computed without cancellation as e^{-theta} + a(1 - e^{-t})
            const double one_minus_y = std::exp(-theta_) - a_ * std::expm1(-t);
            return -std::log(one_minus_y) / theta_;
        }
        return -std::log1p(-y) / theta_;
    }

    double phi_inv(double u) const override
    {
        check_unit(u);
        if (u == 0.0)
            return std::numeric_limits<double>::infinity();
        return -std::log(std::expm1(-theta_ * u) / std::expm1(-theta_));
    }

    double phi_deriv(int k, double t) const override
    {
        if (k < 0)
            throw std::invalid_argument("phi_deriv: negative order");
        if (k == 0)
            return phi(t);
        check_nonnegative(t);
        // phi^(k)(t) = (-1)^k Li_{1-k}(y) / theta with y = a e^{-t};
        // negative-integer-order polylogarithms are rational in y
        const double y = a_ * std::exp(-t);
        const double one_minus_y = std::exp(-theta_) - a_ * std::expm1(-t);
        double li;
        if (k == 1) {
            li = y / one_minus_y;
        } else {
            const std::vector<double> eul = eulerian_row(k - 1);
            double num = 0.0;
            double ypow = std::pow(y, static_cast<double>(k - 1));
            for (int j = 0; j < k - 1; ++j) {
                num += eul[j] * ypow;
                ypow /= y;
            }
            li = num / std::pow(one_minus_y, static_cast<double>(k));
        }
        return (k % 2 == 0 ? li : -li) / theta_;
    }

    std::optional<double> tau_closed_form() const override
    {
        return 1.0 - 4.0 / theta_ * (1.0 - tools::debye1(theta_));
    }

    std::unique_ptr<FrailtySampler> frailty() const override
    {
        // for theta > 0, phi is the Laplace transform of a logarithmic-series
        // law with weight 1 - e^{-theta}
        if (theta_ > 0.0)
            return std::make_unique<LogSeriesFrailty>(a_);
        return nullptr;
    }

private:
    //! Eulerian numbers A(n, 0..n-1), n >= 1
    static std::vector<double> eulerian_row(int n)
    {
        std::vector<double> row{1.0};
        for (int m = 2; m <= n; ++m) {
            std::vector<double> next(m, 0.0);
            for (int j = 0; j < m; ++j) {
                const double left = j < m - 1 ? row[j] : 0.0;
                const double diag = j > 0 ? row[j - 1] : 0.0;
                next[j] = (j + 1.0) * left + (m - j) * diag;
            }
            row = std::move(next);
        }
        return row;
    }

    double theta_;
    double a_;
};

//! phi(t) = exp(-t^{1/theta}) for theta >= 1
class GumbelGenerator final : public ArchimedeanGenerator {
public:
    explicit GumbelGenerator(double theta)
        : theta_(theta)
        , alpha_(1.0 / theta)
    {
        if (!(theta >= 1.0))
            throw std::domain_error("GumbelGenerator: theta must be at least 1");
    }

    double theta() const { return theta_; }

    double phi(double t) const override
    {
        check_nonnegative(t);
        return std::exp(-std::pow(t, alpha_));
    }

    double phi_inv(double u) const override
    {
        check_unit(u);
        if (u == 0.0)
            return std::numeric_limits<double>::infinity();
        return std::pow(-std::log(u), theta_);
    }

    double phi_deriv(int k, double t) const override
    {
        if (k < 0)
            throw std::invalid_argument("phi_deriv: negative order");
        if (k == 0)
            return phi(t);
        check_nonnegative(t);
        if (alpha_ == 1.0)
            return (k % 2 == 0 ? 1.0 : -1.0) * std::exp(-t);
        if (t == 0.0) {
            // phi has a vertical tangent at the origin for theta > 1
            const double inf = std::numeric_limits<double>::infinity();
            return k % 2 == 0 ? inf : -inf;
        }
        // phi^(k)(t) = e^{-x} t^{-k} R_k(x) with x = t^alpha, where the
        // polynomials satisfy R_{k+1} = alpha x R_k' - (alpha x + k) R_k
        const double x = std::pow(t, alpha_);
        std::vector<double> c{1.0};
        for (int m = 0; m < k; ++m) {
            std::vector<double> next(c.size() + 1, 0.0);
            for (std::size_t j = 0; j < c.size(); ++j) {
                next[j] += (alpha_ * static_cast<double>(j) - m) * c[j];
                next[j + 1] -= alpha_ * c[j];
            }
            c = std::move(next);
        }
        double r = 0.0;
        for (std::size_t j = c.size(); j-- > 0;)
            r = r * x + c[j];
        return std::exp(-x) * std::pow(t, -static_cast<double>(k)) * r;
    }

    std::optional<double> tau_closed_form() const override { return 1.0 - 1.0 / theta_; }

    std::unique_ptr<FrailtySampler> frailty() const override
    {
        // phi is the Laplace transform of a one-sided alpha-stable law
        if (theta_ > 1.0)
            return std::make_unique<StableFrailty>(alpha_);
        return nullptr;
    }

private:
    double theta_;
    double alpha_;
};

}
