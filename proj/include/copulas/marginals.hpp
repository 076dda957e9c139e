#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "random.hpp"
#include "tools/roots.hpp"
#include "tools/special.hpp"

namespace copulas {

//! Normal(mu, sigma), sigma > 0
class Normal {
public:
    Normal(double mu, double sigma)
        : mu_(mu)
        , sigma_(sigma)
    {
        if (!(sigma > 0.0))
            throw std::domain_error("Normal: sigma must be positive");
    }

    double mu() const { return mu_; }
    double sigma() const { return sigma_; }

    double pdf(double x) const
    {
        const double z = (x - mu_) / sigma_;
        return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * std::numbers::pi));
    }

    double cdf(double x) const { return tools::normal_cdf((x - mu_) / sigma_); }

    double quantile(double u) const { return mu_ + sigma_ * tools::normal_quantile(u); }

    static constexpr bool discrete = false;

private:
    double mu_;
    double sigma_;
};

//! Gamma(shape, scale), both positive; support x > 0
class Gamma {
public:
    Gamma(double shape, double scale)
        : shape_(shape)
        , scale_(scale)
    {
        if (!(shape > 0.0))
            throw std::domain_error("Gamma: shape must be positive");
        if (!(scale > 0.0))
            throw std::domain_error("Gamma: scale must be positive");
    }

    double shape() const { return shape_; }
    double scale() const { return scale_; }

    double pdf(double x) const
    {
        if (x <= 0.0)
            return 0.0;
        return std::exp((shape_ - 1.0) * std::log(x) - x / scale_ - std::lgamma(shape_)
                        - shape_ * std::log(scale_));
    }

    double cdf(double x) const
    {
        if (x <= 0.0)
            return 0.0;
        if (std::isinf(x))
            return 1.0;
        return tools::gamma_p(shape_, x / scale_);
    }

    double quantile(double u) const
    {
        if (u == 0.0)
            return 0.0;
        if (u == 1.0)
            return std::numeric_limits<double>::infinity();
        auto f = [this](double x) { return cdf(x); };
        const double hi = tools::expand_upper(f, u, shape_ * scale_);
        return tools::invert_nondecreasing(f, u, 0.0, hi);
    }

    static constexpr bool discrete = false;

private:
    double shape_;
    double scale_;
};

//! Pareto(shape) with scale fixed at 1; support x >= 1
class Pareto {
public:
    explicit Pareto(double shape)
        : shape_(shape)
    {
        if (!(shape > 0.0))
            throw std::domain_error("Pareto: shape must be positive");
    }

    double shape() const { return shape_; }

    double pdf(double x) const
    {
        if (x < 1.0)
            return 0.0;
        return shape_ * std::exp(-(shape_ + 1.0) * std::log(x));
    }

    double cdf(double x) const
    {
        if (x < 1.0)
            return 0.0;
        return -std::expm1(-shape_ * std::log(x));
    }

    double quantile(double u) const
    {
        return std::exp(-std::log1p(-u) / shape_);
    }

    static constexpr bool discrete = false;

private:
    double shape_;
};

//! Binomial(trials, p) on {0, ..., trials}
class Binomial {
public:
    Binomial(int trials, double p)
        : trials_(trials)
        , p_(p)
    {
        if (trials < 1)
            throw std::domain_error("Binomial: trials must be at least 1");
        if (!(p >= 0.0 && p <= 1.0))
            throw std::domain_error("Binomial: p must lie in [0, 1]");
    }

    int trials() const { return trials_; }
    double p() const { return p_; }

    //! probability mass; 0 off the integer support
    double pdf(double x) const
    {
        if (x < 0.0 || x > trials_ || std::floor(x) != x)
            return 0.0;
        const int k = static_cast<int>(x);
        if (p_ == 0.0)
            return k == 0 ? 1.0 : 0.0;
        if (p_ == 1.0)
            return k == trials_ ? 1.0 : 0.0;
        return std::exp(tools::log_binomial(trials_, k) + k * std::log(p_)
                        + (trials_ - k) * std::log1p(-p_));
    }

    double cdf(double x) const
    {
        if (x < 0.0)
            return 0.0;
        if (x >= trials_)
            return 1.0;
        const int k = static_cast<int>(std::floor(x));
        double sum = 0.0;
        for (int i = 0; i <= k; ++i)
            sum += pdf(i);
        return std::min(sum, 1.0);
    }

    //! smallest support point k with cdf(k) >= u
    double quantile(double u) const
    {
        if (u == 1.0)
            return trials_;
        double cum = 0.0;
        for (int k = 0; k < trials_; ++k) {
            cum += pdf(k);
            if (cum >= u)
                return k;
        }
        return trials_;
    }

    static constexpr bool discrete = true;

private:
    int trials_;
    double p_;
};

//! Exponential with the given scale (mean); support x >= 0
class Exponential {
public:
    explicit Exponential(double scale)
        : scale_(scale)
    {
        if (!(scale > 0.0))
            throw std::domain_error("Exponential: scale must be positive");
    }

    double scale() const { return scale_; }

    double pdf(double x) const { return x < 0.0 ? 0.0 : std::exp(-x / scale_) / scale_; }

    double cdf(double x) const { return x <= 0.0 ? 0.0 : -std::expm1(-x / scale_); }

    double quantile(double u) const { return -scale_ * std::log1p(-u); }

    static constexpr bool discrete = false;

private:
    double scale_;
};

//! Uniform(a, b), a < b
class Uniform {
public:
    Uniform(double a, double b)
        : a_(a)
        , b_(b)
    {
        if (!(a < b))
            throw std::domain_error("Uniform: interval endpoints must satisfy a < b");
    }

    double a() const { return a_; }
    double b() const { return b_; }

    double pdf(double x) const { return x < a_ || x > b_ ? 0.0 : 1.0 / (b_ - a_); }

    double cdf(double x) const
    {
        if (x <= a_)
            return 0.0;
        if (x >= b_)
            return 1.0;
        return (x - a_) / (b_ - a_);
    }

    double quantile(double u) const { return a_ + u * (b_ - a_); }

    static constexpr bool discrete = false;

private:
    double a_;
    double b_;
};

using Marginal = std::variant<Normal, Gamma, Pareto, Binomial, Exponential, Uniform>;

//! enumerator order mirrors the variant alternatives
enum class MarginalFamily { normal, gamma, pareto, binomial, exponential, uniform };

//! density (or mass) at x; 0 outside the support
inline double pdf(const Marginal& m, double x)
{
    return std::visit([x](const auto& f) { return f.pdf(x); }, m);
}

inline double cdf(const Marginal& m, double x)
{
    return std::visit([x](const auto& f) { return f.cdf(x); }, m);
}

//! generalized inverse inf{x : F(x) >= u} for u in [0, 1]
inline double quantile(const Marginal& m, double u)
{
    if (!(u >= 0.0 && u <= 1.0))
        throw std::invalid_argument("quantile: probability outside [0, 1]");
    return std::visit([u](const auto& f) { return f.quantile(u); }, m);
}

inline bool is_discrete(const Marginal& m)
{
    return std::visit([](const auto& f) { return f.discrete; }, m);
}

inline MarginalFamily family_of(const Marginal& m)
{
    return static_cast<MarginalFamily>(m.index());
}

inline std::string marginal_family_name(MarginalFamily f)
{
    switch (f) {
    case MarginalFamily::normal:
        return "normal";
    case MarginalFamily::gamma:
        return "gamma";
    case MarginalFamily::pareto:
        return "pareto";
    case MarginalFamily::binomial:
        return "binomial";
    case MarginalFamily::exponential:
        return "exponential";
    case MarginalFamily::uniform:
        return "uniform";
    }
    throw std::invalid_argument("marginal_family_name: unknown family tag");
}

//! parameters in canonical order: normal (mu, sigma); gamma (shape, scale);
//! pareto (shape); binomial (trials, p); exponential (scale); uniform (a, b)
inline std::vector<double> parameters(const Marginal& m)
{
    struct Visitor {
        std::vector<double> operator()(const Normal& f) const { return {f.mu(), f.sigma()}; }
        std::vector<double> operator()(const Gamma& f) const { return {f.shape(), f.scale()}; }
        std::vector<double> operator()(const Pareto& f) const { return {f.shape()}; }
        std::vector<double> operator()(const Binomial& f) const
        {
            return {static_cast<double>(f.trials()), f.p()};
        }
        std::vector<double> operator()(const Exponential& f) const { return {f.scale()}; }
        std::vector<double> operator()(const Uniform& f) const { return {f.a(), f.b()}; }
    };
    return std::visit(Visitor{}, m);
}

//! n inverse-transform draws; every family samples through its quantile
inline Eigen::VectorXd sample(const Marginal& m, RandomEngine& rng, int n)
{
    if (n < 1)
        throw std::invalid_argument("sample: need at least one draw");
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i)
        out[i] = quantile(m, uniform01(rng));
    return out;
}

namespace detail {

inline void check_support(bool ok, Eigen::Index i, const std::string& what)
{
    if (!ok)
        throw std::invalid_argument("observation " + std::to_string(i + 1) + " is " + what);
}

} // namespace detail

//! maximum-likelihood fit of one family to data
//!
//! binomial_trials is the structural trial count for the binomial family and
//! ignored otherwise. Support violations name the offending observation
//! (1-based). Degenerate samples (zero variance where a spread parameter is
//! needed) raise EstimationError.
inline Marginal fit_marginal(MarginalFamily family, const Eigen::VectorXd& x,
                             int binomial_trials = 0)
{
    const Eigen::Index n = x.size();
    if (n < 2)
        throw std::invalid_argument("fit_marginal: need at least two observations");
    const double mean = x.mean();
    switch (family) {
    case MarginalFamily::normal: {
        const double var = (x.array() - mean).square().sum() / static_cast<double>(n);
        if (!(var > 0.0))
            throw EstimationError("normal fit: sample variance is zero");
        return Normal(mean, std::sqrt(var));
    }
    case MarginalFamily::gamma: {
        double mean_log = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            detail::check_support(x[i] > 0.0, i, "outside the gamma support (0, inf)");
            mean_log += std::log(x[i]);
        }
        mean_log /= static_cast<double>(n);
        const double c = std::log(mean) - mean_log;
        // Newton on log(a) - digamma(a) = c from Minka's starting point
        double a = (3.0 - c + std::sqrt((c - 3.0) * (c - 3.0) + 24.0 * c)) / (12.0 * c);
        bool converged = false;
        for (int it = 0; it < 100 && !converged; ++it) {
            if (!(a > 0.0) || !std::isfinite(a))
                break;
            const double f = std::log(a) - tools::digamma(a) - c;
            const double fp = 1.0 / a - tools::trigamma(a);
            const double step = f / fp;
            a -= step;
            converged = std::abs(step) <= 1e-10 * std::max(1.0, std::abs(a));
        }
        if (!converged || !(a > 0.0))
            throw EstimationError("gamma fit: shape iteration did not converge "
                                  "within 100 steps");
        return Gamma(a, mean / a);
    }
    case MarginalFamily::pareto: {
        double sum_log = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            detail::check_support(x[i] >= 1.0, i, "outside the Pareto support [1, inf)");
            sum_log += std::log(x[i]);
        }
        if (!(sum_log > 0.0))
            throw EstimationError("pareto fit: all observations equal the support "
                                  "minimum; shape is unbounded");
        return Pareto(static_cast<double>(n) / sum_log);
    }
    case MarginalFamily::binomial: {
        if (binomial_trials < 1)
            throw std::invalid_argument("binomial fit: a positive structural trial "
                                        "count is required");
        for (Eigen::Index i = 0; i < n; ++i)
            detail::check_support(x[i] >= 0.0 && x[i] <= binomial_trials
                                      && std::floor(x[i]) == x[i],
                                  i, "outside the binomial support {0..trials}");
        return Binomial(binomial_trials, mean / binomial_trials);
    }
    case MarginalFamily::exponential: {
        for (Eigen::Index i = 0; i < n; ++i)
            detail::check_support(x[i] >= 0.0, i, "outside the exponential support [0, inf)");
        if (!(mean > 0.0))
            throw EstimationError("exponential fit: sample mean is zero");
        return Exponential(mean);
    }
    case MarginalFamily::uniform: {
        const double a = x.minCoeff();
        const double b = x.maxCoeff();
        if (!(a < b))
            throw EstimationError("uniform fit: all observations are equal");
        return Uniform(a, b);
    }
    }
    throw std::invalid_argument("fit_marginal: unknown family tag");
}

}
