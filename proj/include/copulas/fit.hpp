#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "archimedean.hpp"
#include "empirical.hpp"
#include "errors.hpp"
#include "marginals.hpp"
#include "sklar.hpp"
#include "tools/roots.hpp"

namespace copulas {

enum class FitMethod { tau_inversion, mle };

inline std::string fit_method_name(FitMethod m)
{
    return m == FitMethod::tau_inversion ? "tau_inversion" : "mle";
}

//! outcome of a copula (or two-stage joint) fit
struct FitReport {
    double theta = 0.0;
    std::vector<std::vector<double>> marginal_params;
    FitMethod method = FitMethod::tau_inversion;
    //! pseudo-data log-likelihood at theta; absent when it is not finite
    std::optional<double> loglik;
    Eigen::Index n = 0;
    double tau_hat = 0.0;
    //! true when tau_hat fell outside the attainable range and was clipped
    bool clipped = false;
};

//! one column per marginal of the joint model to fit
struct MarginalSpec {
    MarginalFamily family = MarginalFamily::normal;
    //! structural trial count, binomial only
    int trials = 0;
};

namespace detail {

inline void check_pseudo_data(const Eigen::MatrixXd& u)
{
    if (u.rows() < 2)
        throw std::invalid_argument("copula fit: need at least two observations");
    if (u.cols() < 2)
        throw std::invalid_argument("copula fit: need at least two columns");
    for (Eigen::Index i = 0; i < u.rows(); ++i)
        for (Eigen::Index j = 0; j < u.cols(); ++j)
            if (!(u(i, j) > 0.0 && u(i, j) < 1.0))
                throw std::invalid_argument(
                    "copula fit: entry at row " + std::to_string(i + 1) + ", column "
                    + std::to_string(j + 1) + " lies outside (0, 1); pass pseudo-observations");
}

//! smallest attainable tau of the family at dimension d (upper end is 1)
inline double tau_lower_bound(ArchFamily family, Eigen::Index d)
{
    switch (family) {
    case ArchFamily::clayton:
        return d == 2 ? -1.0 : -1.0 / static_cast<double>(2 * d - 3);
    case ArchFamily::frank:
        return d == 2 ? -1.0 : 0.0;
    case ArchFamily::gumbel:
        return 0.0;
    }
    throw std::invalid_argument("unknown Archimedean family tag");
}

//! theta at the clipped lower edge of the attainable range
inline double theta_at_lower_edge(ArchFamily family, Eigen::Index d)
{
    switch (family) {
    case ArchFamily::clayton:
        return -1.0 / static_cast<double>(d - 1);
    case ArchFamily::frank:
        return 1e-8;
    case ArchFamily::gumbel:
        return 1.0;
    }
    throw std::invalid_argument("unknown Archimedean family tag");
}

inline std::optional<double> finite_loglik(ArchFamily family, Eigen::Index d, double theta,
                                           const Eigen::MatrixXd& u)
{
    try {
        const ArchimedeanCopula c = archimedean_copula(family, d, theta);
        const double ll = loglikelihood(c, u);
        if (std::isfinite(ll))
            return ll;
    } catch (const std::domain_error&) {
    } catch (const NumericError&) {
    }
    return std::nullopt;
}

struct ClippedTheta {
    double theta;
    bool clipped;
};

//! invert tau for the family, clipping small excursions (at most 0.05) below
//! the attainable range to the boundary
inline ClippedTheta invert_tau_clipped(ArchFamily family, Eigen::Index d, double tau_hat)
{
    if (std::abs(tau_hat) >= 1.0)
        throw EstimationError("sample tau is " + std::to_string(tau_hat)
                              + "; the data are perfectly monotone and theta is "
                                "unbounded in every family");
    const double tau_lo = tau_lower_bound(family, d);
    if (tau_hat > tau_lo && tau_hat != 0.0)
        return {theta_from_tau(family, tau_hat), false};
    if (family == ArchFamily::frank && tau_hat == 0.0) {
        // theta = 0 is outside the Frank family; settle at the boundary
        return {theta_at_lower_edge(family, d), true};
    }
    if (tau_lo - tau_hat <= 0.05)
        return {theta_at_lower_edge(family, d), true};
    throw EstimationError("sample tau " + std::to_string(tau_hat)
                          + " is below the smallest value " + std::to_string(tau_lo)
                          + " attainable by the family at this dimension");
}

} // namespace detail

//! rank-based fit: invert the family's tau formula at the sample tau
//!
//! tau_hat is the average over all column pairs. Values just outside the
//! attainable range (excess at most 0.05) are clipped to the boundary with
//! the clipped flag set; larger excursions and |tau_hat| = 1 raise
//! EstimationError.
inline FitReport fit_copula_tau(ArchFamily family, const Eigen::MatrixXd& u)
{
    detail::check_pseudo_data(u);
    const Eigen::Index d = u.cols();
    const double tau_hat = average_pairwise_tau(u);

    FitReport report;
    report.method = FitMethod::tau_inversion;
    report.n = u.rows();
    report.tau_hat = tau_hat;

    const auto [theta, clipped] = detail::invert_tau_clipped(family, d, tau_hat);
    report.theta = theta;
    report.clipped = clipped;
    report.loglik = detail::finite_loglik(family, d, theta, u);
    return report;
}

//! maximum pseudo-likelihood fit over the family's parameter range
//!
//! The search starts from the tau-inversion estimate, brackets the optimum
//! with expanding probes, and polishes by golden-section to 1e-8 in theta.
//! The result never has lower log-likelihood than any probed point. If the
//! log-likelihood is non-finite at every probe, raises EstimationError.
inline FitReport fit_copula_mle(ArchFamily family, const Eigen::MatrixXd& u)
{
    detail::check_pseudo_data(u);
    const Eigen::Index d = u.cols();

    FitReport report;
    report.method = FitMethod::mle;
    report.n = u.rows();
    report.tau_hat = average_pairwise_tau(u);

    double theta0;
    try {
        theta0 = detail::invert_tau_clipped(family, d, report.tau_hat).theta;
    } catch (const EstimationError&) {
        // perfectly monotone or far-out-of-range tau; start from a generic point
        switch (family) {
        case ArchFamily::clayton:
            theta0 = report.tau_hat > 0.0 ? 1.0 : -0.5 / static_cast<double>(d - 1);
            break;
        case ArchFamily::frank:
            theta0 = (d == 2 && report.tau_hat < 0.0) ? -5.0 : 5.0;
            break;
        default:
            theta0 = 2.0;
            break;
        }
    }

    double lo_cap, hi_cap;
    switch (family) {
    case ArchFamily::clayton:
        lo_cap = -1.0 / static_cast<double>(d - 1);
        hi_cap = 200.0;
        break;
    case ArchFamily::frank:
        // the likelihood is not defined at theta = 0; search one sign only
        if (d == 2 && theta0 < 0.0) {
            lo_cap = -100.0;
            hi_cap = -1e-6;
        } else {
            lo_cap = 1e-6;
            hi_cap = 100.0;
        }
        break;
    default:
        lo_cap = 1.0;
        hi_cap = 100.0;
        break;
    }
    theta0 = std::clamp(theta0, lo_cap, hi_cap);

    auto objective = [&](double theta) {
        const auto ll = detail::finite_loglik(family, d, theta, u);
        return ll ? *ll : -std::numeric_limits<double>::infinity();
    };

    std::vector<double> probes{lo_cap, hi_cap, theta0};
    const double step0 = 0.25 * std::max(1.0, std::abs(theta0));
    for (double step = step0; ; step *= 2.0) {
        const double left = theta0 - step;
        const double right = theta0 + step;
        const bool left_in = left > lo_cap;
        const bool right_in = right < hi_cap;
        if (left_in)
            probes.push_back(left);
        if (right_in)
            probes.push_back(right);
        if (!left_in && !right_in)
            break;
    }
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

    std::vector<double> values(probes.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        values[i] = objective(probes[i]);
        if (values[i] > values[best])
            best = i;
    }
    if (!std::isfinite(values[best]))
        throw EstimationError("log-likelihood is non-finite at every probed theta; "
                              "the data cannot be fit by this family");

    const double left = probes[best > 0 ? best - 1 : best];
    const double right = probes[best + 1 < probes.size() ? best + 1 : best];
    double theta = probes[best];
    double ll = values[best];
    if (right > left) {
        const auto [theta_gs, ll_gs] = tools::golden_section_max(objective, left, right, 1e-8);
        if (ll_gs > ll) {
            theta = theta_gs;
            ll = ll_gs;
        }
    }

    report.theta = theta;
    report.loglik = ll;
    return report;
}

//! two-stage joint fit: per-column marginal MLE, then a rank-based copula fit
//! on the pseudo-observations of the same data
inline std::pair<SklarDist, FitReport> fit_sklar(ArchFamily family,
                                                 const std::vector<MarginalSpec>& specs,
                                                 const Eigen::MatrixXd& data,
                                                 FitMethod method = FitMethod::tau_inversion)
{
    if (data.cols() < 2)
        throw std::invalid_argument("fit_sklar: need at least two columns");
    if (static_cast<Eigen::Index>(specs.size()) != data.cols())
        throw std::invalid_argument("fit_sklar: got " + std::to_string(specs.size())
                                    + " marginal specs for " + std::to_string(data.cols())
                                    + " data columns");

    std::vector<Marginal> marginals;
    marginals.reserve(specs.size());
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
        const std::string where = "column " + std::to_string(j + 1) + ": ";
        try {
            marginals.push_back(fit_marginal(specs[j].family, data.col(j), specs[j].trials));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        } catch (const EstimationError& e) {
            throw EstimationError(where + e.what());
        } catch (const std::domain_error& e) {
            throw std::domain_error(where + e.what());
        }
    }

    const Eigen::MatrixXd pseudo = pseudo_observations(data);
    FitReport report = method == FitMethod::mle ? fit_copula_mle(family, pseudo)
                                                : fit_copula_tau(family, pseudo);
    for (const Marginal& m : marginals)
        report.marginal_params.push_back(parameters(m));

    auto copula = std::make_shared<ArchimedeanCopula>(
        archimedean_copula(family, data.cols(), report.theta));
    return {SklarDist(std::move(copula), std::move(marginals)), std::move(report)};
}

}
