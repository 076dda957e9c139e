#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "copula.hpp"
#include "errors.hpp"
#include "marginals.hpp"
#include "random.hpp"

namespace copulas {

//! joint distribution assembled from a copula and one marginal per coordinate
class SklarDist {
public:
    SklarDist(std::shared_ptr<const Copula> copula, std::vector<Marginal> marginals)
        : copula_(std::move(copula))
        , marginals_(std::move(marginals))
    {
        if (!copula_)
            throw std::invalid_argument("SklarDist: copula must not be null");
        if (static_cast<Eigen::Index>(marginals_.size()) != copula_->dim())
            throw std::invalid_argument("SklarDist: got " + std::to_string(marginals_.size())
                                        + " marginals for a copula of dimension "
                                        + std::to_string(copula_->dim()));
    }

    const Copula& copula() const { return *copula_; }
    const std::vector<Marginal>& marginals() const { return marginals_; }
    Eigen::Index dim() const { return copula_->dim(); }

    //! joint cdf C(F_1(x_1), ..., F_d(x_d)); coordinates may be infinite
    double cdf(const Eigen::VectorXd& x) const
    {
        check_size(x);
        Eigen::VectorXd u(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            u[i] = copulas::cdf(marginals_[i], x[i]);
        return copula_->cdf(u);
    }

    //! joint density c(F(x)) * prod f_i(x_i); requires continuous marginals
    //!
    //! Points a marginal maps to 0 or 1 (beyond double-precision tail
    //! resolution) evaluate to 0.
    double pdf(const Eigen::VectorXd& x) const
    {
        check_size(x);
        for (const Marginal& m : marginals_)
            if (is_discrete(m))
                throw UnsupportedError("joint density is undefined with discrete "
                                       "marginals; use cdf or sampling instead");
        Eigen::VectorXd u(x.size());
        double marginal_product = 1.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double fi = copulas::pdf(marginals_[i], x[i]);
            if (fi == 0.0)
                return 0.0;
            marginal_product *= fi;
            u[i] = copulas::cdf(marginals_[i], x[i]);
            if (u[i] <= 0.0 || u[i] >= 1.0)
                return 0.0;
        }
        return copula_->pdf(u) * marginal_product;
    }

    //! n rows sampled by pushing copula draws through the marginal quantiles
    Eigen::MatrixXd sample(RandomEngine& rng, int n) const
    {
        Eigen::MatrixXd u = copula_->sample(rng, n);
        for (Eigen::Index i = 0; i < u.rows(); ++i)
            for (Eigen::Index j = 0; j < u.cols(); ++j)
                u(i, j) = quantile(marginals_[j], u(i, j));
        return u;
    }

    //! sum of log pdf over rows; -inf when any row has zero density, with the
    //! number of such rows reported through zero_density_rows when given
    double loglikelihood(const Eigen::MatrixXd& data,
                         Eigen::Index* zero_density_rows = nullptr) const
    {
        if (zero_density_rows)
            *zero_density_rows = 0;
        if (data.rows() > 0 && data.cols() != dim())
            throw std::invalid_argument("loglikelihood: data has " + std::to_string(data.cols())
                                        + " columns, expected " + std::to_string(dim()));
        double total = 0.0;
        Eigen::Index zeros = 0;
        for (Eigen::Index i = 0; i < data.rows(); ++i) {
            const double p = pdf(data.row(i).transpose());
            if (p == 0.0) {
                ++zeros;
                total = -std::numeric_limits<double>::infinity();
            } else if (std::isfinite(total)) {
                total += std::log(p);
            }
        }
        if (zero_density_rows)
            *zero_density_rows = zeros;
        return total;
    }

private:
    void check_size(const Eigen::VectorXd& x) const
    {
        if (x.size() != dim())
            throw std::invalid_argument("point has dimension " + std::to_string(x.size())
                                        + ", expected " + std::to_string(dim()));
    }

    std::shared_ptr<const Copula> copula_;
    std::vector<Marginal> marginals_;
};

}
