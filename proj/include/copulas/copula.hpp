#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "errors.hpp"
#include "random.hpp"

namespace copulas {

//! writable view of one sample row; the stride makes matrix rows bindable
using RowRef = Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;

//! abstract d-variate copula
//!
//! Points live in [0, 1]^d; samples are n x d matrices with one draw per row.
//! Arguments are validated strictly, never clamped: a coordinate outside the
//! cube is an error, not a value to be repaired.
class Copula {
public:
    virtual ~Copula() = default;

    int dim() const { return dim_; }

    //! joint cdf at one point of [0, 1]^d
    double cdf(const Eigen::VectorXd& u) const
    {
        check_point(u, false);
        return do_cdf(u);
    }

    //! density at one point strictly inside (0, 1)^d
    //!
    //! Throws UnsupportedError for singular copulas, which have no density.
    double pdf(const Eigen::VectorXd& u) const
    {
        check_point(u, true);
        return do_pdf(u);
    }

    //! n independent draws, one per row
    Eigen::MatrixXd sample(RandomEngine& rng, int n) const
    {
        if (n < 1)
            throw std::invalid_argument("sample: need at least one draw");
        Eigen::MatrixXd out(n, dim_);
        for (int i = 0; i < n; ++i)
            do_sample_row(rng, out.row(i));
        return out;
    }

protected:
    explicit Copula(int dim)
        : dim_(dim)
    {
        if (dim < 2)
            throw std::invalid_argument("copula dimension must be at least 2");
    }

    virtual double do_cdf(const Eigen::VectorXd& u) const = 0;
    virtual double do_pdf(const Eigen::VectorXd& u) const = 0;
    virtual void do_sample_row(RandomEngine& rng, RowRef row) const = 0;

    void check_point(const Eigen::VectorXd& u, bool interior) const
    {
        if (u.size() != dim_)
            throw std::invalid_argument("point has " + std::to_string(u.size())
                                        + " coordinates, copula has dimension "
                                        + std::to_string(dim_));
        for (Eigen::Index i = 0; i < u.size(); ++i) {
            const double ui = u[i];
            const bool ok = interior ? (ui > 0.0 && ui < 1.0) : (ui >= 0.0 && ui <= 1.0);
            if (!ok)
                throw std::invalid_argument("coordinate " + std::to_string(i + 1) + " = "
                                            + std::to_string(ui) + " outside "
                                            + (interior ? "(0, 1)" : "[0, 1]"));
        }
    }

private:
    int dim_;
};

//! independence copula, C(u) = prod u_i
class IndependenceCopula final : public Copula {
public:
    explicit IndependenceCopula(int dim)
        : Copula(dim)
    {
    }

protected:
    double do_cdf(const Eigen::VectorXd& u) const override { return u.prod(); }

    double do_pdf(const Eigen::VectorXd&) const override { return 1.0; }

    void do_sample_row(RandomEngine& rng, RowRef row) const override
    {
        for (Eigen::Index j = 0; j < row.size(); ++j)
            row[j] = uniform01(rng);
    }
};

//! upper Frechet-Hoeffding bound M(u) = min u_i; all mass on the diagonal
class ComonotoneCopula final : public Copula {
public:
    explicit ComonotoneCopula(int dim)
        : Copula(dim)
    {
    }

protected:
    double do_cdf(const Eigen::VectorXd& u) const override { return u.minCoeff(); }

    double do_pdf(const Eigen::VectorXd&) const override
    {
        throw UnsupportedError("comonotone copula is singular and has no density");
    }

    void do_sample_row(RandomEngine& rng, RowRef row) const override
    {
        row.setConstant(uniform01(rng));
    }
};

//! lower Frechet-Hoeffding bound W(u) = max(u1 + u2 - 1, 0); a copula only for d = 2
class CountermonotoneCopula final : public Copula {
public:
    CountermonotoneCopula()
        : Copula(2)
    {
    }

protected:
    double do_cdf(const Eigen::VectorXd& u) const override
    {
        return std::max(u[0] + u[1] - 1.0, 0.0);
    }

    double do_pdf(const Eigen::VectorXd&) const override
    {
        throw UnsupportedError("countermonotone copula is singular and has no density");
    }

    void do_sample_row(RandomEngine& rng, RowRef row) const override
    {
        const double u = uniform01(rng);
        row[0] = u;
        row[1] = 1.0 - u;
    }
};

//! cdf of c evaluated at every row of pts
inline Eigen::VectorXd cdf(const Copula& c, const Eigen::MatrixXd& pts)
{
    Eigen::VectorXd out(pts.rows());
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
        out[i] = c.cdf(pts.row(i).transpose());
    return out;
}

//! density of c evaluated at every row of pts
inline Eigen::VectorXd pdf(const Copula& c, const Eigen::MatrixXd& pts)
{
    Eigen::VectorXd out(pts.rows());
    for (Eigen::Index i = 0; i < pts.rows(); ++i)
        out[i] = c.pdf(pts.row(i).transpose());
    return out;
}

//! n draws from c as an n x d matrix
inline Eigen::MatrixXd sample(const Copula& c, RandomEngine& rng, int n)
{
    return c.sample(rng, n);
}

//! sum of log densities over the rows of data; an empty sample gives 0
inline double loglikelihood(const Copula& c, const Eigen::MatrixXd& data)
{
    if (data.rows() > 0 && data.cols() != c.dim())
        throw std::invalid_argument("data has " + std::to_string(data.cols())
                                    + " columns, copula has dimension "
                                    + std::to_string(c.dim()));
    double ll = 0.0;
    for (Eigen::Index i = 0; i < data.rows(); ++i)
        ll += std::log(c.pdf(data.row(i).transpose()));
    return ll;
}

}
