#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace copulas {

//! column-wise rescaled ranks, rank / (n + 1), with ties given average ranks
//!
//! The result lies strictly inside (0, 1)^d and is invariant under strictly
//! increasing transforms of each column.
inline Eigen::MatrixXd pseudo_observations(const Eigen::MatrixXd& data)
{
    const Eigen::Index n = data.rows();
    if (n < 1)
        throw std::invalid_argument("pseudo_observations: empty sample");
    Eigen::MatrixXd out(n, data.cols());
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::sort(order.begin(), order.end(),
                  [&](Eigen::Index a, Eigen::Index b) { return data(a, j) < data(b, j); });
        Eigen::Index i = 0;
        while (i < n) {
            Eigen::Index k = i;
            while (k + 1 < n && data(order[k + 1], j) == data(order[i], j))
                ++k;
            // ranks are 1-based; a tie block shares its average rank
            const double avg_rank = 0.5 * static_cast<double>(i + k) + 1.0;
            for (Eigen::Index t = i; t <= k; ++t)
                out(order[t], j) = avg_rank / static_cast<double>(n + 1);
            i = k + 1;
        }
    }
    return out;
}

namespace detail {

//! stable merge sort of v counting strict inversions
inline long long merge_count(std::vector<double>& v, std::vector<double>& buf,
                             std::size_t lo, std::size_t hi)
{
    if (hi - lo < 2)
        return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    long long swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            swaps += static_cast<long long>(mid - i);
            buf[k++] = v[j++];
        } else {
            buf[k++] = v[i++];
        }
    }
    while (i < mid)
        buf[k++] = v[i++];
    while (j < hi)
        buf[k++] = v[j++];
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
              buf.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return swaps;
}

} // namespace detail

//! sample Kendall tau of two paired vectors
//!
//! Counts over all C(n, 2) pairs; ties in either coordinate count as neither
//! concordant nor discordant but stay in the denominator. Sorting by x and
//! counting inversions of the y sequence replaces the quadratic pair scan:
//! concordant - discordant = total - tied_x - tied_y + tied_both - 2 swaps.
inline double kendall_tau(const Eigen::VectorXd& x, const Eigen::VectorXd& y)
{
    const Eigen::Index n = x.size();
    if (y.size() != n)
        throw std::invalid_argument("kendall_tau: vectors differ in length");
    if (n < 2)
        throw std::invalid_argument("kendall_tau: need at least two observations");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
    });

    // pairs tied in x, and tied in both, from the (x, y)-sorted order
    long long tied_x = 0;
    long long tied_both = 0;
    for (Eigen::Index i = 0; i < n;) {
        Eigen::Index k = i;
        while (k + 1 < n && x[order[k + 1]] == x[order[i]])
            ++k;
        const long long m = k - i + 1;
        tied_x += m * (m - 1) / 2;
        for (Eigen::Index a = i; a <= k;) {
            Eigen::Index b = a;
            while (b + 1 <= k && y[order[b + 1]] == y[order[a]])
                ++b;
            const long long t = b - a + 1;
            tied_both += t * (t - 1) / 2;
            a = b + 1;
        }
        i = k + 1;
    }

    // inversions of the y sequence; ties in y are not inversions because the
    // merge keeps the left element on equality
    std::vector<double> ys(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        ys[static_cast<std::size_t>(i)] = y[order[static_cast<std::size_t>(i)]];
    std::vector<double> buf(ys.size());
    const long long swaps = detail::merge_count(ys, buf, 0, ys.size());

    // pairs tied in y, from the now fully sorted y values
    long long tied_y = 0;
    for (std::size_t i = 0; i < ys.size();) {
        std::size_t k = i;
        while (k + 1 < ys.size() && ys[k + 1] == ys[i])
            ++k;
        const long long t = static_cast<long long>(k - i + 1);
        tied_y += t * (t - 1) / 2;
        i = k + 1;
    }

    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    const long long numerator = total - tied_x - tied_y + tied_both - 2 * swaps;
    return static_cast<double>(numerator) / static_cast<double>(total);
}

//! average of kendall_tau over all column pairs of data
inline double average_pairwise_tau(const Eigen::MatrixXd& data)
{
    const Eigen::Index d = data.cols();
    if (d < 2)
        throw std::invalid_argument("average_pairwise_tau: need at least two columns");
    double sum = 0.0;
    int pairs = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = j + 1; k < d; ++k) {
            sum += kendall_tau(data.col(j), data.col(k));
            ++pairs;
        }
    }
    return sum / pairs;
}

}
