#pragma once

// Brute-force references for the solver tests. These stay independent of
// the library's fitting path: the pinball total is re-evaluated with a
// plain loop, and the minimum is taken over every coefficient vector that
// exactly interpolates p observations (some optimal vertex always has that
// form, so the enumerated minimum equals the true optimum).

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace elf::testing {

inline double pinball_total(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                            const Eigen::VectorXd& beta, double tau) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double r = y[i] - X.row(i).dot(beta);
        if (r > 0.0) {
            total += tau * r;
        } else if (r < 0.0) {
            total += (1.0 - tau) * (-r);
        }
    }
    return total;
}

inline double l1_total(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                       const Eigen::VectorXd& beta) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        total += std::abs(y[i] - X.row(i).dot(beta));
    }
    return total;
}

namespace detail {

template <typename Visit>
void for_each_interpolating_beta(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                                 Visit&& visit) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    if (n < p) {
        return;
    }
    std::vector<Eigen::Index> subset(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) {
        subset[static_cast<std::size_t>(j)] = j;
    }
    Eigen::MatrixXd xs(p, p);
    Eigen::VectorXd ys(p);
    while (true) {
        for (Eigen::Index j = 0; j < p; ++j) {
            xs.row(j) = X.row(subset[static_cast<std::size_t>(j)]);
            ys[j] = y[subset[static_cast<std::size_t>(j)]];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(xs);
        lu.setThreshold(1e-10);
        if (lu.rank() == p) {
            visit(Eigen::VectorXd(lu.solve(ys)));
        }
        // next combination in lexicographic order
        Eigen::Index j = p - 1;
        while (j >= 0 && subset[static_cast<std::size_t>(j)] == n - p + j) {
            --j;
        }
        if (j < 0) {
            break;
        }
        ++subset[static_cast<std::size_t>(j)];
        for (Eigen::Index k = j + 1; k < p; ++k) {
            subset[static_cast<std::size_t>(k)] = subset[static_cast<std::size_t>(k - 1)] + 1;
        }
    }
}

}  // namespace detail

/// Minimum pinball total over all exact-interpolation vertices; +inf when
/// no p rows are linearly independent.
inline double subset_interpolation_minimum(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                                           double tau) {
    double best = std::numeric_limits<double>::infinity();
    detail::for_each_interpolating_beta(y, X, [&](const Eigen::VectorXd& beta) {
        best = std::min(best, pinball_total(y, X, beta, tau));
    });
    return best;
}

/// Minimum L1 residual sum over the same vertex family (the least absolute
/// deviations optimum).
inline double least_absolute_minimum(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
    double best = std::numeric_limits<double>::infinity();
    detail::for_each_interpolating_beta(y, X, [&](const Eigen::VectorXd& beta) {
        best = std::min(best, l1_total(y, X, beta));
    });
    return best;
}

}  // namespace elf::testing
