#include "elf/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

// The fit minimizes F(beta) = sum_i rho_tau(y_i - x_i' beta), which is the
// linear program
//
//     min tau * sum(u) + (1 - tau) * sum(v)
//     s.t. X beta + u - v = y,  u >= 0,  v >= 0,  beta free.
//
// Every vertex of that program interpolates p observations exactly:
// beta = X_B^{-1} y_B for a basis B of p rows with X_B nonsingular. The
// solver walks vertices directly. At a vertex, the dual weights of the
// nonbasic rows are fixed by their residual signs (tau above the plane,
// tau - 1 below); solving X_B' psi_B = -sum_{i not in B} psi_i x_i gives
// the basic weights, and B is optimal iff every psi_B lies in
// [tau - 1, tau]. A violated bound names the leaving row and the descent
// edge; the step runs a line search over the breakpoints where nonbasic
// residuals change sign, crossing as many as keep the directional
// derivative negative (long steps), and the row at the stopping breakpoint
// enters the basis. Pivoting switches to smallest-index selection with
// single-breakpoint steps (Bland's rule) after a pivot-count threshold so
// degenerate instances cannot cycle.
//
// A nonbasic row can sit at residual zero (ties or repeated observations).
// Such a row still occupies one side of the program's u/v split, and that
// side decides its dual weight and when it appears as a zero-length
// breakpoint. The side is tracked explicitly across pivots; without this
// the dual test keeps finding phantom descent between two bases of the
// same degenerate vertex and the iteration stalls.

namespace elf {

namespace {

constexpr double kRankTolerance = 1e-10;

// First p rows that are linearly independent, in chronological order.
// Modified Gram-Schmidt with one re-orthogonalization pass.
std::vector<Eigen::Index> initial_basis(const Eigen::MatrixXd& design) {
    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    std::vector<Eigen::Index> basis;
    std::vector<Eigen::VectorXd> ortho;
    basis.reserve(static_cast<std::size_t>(p));
    ortho.reserve(static_cast<std::size_t>(p));

    for (Eigen::Index i = 0; i < n && std::cmp_less(basis.size(), p); ++i) {
        Eigen::VectorXd w = design.row(i).transpose();
        const double scale = w.norm();
        if (scale == 0.0) {
            continue;
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : ortho) {
                w -= q.dot(w) * q;
            }
        }
        if (w.norm() > kRankTolerance * scale) {
            ortho.push_back(w.normalized());
            basis.push_back(i);
        }
    }
    if (std::cmp_less(basis.size(), p)) {
        fail(Errc::rank_deficient, "design rank " + std::to_string(basis.size()) +
                                       " is below its " + std::to_string(p) + " columns");
    }
    return basis;
}

struct Breakpoint {
    double t;
    Eigen::Index row;
};

}  // namespace

Tau::Tau(double value) : value_(value) {
    if (!(std::isfinite(value) && value > 0.0 && value < 1.0)) {
        fail(Errc::invalid_tau, "tau must lie strictly between 0 and 1, got " +
                                    std::to_string(value));
    }
}

double pinball_objective(const Eigen::VectorXd& targets, const Eigen::MatrixXd& design,
                         const Eigen::VectorXd& beta, Tau tau) {
    if (design.rows() != targets.size() || design.cols() != beta.size()) {
        fail(Errc::dimension_mismatch,
             "design is " + std::to_string(design.rows()) + "x" + std::to_string(design.cols()) +
                 " against " + std::to_string(targets.size()) + " targets and " +
                 std::to_string(beta.size()) + " coefficients");
    }
    double pos = 0.0;
    double neg = 0.0;
    for (Eigen::Index i = 0; i < targets.size(); ++i) {
        const double r = targets[i] - design.row(i).dot(beta);
        if (r > 0.0) {
            pos += r;
        } else if (r < 0.0) {
            neg -= r;
        }
    }
    return tau.value() * pos + (1.0 - tau.value()) * neg;
}

QuantileModel fit_quantile(const Eigen::VectorXd& targets, const Eigen::MatrixXd& design, Tau tau,
                           const SolverOptions& options, std::vector<std::string> feature_names) {
    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    if (n < 1 || p < 1 || targets.size() != n) {
        fail(Errc::dimension_mismatch, "design is " + std::to_string(n) + "x" + std::to_string(p) +
                                           " against " + std::to_string(targets.size()) +
                                           " targets");
    }
    if (!feature_names.empty() && std::cmp_not_equal(feature_names.size(), p)) {
        fail(Errc::dimension_mismatch, "feature_names length does not match design columns");
    }
    if (!design.allFinite() || !targets.allFinite()) {
        fail(Errc::dimension_mismatch, "design and targets must be finite");
    }
    if (!(options.feasibility_tolerance > 0.0)) {
        fail(Errc::invalid_config, "feasibility_tolerance must be > 0");
    }
    if (options.max_pivots < 0) {
        fail(Errc::invalid_config, "max_pivots must be positive (or 0 for the automatic budget)");
    }
    if (options.tie_break != "lowest-vertex") {
        fail(Errc::invalid_config, "unknown tie_break rule '" + options.tie_break + "'");
    }

    const double tv = tau.value();
    const double tol = options.feasibility_tolerance;
    const long max_pivots = options.max_pivots > 0 ? options.max_pivots : 100L * (n + p);
    const long bland_after = 4L * (n + p);

    std::vector<Eigen::Index> basis = initial_basis(design);

    // Row infinity norms, cached for the breakpoint noise threshold.
    Eigen::VectorXd row_scale(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        row_scale[i] = design.row(i).cwiseAbs().maxCoeff();
    }

    Eigen::MatrixXd basis_mat(p, p);
    Eigen::VectorXd basis_rhs(p);
    Eigen::VectorXd beta(p);
    Eigen::VectorXd residuals(n);
    Eigen::VectorXd dual_rhs(p);
    Eigen::VectorXd psi(p);
    Eigen::VectorXd direction(p);
    Eigen::VectorXd step_rate(n);
    Eigen::VectorXd magnitude(n);
    std::vector<bool> in_basis(static_cast<std::size_t>(n));
    std::vector<signed char> zero_side(static_cast<std::size_t>(n), 1);  // u/v side when r == 0
    std::vector<Breakpoint> breakpoints;

    long pivots = 0;
    while (true) {
        for (Eigen::Index q = 0; q < p; ++q) {
            basis_mat.row(q) = design.row(basis[static_cast<std::size_t>(q)]);
            basis_rhs[q] = targets[basis[static_cast<std::size_t>(q)]];
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_mat);
        beta = lu.solve(basis_rhs);
        if (!beta.allFinite() ||
            (basis_mat * beta - basis_rhs).cwiseAbs().maxCoeff() >
                1e-8 * (1.0 + basis_rhs.cwiseAbs().maxCoeff())) {
            fail(Errc::rank_deficient, "working basis became numerically singular");
        }

        std::fill(in_basis.begin(), in_basis.end(), false);
        for (Eigen::Index q = 0; q < p; ++q) {
            in_basis[static_cast<std::size_t>(basis[static_cast<std::size_t>(q)])] = true;
        }
        residuals = targets - design * beta;
        for (Eigen::Index q = 0; q < p; ++q) {
            residuals[basis[static_cast<std::size_t>(q)]] = 0.0;  // interpolated by construction
        }
        // Rows lying on the current plane (duplicates of basic rows, exact
        // ties) come back as rounding dust, not exact zeros. Snap them so
        // the degenerate-side bookkeeping applies instead of sign tests on
        // noise.
        magnitude = targets.cwiseAbs();
        magnitude.noalias() += design.cwiseAbs() * beta.cwiseAbs();
        constexpr double kSnap = 64.0 * std::numeric_limits<double>::epsilon();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (residuals[i] != 0.0 && std::abs(residuals[i]) <= kSnap * magnitude[i]) {
                residuals[i] = 0.0;
            }
        }

        dual_rhs.setZero();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (in_basis[static_cast<std::size_t>(i)]) {
                continue;
            }
            double weight = tv;
            if (residuals[i] < 0.0 ||
                (residuals[i] == 0.0 && zero_side[static_cast<std::size_t>(i)] < 0)) {
                weight = tv - 1.0;
            }
            dual_rhs.noalias() -= weight * design.row(i).transpose();
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu_t(basis_mat.transpose());
        psi = lu_t.solve(dual_rhs);

        // Leaving row: dual weight outside [tau - 1, tau]. The violation
        // magnitude equals the descent rate along the matching edge.
        Eigen::Index leave_pos = -1;
        double leave_sigma = 0.0;
        const bool bland = pivots >= bland_after;
        double best_violation = tol;
        for (Eigen::Index q = 0; q < p; ++q) {
            const double over = psi[q] - tv;
            const double under = (tv - 1.0) - psi[q];
            if (bland) {
                if (over > tol || under > tol) {
                    leave_pos = q;
                    leave_sigma = over > tol ? 1.0 : -1.0;
                    break;  // basis is kept sorted, so q order is index order
                }
            } else if (over > best_violation) {
                best_violation = over;
                leave_pos = q;
                leave_sigma = 1.0;
            } else if (under > best_violation) {
                best_violation = under;
                leave_pos = q;
                leave_sigma = -1.0;
            }
        }
        if (leave_pos < 0) {
            break;  // dual feasible: optimal vertex
        }
        if (pivots >= max_pivots) {
            fail(Errc::pivot_limit, "pivot budget of " + std::to_string(max_pivots) +
                                        " exhausted; cycling or a solver defect");
        }

        // Edge direction: residuals of the other basic rows stay zero, the
        // leaving row's residual grows with sign sigma.
        direction = lu.solve(Eigen::VectorXd::Unit(p, leave_pos));
        direction *= -leave_sigma;
        step_rate.noalias() = design * direction;
        const double dir_scale = direction.cwiseAbs().maxCoeff();

        double slope = -leave_sigma * psi[leave_pos] + (leave_sigma > 0.0 ? tv : 1.0 - tv);

        breakpoints.clear();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (in_basis[static_cast<std::size_t>(i)]) {
                continue;
            }
            const double g = step_rate[i];
            if (std::abs(g) <= 1e-13 * row_scale[i] * dir_scale) {
                continue;
            }
            if (residuals[i] > 0.0 && g > 0.0) {
                breakpoints.push_back({residuals[i] / g, i});
            } else if (residuals[i] < 0.0 && g < 0.0) {
                breakpoints.push_back({residuals[i] / g, i});
            } else if (residuals[i] == 0.0 &&
                       (zero_side[static_cast<std::size_t>(i)] > 0 ? g > 0.0 : g < 0.0)) {
                breakpoints.push_back({0.0, i});  // degenerate: flips side at the start
            }
        }
        std::sort(breakpoints.begin(), breakpoints.end(), [](const Breakpoint& a, const Breakpoint& b) {
            return a.t != b.t ? a.t < b.t : a.row < b.row;
        });

        Eigen::Index enter = -1;
        for (const auto& bp : breakpoints) {
            slope += std::abs(step_rate[bp.row]);
            if (bland || slope >= 0.0) {
                enter = bp.row;
                break;
            }
            // crossed without entering: the row now sits on the other side
            zero_side[static_cast<std::size_t>(bp.row)] = step_rate[bp.row] > 0.0 ? -1 : 1;
        }
        if (enter < 0) {
            fail(Errc::pivot_limit, "descent direction never turned uphill; solver defect");
        }

        zero_side[static_cast<std::size_t>(basis[static_cast<std::size_t>(leave_pos)])] =
            leave_sigma > 0.0 ? 1 : -1;
        basis[static_cast<std::size_t>(leave_pos)] = enter;
        std::sort(basis.begin(), basis.end());
        ++pivots;
    }

    QuantileModel model{beta, tau, std::move(feature_names),
                        pinball_objective(targets, design, beta, tau)};
    if (model.feature_names.empty()) {
        for (Eigen::Index j = 0; j < p; ++j) {
            model.feature_names.push_back("x" + std::to_string(j + 1));
        }
    }
    return model;
}

QuantileModel fit_quantile(const SupervisedSet& set, Tau tau, const SolverOptions& options) {
    return fit_quantile(set.targets, set.design, tau, options, set.feature_names);
}

Tau tau_from_prices(const PriceTags& prices) {
    return Tau(prices.p_plus / prices.total());
}

Eigen::VectorXd predict(const QuantileModel& model, const Eigen::MatrixXd& design) {
    if (design.cols() != model.coefficients.size()) {
        fail(Errc::dimension_mismatch, "design has " + std::to_string(design.cols()) +
                                           " columns, model has " +
                                           std::to_string(model.coefficients.size()) +
                                           " coefficients");
    }
    return design * model.coefficients;
}

}  // namespace elf
