#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "elf/dataset.hpp"
#include "elf/errors.hpp"
#include "elf/metrics.hpp"

namespace elf {

/// Quantile level, strictly inside (0, 1). Equals the weight put on
/// positive residuals in the pinball objective.
class Tau {
public:
    explicit Tau(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

struct SolverOptions {
    double feasibility_tolerance = 1e-9;  // dual bound slack for declaring optimality
    long max_pivots = 0;                  // 0 = automatic: 100 * (N + p)
    std::string tie_break = "lowest-vertex";
};

/// Linear quantile model: coefficients aligned with feature_names, the
/// quantile level it was fit at, and the minimized pinball total.
struct QuantileModel {
    Eigen::VectorXd coefficients;
    Tau tau;
    std::vector<std::string> feature_names;
    double objective_value = 0.0;
};

/// tau * sum of positive residuals + (1 - tau) * sum of |negative
/// residuals| for residuals y - X beta. Zero residuals contribute nothing.
double pinball_objective(const Eigen::VectorXd& targets, const Eigen::MatrixXd& design,
                         const Eigen::VectorXd& beta, Tau tau);

/// Minimizes the pinball objective exactly via a primal simplex on the
/// vertices of the equivalent linear program (see quantile.cpp). The
/// returned solution interpolates p observations when N >= p.
///
/// Throws RankDeficient when the design lacks full column rank (including
/// N < p), PivotLimit when the pivot budget is exhausted.
QuantileModel fit_quantile(const Eigen::VectorXd& targets, const Eigen::MatrixXd& design, Tau tau,
                           const SolverOptions& options = {},
                           std::vector<std::string> feature_names = {});

QuantileModel fit_quantile(const SupervisedSet& set, Tau tau, const SolverOptions& options = {});

/// tau = p_plus / (p_plus + p_minus).
Tau tau_from_prices(const PriceTags& prices);

/// Row-wise inner product with the model coefficients.
Eigen::VectorXd predict(const QuantileModel& model, const Eigen::MatrixXd& design);

}  // namespace elf
