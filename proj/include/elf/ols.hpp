#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "elf/dataset.hpp"

namespace elf {

/// Ordinary-least-squares linear model.
struct LinearModel {
    Eigen::VectorXd coefficients;
    std::vector<std::string> feature_names;
    double sse = 0.0;  // residual sum of squares
};

/// Least-squares fit via a column-pivoted Householder factorization of the
/// design (the lag columns are close to collinear, so the normal equations
/// are avoided). Throws Underdetermined when N < p, RankDeficient when the
/// design lacks full column rank.
LinearModel fit_ols(const Eigen::VectorXd& targets, const Eigen::MatrixXd& design,
                    std::vector<std::string> feature_names = {});

LinearModel fit_ols(const SupervisedSet& set);

Eigen::VectorXd predict_ols(const LinearModel& model, const Eigen::MatrixXd& design);

}  // namespace elf
