#pragma once

#include <Eigen/Dense>

#include <string>

#include "elf/errors.hpp"

namespace elf {

/// Prices attached to positive (actual > forecast) and negative
/// (actual < forecast) forecast errors, in currency per energy unit.
struct PriceTags {
    PriceTags(double plus, double minus);

    double p_plus;
    double p_minus;

    double total() const noexcept { return p_plus + p_minus; }
};

/// Per-split metric bundle.
struct EvaluationReport {
    double mape = 0.0;         // percent
    double mae = 0.0;          // load units
    double mse = 0.0;          // squared load units
    double rmse = 0.0;         // load units
    double elfe = 0.0;         // currency
    double elfe_over_d = 0.0;  // elfe / (p_plus + p_minus)
    std::size_t n = 0;
    std::string split_label;
};

double mape(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast);
double mae(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast);
double mse(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast);
double rmse(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast);

/// Economic forecast error: p_plus * sum of positive residuals plus
/// p_minus * sum of |negative residuals|. Exact-zero residuals belong to
/// neither sum.
double elfe(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast,
            const PriceTags& prices);

/// elfe / (p_plus + p_minus) — the dimensionless pinball total at
/// tau = p_plus / (p_plus + p_minus).
double elfe_over_d(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast,
                   const PriceTags& prices);

EvaluationReport evaluate(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast,
                          const PriceTags& prices, const std::string& split_label);

}  // namespace elf
