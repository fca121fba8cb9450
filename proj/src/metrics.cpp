#include "elf/metrics.hpp"

#include <cmath>

namespace elf {

namespace {

void check_lengths(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast) {
    if (actual.size() != forecast.size()) {
        fail(Errc::dimension_mismatch, "actual has " + std::to_string(actual.size()) +
                                           " entries, forecast has " +
                                           std::to_string(forecast.size()));
    }
    if (actual.size() == 0) {
        fail(Errc::dimension_mismatch, "empty input");
    }
}

// Positive and |negative| residual totals, zero residuals in neither.
struct SignedSums {
    double pos = 0.0;
    double neg = 0.0;
};

SignedSums signed_residual_sums(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast) {
    SignedSums s;
    for (Eigen::Index i = 0; i < actual.size(); ++i) {
        const double r = actual[i] - forecast[i];
        if (r > 0.0) {
            s.pos += r;
        } else if (r < 0.0) {
            s.neg -= r;
        }
    }
    return s;
}

}  // namespace

PriceTags::PriceTags(double plus, double minus) : p_plus(plus), p_minus(minus) {
    if (!(std::isfinite(p_plus) && p_plus > 0.0) || !(std::isfinite(p_minus) && p_minus > 0.0)) {
        fail(Errc::non_positive_price, "prices must be finite and > 0");
    }
}

double mape(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast) {
    check_lengths(actual, forecast);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < actual.size(); ++i) {
        if (actual[i] == 0.0) {
            fail(Errc::zero_actual, "actual value is zero at position " + std::to_string(i));
        }
        sum += std::abs((actual[i] - forecast[i]) / actual[i]);
    }
    return sum / static_cast<double>(actual.size()) * 100.0;
}

double mae(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast) {
    check_lengths(actual, forecast);
    return (actual - forecast).cwiseAbs().sum() / static_cast<double>(actual.size());
}

double mse(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast) {
    check_lengths(actual, forecast);
    return (actual - forecast).squaredNorm() / static_cast<double>(actual.size());
}

double rmse(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast) {
    return std::sqrt(mse(actual, forecast));
}

double elfe(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast,
            const PriceTags& prices) {
    check_lengths(actual, forecast);
    const SignedSums s = signed_residual_sums(actual, forecast);
    return prices.p_plus * s.pos + prices.p_minus * s.neg;
}

double elfe_over_d(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast,
                   const PriceTags& prices) {
    return elfe(actual, forecast, prices) / prices.total();
}

EvaluationReport evaluate(const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast,
                          const PriceTags& prices, const std::string& split_label) {
    EvaluationReport report;
    report.mape = mape(actual, forecast);
    report.mae = mae(actual, forecast);
    report.mse = mse(actual, forecast);
    report.rmse = std::sqrt(report.mse);
    report.elfe = elfe(actual, forecast, prices);
    report.elfe_over_d = elfe_over_d(actual, forecast, prices);
    report.n = static_cast<std::size_t>(actual.size());
    report.split_label = split_label;
    return report;
}

}  // namespace elf
