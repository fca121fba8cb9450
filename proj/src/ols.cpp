#include "elf/ols.hpp"

#include <utility>

#include "elf/errors.hpp"

namespace elf {

LinearModel fit_ols(const Eigen::VectorXd& targets, const Eigen::MatrixXd& design,
                    std::vector<std::string> feature_names) {
    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    if (p < 1 || targets.size() != n) {
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
    if (n < p) {
        fail(Errc::underdetermined, std::to_string(n) + " rows cannot determine " +
                                        std::to_string(p) + " coefficients");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < p) {
        fail(Errc::rank_deficient, "design rank " + std::to_string(qr.rank()) +
                                       " is below its " + std::to_string(p) + " columns");
    }

    LinearModel model;
    model.coefficients = qr.solve(targets);
    model.sse = (targets - design * model.coefficients).squaredNorm();
    model.feature_names = std::move(feature_names);
    if (model.feature_names.empty()) {
        for (Eigen::Index j = 0; j < p; ++j) {
            model.feature_names.push_back("x" + std::to_string(j + 1));
        }
    }
    return model;
}

LinearModel fit_ols(const SupervisedSet& set) {
    return fit_ols(set.targets, set.design, set.feature_names);
}

Eigen::VectorXd predict_ols(const LinearModel& model, const Eigen::MatrixXd& design) {
    if (design.cols() != model.coefficients.size()) {
        fail(Errc::dimension_mismatch, "design has " + std::to_string(design.cols()) +
                                           " columns, model has " +
                                           std::to_string(model.coefficients.size()) +
                                           " coefficients");
    }
    return design * model.coefficients;
}

}  // namespace elf
