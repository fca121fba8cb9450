#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "elf/dataset.hpp"
#include "elf/ols.hpp"
#include "elf/quantile.hpp"

namespace elf {

enum class Normalize {
    none,
    divide_by_max,  // peak load maps to 1.0
};

struct IngestOptions {
    Normalize normalize = Normalize::none;
    bool strict = true;  // reject unparseable rows instead of skipping with a warning
};

/// 17 significant digits, enough to round-trip any double exactly. All
/// numeric file output goes through this.
std::string format_double(double value);

/// Reads the canonical series schema: header `date,load,hdd,cdd`, dates as
/// `YYYY-MM`, decimal points, UTF-8, LF or CRLF. Records are sorted by
/// month; normalization is applied afterwards when requested.
///
/// Throws ParseError (with the line number) in strict mode, DuplicateMonth,
/// EmptyFile when the file holds no data rows, IoError when unreadable.
LoadSeries read_series(const std::filesystem::path& path, const IngestOptions& options = {});

/// Writes the canonical series schema. read -> write -> read is exact.
void write_series(const std::filesystem::path& path, const LoadSeries& series);

/// Rows of a predictions file, actual and forecast aligned with index.
struct PredictionTable {
    std::vector<YearMonth> index;
    Eigen::VectorXd actual;
    Eigen::VectorXd forecast;
};

/// Writes `date,actual,forecast,residual` rows (residual = actual -
/// forecast). Empty input produces a header-only file.
void write_predictions(const std::filesystem::path& path, const std::vector<YearMonth>& index,
                       const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast);

PredictionTable read_predictions(const std::filesystem::path& path);

/// Flat key-value model document shared by both fit methods. `tau` and the
/// solver options are present only for quantile models; objective_value
/// holds the pinball total for quantile fits and the residual sum of
/// squares for least-squares fits. The feature-build parameters are stored
/// so a model file alone suffices to rebuild a design matrix.
struct ModelFile {
    std::string method;  // "qr" or "mlr"
    std::optional<double> tau;
    std::vector<std::string> feature_names;
    Eigen::VectorXd coefficients;
    double objective_value = 0.0;
    int lead_months = 12;
    int lag_years = 11;
    bool include_intercept = true;
    std::optional<SolverOptions> solver_options;
};

ModelFile to_model_file(const QuantileModel& model, const SolverOptions& options,
                        int lead_months, int lag_years, bool include_intercept);
ModelFile to_model_file(const LinearModel& model, int lead_months, int lag_years,
                        bool include_intercept);

void write_model(const std::filesystem::path& path, const ModelFile& model);
ModelFile read_model(const std::filesystem::path& path);

}  // namespace elf
