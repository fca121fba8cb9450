#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "elf/dataset.hpp"
#include "elf/io.hpp"
#include "elf/metrics.hpp"
#include "elf/quantile.hpp"

namespace elf {

/// Everything a pipeline run needs. Exactly one of tau / prices must be
/// set for the quantile method; prices imply tau = p_plus/(p_plus+p_minus).
/// When only tau is given, reports price the errors at (tau, 1 - tau), the
/// unit-total pair for which ELFE and ELFE/d coincide.
struct RunConfig {
    std::filesystem::path data_path;
    int lead_months = 12;
    int lag_years = 11;
    double train_fraction = 0.6;
    std::string method = "qr";  // "qr" or "mlr"
    std::optional<double> tau;
    std::optional<PriceTags> prices;
    std::vector<double> sweep_grid = {0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90};
    std::filesystem::path output_dir;
    bool include_intercept = true;
    SolverOptions solver;
};

/// tau/prices resolved to a concrete evaluation scenario.
struct PriceScenario {
    Tau tau;
    PriceTags prices;
};
PriceScenario resolve_prices(const RunConfig& config);

struct FitResult {
    ModelFile model;
    EvaluationReport train;
    EvaluationReport validation;
    std::filesystem::path model_path;
    std::filesystem::path train_predictions_path;
    std::filesystem::path validation_predictions_path;
    std::filesystem::path report_path;
};

/// Full pipeline: read series, build lagged features, split, fit, predict
/// both splits, evaluate, and write model/predictions/report files under
/// config.output_dir.
FitResult run_fit(const RunConfig& config);

/// One sweep row: a model fit at `tau`, evaluated on both splits at the
/// configured prices (ELFE/d is the pinball total at the price-implied
/// quantile, regardless of the fit quantile).
struct SweepRow {
    double tau = 0.0;
    double mape_train = 0.0;
    double mape_validation = 0.0;
    double mae_train = 0.0;
    double mae_validation = 0.0;
    double rmse_train = 0.0;
    double rmse_validation = 0.0;
    double elfe_over_d_train = 0.0;
    double elfe_over_d_validation = 0.0;
};

/// Fits one quantile model per grid value and writes sweep.csv.
std::vector<SweepRow> run_sweep(const RunConfig& config);

struct CompareRow {
    std::string method;
    EvaluationReport train;
    EvaluationReport validation;
};

/// Fits the built-in quantile and least-squares models, evaluates each
/// external predictions file against the same split, and writes
/// compare.csv. External files must carry exactly the supervised index
/// (IndexMismatch otherwise); their forecasts are scored against the
/// series' actual loads.
std::vector<CompareRow> run_compare(const RunConfig& config,
                                    const std::vector<std::filesystem::path>& external_files);

/// Rebuilds the design for a stored model and writes a predictions file.
PredictionTable run_predict(const std::filesystem::path& model_path,
                            const std::filesystem::path& data_path,
                            const std::filesystem::path& output_path);

/// Scores an existing predictions file.
EvaluationReport run_evaluate(const std::filesystem::path& predictions_path,
                              const PriceTags& prices, const std::string& label);

/// Reads, validates, optionally normalizes, and rewrites a series in the
/// canonical schema.
LoadSeries run_ingest(const std::filesystem::path& input_path,
                      const std::filesystem::path& output_path, const IngestOptions& options);

/// CSV writers shared by the subcommands (17-significant-digit numbers).
void write_report_csv(const std::filesystem::path& path,
                      const std::vector<EvaluationReport>& reports);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);
void write_compare_csv(const std::filesystem::path& path, const std::vector<CompareRow>& rows);

}  // namespace elf
