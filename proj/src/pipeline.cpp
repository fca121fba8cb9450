#include "elf/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <utility>

#include "elf/ols.hpp"

namespace elf {

namespace {

namespace fs = std::filesystem;

void ensure_output_dir(const fs::path& dir) {
    if (dir.empty()) {
        fail(Errc::invalid_config, "output_dir is required");
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        fail(Errc::io_error, "cannot create " + dir.string() + ": " + ec.message());
    }
}

struct SplitData {
    SupervisedSet train;
    SupervisedSet validation;
};

SplitData load_and_split(const RunConfig& config) {
    const LoadSeries series = read_series(config.data_path);
    const SupervisedSet set =
        build_supervised(series, config.lead_months, config.lag_years, config.include_intercept);
    auto [train, validation] = chronological_split(set, SplitSpec{config.train_fraction});
    return {std::move(train), std::move(validation)};
}

}  // namespace

PriceScenario resolve_prices(const RunConfig& config) {
    if (config.tau.has_value() == config.prices.has_value()) {
        fail(Errc::invalid_config, "exactly one of tau and prices must be supplied");
    }
    if (config.prices) {
        return {tau_from_prices(*config.prices), *config.prices};
    }
    const Tau tau(*config.tau);
    return {tau, PriceTags(tau.value(), 1.0 - tau.value())};
}

FitResult run_fit(const RunConfig& config) {
    if (config.method != "qr" && config.method != "mlr") {
        fail(Errc::invalid_config, "method must be 'qr' or 'mlr'");
    }
    // mlr needs prices only for evaluation; default to symmetric when absent.
    RunConfig effective = config;
    if (config.method == "mlr" && !config.tau && !config.prices) {
        effective.tau = 0.5;
    }
    const PriceScenario scenario = resolve_prices(effective);

    const SplitData data = load_and_split(config);
    ensure_output_dir(config.output_dir);

    ModelFile model;
    Eigen::VectorXd train_forecast;
    Eigen::VectorXd validation_forecast;
    if (config.method == "qr") {
        const QuantileModel fitted = fit_quantile(data.train, scenario.tau, config.solver);
        train_forecast = predict(fitted, data.train.design);
        validation_forecast = predict(fitted, data.validation.design);
        model = to_model_file(fitted, config.solver, config.lead_months, config.lag_years,
                              config.include_intercept);
    } else {
        const LinearModel fitted = fit_ols(data.train);
        train_forecast = predict_ols(fitted, data.train.design);
        validation_forecast = predict_ols(fitted, data.validation.design);
        model = to_model_file(fitted, config.lead_months, config.lag_years,
                              config.include_intercept);
    }

    FitResult result;
    result.model = model;
    result.train = evaluate(data.train.targets, train_forecast, scenario.prices, "train");
    result.validation =
        evaluate(data.validation.targets, validation_forecast, scenario.prices, "validation");

    result.model_path = config.output_dir / "model.txt";
    result.train_predictions_path = config.output_dir / "predictions_train.csv";
    result.validation_predictions_path = config.output_dir / "predictions_validation.csv";
    result.report_path = config.output_dir / "report.csv";

    write_model(result.model_path, model);
    write_predictions(result.train_predictions_path, data.train.index, data.train.targets,
                      train_forecast);
    write_predictions(result.validation_predictions_path, data.validation.index,
                      data.validation.targets, validation_forecast);
    write_report_csv(result.report_path, {result.train, result.validation});
    return result;
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
    if (config.method != "qr") {
        fail(Errc::invalid_config, "sweep requires method 'qr'");
    }
    if (config.sweep_grid.empty()) {
        fail(Errc::invalid_config, "sweep_grid is empty");
    }
    const PriceScenario scenario = resolve_prices(config);
    const SplitData data = load_and_split(config);
    ensure_output_dir(config.output_dir);

    std::vector<SweepRow> rows;
    rows.reserve(config.sweep_grid.size());
    for (const double tau_value : config.sweep_grid) {
        const Tau fit_tau(tau_value);
        const QuantileModel fitted = fit_quantile(data.train, fit_tau, config.solver);
        const Eigen::VectorXd train_forecast = predict(fitted, data.train.design);
        const Eigen::VectorXd validation_forecast = predict(fitted, data.validation.design);

        SweepRow row;
        row.tau = tau_value;
        row.mape_train = mape(data.train.targets, train_forecast);
        row.mape_validation = mape(data.validation.targets, validation_forecast);
        row.mae_train = mae(data.train.targets, train_forecast);
        row.mae_validation = mae(data.validation.targets, validation_forecast);
        row.rmse_train = rmse(data.train.targets, train_forecast);
        row.rmse_validation = rmse(data.validation.targets, validation_forecast);
        row.elfe_over_d_train = elfe_over_d(data.train.targets, train_forecast, scenario.prices);
        row.elfe_over_d_validation =
            elfe_over_d(data.validation.targets, validation_forecast, scenario.prices);
        rows.push_back(row);
    }
    write_sweep_csv(config.output_dir / "sweep.csv", rows);
    return rows;
}

std::vector<CompareRow> run_compare(const RunConfig& config,
                                    const std::vector<std::filesystem::path>& external_files) {
    const PriceScenario scenario = resolve_prices(config);
    const SplitData data = load_and_split(config);
    ensure_output_dir(config.output_dir);

    std::vector<CompareRow> rows;

    const QuantileModel qr = fit_quantile(data.train, scenario.tau, config.solver);
    rows.push_back({"qr",
                    evaluate(data.train.targets, predict(qr, data.train.design), scenario.prices,
                             "train"),
                    evaluate(data.validation.targets, predict(qr, data.validation.design),
                             scenario.prices, "validation")});

    const LinearModel mlr = fit_ols(data.train);
    rows.push_back({"mlr",
                    evaluate(data.train.targets, predict_ols(mlr, data.train.design),
                             scenario.prices, "train"),
                    evaluate(data.validation.targets, predict_ols(mlr, data.validation.design),
                             scenario.prices, "validation")});

    const Eigen::Index n_train = data.train.rows();
    for (const auto& file : external_files) {
        const PredictionTable table = read_predictions(file);
        const Eigen::Index n_total = n_train + data.validation.rows();
        if (std::cmp_not_equal(table.index.size(), n_total)) {
            fail(Errc::index_mismatch, file.string() + " holds " +
                                           std::to_string(table.index.size()) + " rows, expected " +
                                           std::to_string(n_total));
        }
        for (Eigen::Index i = 0; i < n_total; ++i) {
            const YearMonth expected = i < n_train
                                           ? data.train.index[static_cast<std::size_t>(i)]
                                           : data.validation.index[static_cast<std::size_t>(i - n_train)];
            if (!(table.index[static_cast<std::size_t>(i)] == expected)) {
                fail(Errc::index_mismatch, file.string() + " row " + std::to_string(i + 2) +
                                               " is dated " +
                                               to_string(table.index[static_cast<std::size_t>(i)]) +
                                               ", expected " + to_string(expected));
            }
        }
        rows.push_back({file.stem().string(),
                        evaluate(data.train.targets, table.forecast.head(n_train), scenario.prices,
                                 "train"),
                        evaluate(data.validation.targets, table.forecast.tail(n_total - n_train),
                                 scenario.prices, "validation")});
    }

    write_compare_csv(config.output_dir / "compare.csv", rows);
    return rows;
}

PredictionTable run_predict(const std::filesystem::path& model_path,
                            const std::filesystem::path& data_path,
                            const std::filesystem::path& output_path) {
    const ModelFile model = read_model(model_path);
    const LoadSeries series = read_series(data_path);
    const SupervisedSet set =
        build_supervised(series, model.lead_months, model.lag_years, model.include_intercept);
    if (set.feature_names != model.feature_names) {
        fail(Errc::dimension_mismatch,
             "features built from " + data_path.string() + " do not match the model's");
    }

    PredictionTable table;
    table.index = set.index;
    table.actual = set.targets;
    table.forecast = set.design * model.coefficients;
    write_predictions(output_path, table.index, table.actual, table.forecast);
    return table;
}

EvaluationReport run_evaluate(const std::filesystem::path& predictions_path,
                              const PriceTags& prices, const std::string& label) {
    const PredictionTable table = read_predictions(predictions_path);
    return evaluate(table.actual, table.forecast, prices, label);
}

LoadSeries run_ingest(const std::filesystem::path& input_path,
                      const std::filesystem::path& output_path, const IngestOptions& options) {
    const LoadSeries series = read_series(input_path, options);
    write_series(output_path, series);
    return series;
}

void write_report_csv(const std::filesystem::path& path,
                      const std::vector<EvaluationReport>& reports) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(Errc::io_error, "cannot open " + path.string() + " for writing");
    }
    out << "split,n,mape,mae,mse,rmse,elfe,elfe_over_d\n";
    for (const auto& r : reports) {
        out << r.split_label << ',' << r.n << ',' << format_double(r.mape) << ','
            << format_double(r.mae) << ',' << format_double(r.mse) << ','
            << format_double(r.rmse) << ',' << format_double(r.elfe) << ','
            << format_double(r.elfe_over_d) << "\n";
    }
    out.flush();
    if (!out) {
        fail(Errc::io_error, "write to " + path.string() + " failed");
    }
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(Errc::io_error, "cannot open " + path.string() + " for writing");
    }
    out << "tau,mape_train,mape_validation,mae_train,mae_validation,"
           "rmse_train,rmse_validation,elfe_over_d_train,elfe_over_d_validation\n";
    for (const auto& r : rows) {
        out << format_double(r.tau) << ',' << format_double(r.mape_train) << ','
            << format_double(r.mape_validation) << ',' << format_double(r.mae_train) << ','
            << format_double(r.mae_validation) << ',' << format_double(r.rmse_train) << ','
            << format_double(r.rmse_validation) << ',' << format_double(r.elfe_over_d_train)
            << ',' << format_double(r.elfe_over_d_validation) << "\n";
    }
    out.flush();
    if (!out) {
        fail(Errc::io_error, "write to " + path.string() + " failed");
    }
}

void write_compare_csv(const std::filesystem::path& path, const std::vector<CompareRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(Errc::io_error, "cannot open " + path.string() + " for writing");
    }
    out << "method,mape_train,mae_train,mse_train,rmse_train,elfe_train,elfe_over_d_train,"
           "mape_validation,mae_validation,mse_validation,rmse_validation,elfe_validation,"
           "elfe_over_d_validation\n";
    for (const auto& r : rows) {
        out << r.method << ',' << format_double(r.train.mape) << ',' << format_double(r.train.mae)
            << ',' << format_double(r.train.mse) << ',' << format_double(r.train.rmse) << ','
            << format_double(r.train.elfe) << ',' << format_double(r.train.elfe_over_d) << ','
            << format_double(r.validation.mape) << ',' << format_double(r.validation.mae) << ','
            << format_double(r.validation.mse) << ',' << format_double(r.validation.rmse) << ','
            << format_double(r.validation.elfe) << ',' << format_double(r.validation.elfe_over_d)
            << "\n";
    }
    out.flush();
    if (!out) {
        fail(Errc::io_error, "write to " + path.string() + " failed");
    }
}

}  // namespace elf
