#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "elf/io.hpp"
#include "elf/pipeline.hpp"
#include "elf/synthetic.hpp"

namespace {

void print_reports(const std::vector<elf::EvaluationReport>& reports) {
    std::cout << std::left << std::setw(12) << "split" << std::right << std::setw(6) << "n"
              << std::setw(12) << "mape" << std::setw(14) << "mae" << std::setw(14) << "rmse"
              << std::setw(16) << "elfe" << std::setw(16) << "elfe/d" << "\n";
    std::cout << std::setprecision(6) << std::fixed;
    for (const auto& r : reports) {
        std::cout << std::left << std::setw(12) << r.split_label << std::right << std::setw(6)
                  << r.n << std::setw(12) << r.mape << std::setw(14) << r.mae << std::setw(14)
                  << r.rmse << std::setw(16) << r.elfe << std::setw(16) << r.elfe_over_d << "\n";
    }
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);
}

void print_sweep(const std::vector<elf::SweepRow>& rows) {
    std::cout << std::right << std::setw(6) << "tau" << std::setw(12) << "mape_tr"
              << std::setw(12) << "mape_val" << std::setw(14) << "mae_tr" << std::setw(14)
              << "mae_val" << std::setw(14) << "rmse_tr" << std::setw(14) << "rmse_val"
              << std::setw(16) << "elfe/d_tr" << std::setw(16) << "elfe/d_val" << "\n";
    std::cout << std::setprecision(4) << std::fixed;
    for (const auto& r : rows) {
        std::cout << std::setw(6) << std::setprecision(2) << r.tau << std::setprecision(4)
                  << std::setw(12) << r.mape_train << std::setw(12) << r.mape_validation
                  << std::setw(14) << r.mae_train << std::setw(14) << r.mae_validation
                  << std::setw(14) << r.rmse_train << std::setw(14) << r.rmse_validation
                  << std::setw(16) << r.elfe_over_d_train << std::setw(16)
                  << r.elfe_over_d_validation << "\n";
    }
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);
}

struct CommonFlags {
    elf::RunConfig config;
    double p_plus = 0.0;
    double p_minus = 0.0;
    double tau = 0.0;
    bool no_intercept = false;
};

void add_pipeline_flags(CLI::App* cmd, CommonFlags& flags, bool with_method) {
    cmd->add_option("--data,--data-path", flags.config.data_path,
                    "monthly series CSV (date,load,hdd,cdd)")
        ->required();
    cmd->add_option("--output-dir", flags.config.output_dir, "directory for result files")
        ->required();
    cmd->add_option("--lead-months", flags.config.lead_months,
                    "forecast lead in months (multiple of 12)")
        ->capture_default_str();
    cmd->add_option("--lag-years", flags.config.lag_years, "same-month lag years per row")
        ->capture_default_str();
    cmd->add_option("--train-fraction", flags.config.train_fraction,
                    "leading fraction of rows used for training")
        ->capture_default_str();
    cmd->add_flag("--no-intercept", flags.no_intercept, "drop the trailing intercept column");
    auto* tau_opt = cmd->add_option("--tau", flags.tau, "quantile level in (0,1)");
    auto* plus_opt = cmd->add_option("--p-plus", flags.p_plus, "price per unit of under-forecast");
    auto* minus_opt =
        cmd->add_option("--p-minus", flags.p_minus, "price per unit of over-forecast");
    tau_opt->excludes(plus_opt)->excludes(minus_opt);
    plus_opt->needs(minus_opt);
    minus_opt->needs(plus_opt);
    if (with_method) {
        cmd->add_option("--method", flags.config.method, "qr or mlr")->capture_default_str();
    }
}

void finalize_config(CLI::App* cmd, CommonFlags& flags) {
    flags.config.include_intercept = !flags.no_intercept;
    if (cmd->count("--tau") > 0) {
        flags.config.tau = flags.tau;
    }
    if (cmd->count("--p-plus") > 0) {
        flags.config.prices = elf::PriceTags(flags.p_plus, flags.p_minus);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Economic load forecasting: quantile regression fit, evaluation and sweeps"};
    app.require_subcommand(1);

    // ingest
    std::string in_path;
    std::string out_path;
    std::string normalize = "none";
    bool lenient = false;
    auto* ingest = app.add_subcommand("ingest", "validate and canonicalize a series CSV");
    ingest->add_option("--data", in_path, "input series CSV")->required();
    ingest->add_option("--output", out_path, "canonicalized output CSV")->required();
    ingest->add_option("--normalize", normalize, "none or divide_by_max")->capture_default_str();
    ingest->add_flag("--lenient", lenient, "skip unparseable rows with a warning");

    // fit
    CommonFlags fit_flags;
    auto* fit = app.add_subcommand("fit", "fit a model and evaluate both splits");
    add_pipeline_flags(fit, fit_flags, /*with_method=*/true);

    // sweep
    CommonFlags sweep_flags;
    std::vector<double> grid;
    auto* sweep = app.add_subcommand("sweep", "fit one quantile model per grid value");
    add_pipeline_flags(sweep, sweep_flags, /*with_method=*/false);
    sweep->add_option("--sweep-grid", grid, "quantile levels to fit (default 0.50..0.90 by 0.05)")
        ->delimiter(',');

    // compare
    CommonFlags compare_flags;
    std::vector<std::string> externals;
    auto* compare = app.add_subcommand("compare", "score built-in and external forecasts");
    add_pipeline_flags(compare, compare_flags, /*with_method=*/false);
    compare->add_option("--external", externals,
                        "predictions CSV from an external method (repeatable)");

    // predict
    std::string model_path;
    std::string predict_data;
    std::string predict_out;
    auto* predict = app.add_subcommand("predict", "apply a stored model to a series");
    predict->add_option("--model", model_path, "model file from fit")->required();
    predict->add_option("--data", predict_data, "monthly series CSV")->required();
    predict->add_option("--output", predict_out, "predictions CSV to write")->required();

    // evaluate
    std::string eval_path;
    std::string eval_label = "all";
    std::string eval_out;
    double eval_plus = 0.0;
    double eval_minus = 0.0;
    auto* evaluate = app.add_subcommand("evaluate", "score a predictions CSV");
    evaluate->add_option("--predictions", eval_path, "predictions CSV")->required();
    evaluate->add_option("--p-plus", eval_plus, "price per unit of under-forecast")->required();
    evaluate->add_option("--p-minus", eval_minus, "price per unit of over-forecast")->required();
    evaluate->add_option("--label", eval_label, "split label in the report")
        ->capture_default_str();
    evaluate->add_option("--output", eval_out, "also write the report row as CSV");

    // synth
    elf::SyntheticConfig synth_config;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "write a seeded synthetic series CSV");
    synth->add_option("--output", synth_out, "series CSV to write")->required();
    synth->add_option("--seed", synth_config.seed, "generator seed")->capture_default_str();
    synth->add_option("--years", synth_config.years, "years of monthly records")
        ->capture_default_str();
    synth->add_option("--start-year", synth_config.start_year, "first emitted year")
        ->capture_default_str();
    synth->add_option("--base-load", synth_config.base_load, "long-run load level")
        ->capture_default_str();
    synth->add_option("--noise-sd", synth_config.noise_sd, "noise standard deviation")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            elf::IngestOptions options;
            options.strict = !lenient;
            if (normalize == "none") {
                options.normalize = elf::Normalize::none;
            } else if (normalize == "divide_by_max") {
                options.normalize = elf::Normalize::divide_by_max;
            } else {
                elf::fail(elf::Errc::invalid_config, "unknown normalize mode '" + normalize + "'");
            }
            const elf::LoadSeries series = elf::run_ingest(in_path, out_path, options);
            std::cout << "wrote " << series.size() << " records to " << out_path << "\n";
        } else if (*fit) {
            finalize_config(fit, fit_flags);
            const elf::FitResult result = elf::run_fit(fit_flags.config);
            print_reports({result.train, result.validation});
            std::cout << "model: " << result.model_path.string() << "\n";
        } else if (*sweep) {
            finalize_config(sweep, sweep_flags);
            if (!grid.empty()) {
                sweep_flags.config.sweep_grid = grid;
            }
            print_sweep(elf::run_sweep(sweep_flags.config));
            std::cout << "sweep: " << (sweep_flags.config.output_dir / "sweep.csv").string()
                      << "\n";
        } else if (*compare) {
            finalize_config(compare, compare_flags);
            std::vector<std::filesystem::path> files(externals.begin(), externals.end());
            const auto rows = elf::run_compare(compare_flags.config, files);
            for (const auto& row : rows) {
                std::cout << "== " << row.method << " ==\n";
                print_reports({row.train, row.validation});
            }
            std::cout << "table: " << (compare_flags.config.output_dir / "compare.csv").string()
                      << "\n";
        } else if (*predict) {
            const elf::PredictionTable table =
                elf::run_predict(model_path, predict_data, predict_out);
            std::cout << "wrote " << table.actual.size() << " predictions to " << predict_out
                      << "\n";
        } else if (*evaluate) {
            const elf::EvaluationReport report = elf::run_evaluate(
                eval_path, elf::PriceTags(eval_plus, eval_minus), eval_label);
            print_reports({report});
            if (!eval_out.empty()) {
                elf::write_report_csv(eval_out, {report});
            }
        } else if (*synth) {
            const elf::LoadSeries series = elf::make_synthetic_series(synth_config);
            elf::write_series(synth_out, series);
            std::cout << "wrote " << series.size() << " records to " << synth_out << "\n";
        }
    } catch (const elf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
    return 0;
}
