#include "elf/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace elf {

namespace {

constexpr const char* kSeriesHeader = "date,load,hdd,cdd";
constexpr const char* kPredictionsHeader = "date,actual,forecast,residual";

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_double(const std::string& token, double& out) {
    const std::string t = trim(token);
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && first != last;
}

bool parse_int(const std::string& token, int& out) {
    const std::string t = trim(token);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size() && !t.empty();
}

// Strict YYYY-MM.
bool parse_year_month(const std::string& token, YearMonth& out) {
    const std::string t = trim(token);
    if (t.size() != 7 || t[4] != '-') {
        return false;
    }
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u}) {
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
            return false;
        }
    }
    out.year = (t[0] - '0') * 1000 + (t[1] - '0') * 100 + (t[2] - '0') * 10 + (t[3] - '0');
    out.month = (t[5] - '0') * 10 + (t[6] - '0');
    return out.month >= 1 && out.month <= 12;
}

// Lines with the trailing '\r' of CRLF files stripped. Returns false at EOF.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) {
        return false;
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return true;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(Errc::io_error, "cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        fail(Errc::io_error, "write to " + path.string() + " failed");
    }
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

LoadSeries read_series(const std::filesystem::path& path, const IngestOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(Errc::io_error, "cannot open " + path.string() + " for reading");
    }

    std::string line;
    if (!next_line(in, line)) {
        fail(Errc::empty_file, path.string() + " is empty");
    }
    if (line != kSeriesHeader) {
        fail(Errc::parse_error,
             path.string() + ":1: expected header '" + kSeriesHeader + "', got '" + line + "'");
    }

    std::vector<MonthlyRecord> records;
    long line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        std::string problem;
        MonthlyRecord rec;
        const auto fields = split(line, ',');
        YearMonth ym;
        if (fields.size() != 4) {
            problem = "expected 4 fields, got " + std::to_string(fields.size());
        } else if (!parse_year_month(fields[0], ym)) {
            problem = "bad date '" + fields[0] + "' (want YYYY-MM)";
        } else if (!parse_double(fields[1], rec.load)) {
            problem = "bad load '" + fields[1] + "'";
        } else if (!parse_double(fields[2], rec.hdd)) {
            problem = "bad hdd '" + fields[2] + "'";
        } else if (!parse_double(fields[3], rec.cdd)) {
            problem = "bad cdd '" + fields[3] + "'";
        } else {
            rec.year = ym.year;
            rec.month = ym.month;
            try {
                rec.validate();
            } catch (const Error& e) {
                problem = e.what();
            }
        }
        if (!problem.empty()) {
            if (options.strict) {
                fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) + ": " + problem);
            }
            std::cerr << "warning: skipping " << path.string() << ":" << line_no << ": " << problem
                      << "\n";
            continue;
        }
        records.push_back(rec);
    }

    if (records.empty()) {
        fail(Errc::empty_file, path.string() + " holds no data rows");
    }

    LoadSeries series(std::move(records));  // sorts, rejects duplicate months

    if (options.normalize == Normalize::divide_by_max) {
        double peak = 0.0;
        for (const auto& rec : series.records()) {
            peak = std::max(peak, rec.load);
        }
        if (!(peak > 0.0)) {
            fail(Errc::invalid_config, "divide_by_max needs a positive peak load");
        }
        std::vector<MonthlyRecord> scaled = series.records();
        for (auto& rec : scaled) {
            rec.load /= peak;
        }
        series = LoadSeries(std::move(scaled));
    }
    return series;
}

void write_series(const std::filesystem::path& path, const LoadSeries& series) {
    auto out = open_for_write(path);
    out << kSeriesHeader << "\n";
    for (const auto& rec : series.records()) {
        out << to_string(rec.ym()) << ',' << format_double(rec.load) << ','
            << format_double(rec.hdd) << ',' << format_double(rec.cdd) << "\n";
    }
    finish_write(out, path);
}

void write_predictions(const std::filesystem::path& path, const std::vector<YearMonth>& index,
                       const Eigen::VectorXd& actual, const Eigen::VectorXd& forecast) {
    if (std::cmp_not_equal(index.size(), actual.size()) || actual.size() != forecast.size()) {
        fail(Errc::dimension_mismatch, "index, actual and forecast lengths differ");
    }
    auto out = open_for_write(path);
    out << kPredictionsHeader << "\n";
    for (Eigen::Index i = 0; i < actual.size(); ++i) {
        out << to_string(index[static_cast<std::size_t>(i)]) << ',' << format_double(actual[i])
            << ',' << format_double(forecast[i]) << ','
            << format_double(actual[i] - forecast[i]) << "\n";
    }
    finish_write(out, path);
}

PredictionTable read_predictions(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(Errc::io_error, "cannot open " + path.string() + " for reading");
    }
    std::string line;
    if (!next_line(in, line)) {
        fail(Errc::empty_file, path.string() + " is empty");
    }
    if (line != kPredictionsHeader) {
        fail(Errc::parse_error, path.string() + ":1: expected header '" + kPredictionsHeader +
                                    "', got '" + line + "'");
    }

    std::vector<YearMonth> index;
    std::vector<double> actual;
    std::vector<double> forecast;
    long line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        const auto fields = split(line, ',');
        YearMonth ym;
        double a = 0.0;
        double f = 0.0;
        double r = 0.0;
        if (fields.size() != 4 || !parse_year_month(fields[0], ym) ||
            !parse_double(fields[1], a) || !parse_double(fields[2], f) ||
            !parse_double(fields[3], r)) {
            fail(Errc::parse_error, path.string() + ":" + std::to_string(line_no) +
                                        ": malformed prediction row '" + line + "'");
        }
        index.push_back(ym);
        actual.push_back(a);
        forecast.push_back(f);
    }

    PredictionTable table;
    table.index = std::move(index);
    const auto n = static_cast<Eigen::Index>(actual.size());
    table.actual = Eigen::Map<const Eigen::VectorXd>(actual.data(), n);
    table.forecast = Eigen::Map<const Eigen::VectorXd>(forecast.data(), n);
    return table;
}

ModelFile to_model_file(const QuantileModel& model, const SolverOptions& options,
                        int lead_months, int lag_years, bool include_intercept) {
    ModelFile file;
    file.method = "qr";
    file.tau = model.tau.value();
    file.feature_names = model.feature_names;
    file.coefficients = model.coefficients;
    file.objective_value = model.objective_value;
    file.lead_months = lead_months;
    file.lag_years = lag_years;
    file.include_intercept = include_intercept;
    file.solver_options = options;
    return file;
}

ModelFile to_model_file(const LinearModel& model, int lead_months, int lag_years,
                        bool include_intercept) {
    ModelFile file;
    file.method = "mlr";
    file.feature_names = model.feature_names;
    file.coefficients = model.coefficients;
    file.objective_value = model.sse;
    file.lead_months = lead_months;
    file.lag_years = lag_years;
    file.include_intercept = include_intercept;
    return file;
}

void write_model(const std::filesystem::path& path, const ModelFile& model) {
    if (std::cmp_not_equal(model.feature_names.size(), model.coefficients.size())) {
        fail(Errc::dimension_mismatch, "feature_names and coefficients lengths differ");
    }
    auto out = open_for_write(path);
    out << "method: " << model.method << "\n";
    if (model.tau) {
        out << "tau: " << format_double(*model.tau) << "\n";
    }
    out << "lead_months: " << model.lead_months << "\n";
    out << "lag_years: " << model.lag_years << "\n";
    out << "include_intercept: " << (model.include_intercept ? 1 : 0) << "\n";
    out << "features: ";
    for (std::size_t i = 0; i < model.feature_names.size(); ++i) {
        out << (i ? "," : "") << model.feature_names[i];
    }
    out << "\n";
    out << "coefficients: ";
    for (Eigen::Index i = 0; i < model.coefficients.size(); ++i) {
        out << (i ? "," : "") << format_double(model.coefficients[i]);
    }
    out << "\n";
    out << "objective_value: " << format_double(model.objective_value) << "\n";
    if (model.solver_options) {
        out << "feasibility_tolerance: " << format_double(model.solver_options->feasibility_tolerance)
            << "\n";
        out << "max_pivots: " << model.solver_options->max_pivots << "\n";
        out << "tie_break: " << model.solver_options->tie_break << "\n";
    }
    finish_write(out, path);
}

ModelFile read_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(Errc::io_error, "cannot open " + path.string() + " for reading");
    }

    std::map<std::string, std::string> kv;
    std::string line;
    long line_no = 0;
    while (next_line(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const std::size_t pos = line.find(':');
        if (pos == std::string::npos) {
            fail(Errc::parse_error,
                 path.string() + ":" + std::to_string(line_no) + ": expected 'key: value'");
        }
        kv[trim(line.substr(0, pos))] = trim(line.substr(pos + 1));
    }

    auto require = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) {
            fail(Errc::parse_error, path.string() + ": missing field '" + key + "'");
        }
        return it->second;
    };

    ModelFile model;
    model.method = require("method");
    if (model.method != "qr" && model.method != "mlr") {
        fail(Errc::parse_error, path.string() + ": unknown method '" + model.method + "'");
    }

    auto as_double = [&](const std::string& key) {
        double v = 0.0;
        if (!parse_double(require(key), v)) {
            fail(Errc::parse_error, path.string() + ": bad number in field '" + key + "'");
        }
        return v;
    };
    auto as_int = [&](const std::string& key) {
        int v = 0;
        if (!parse_int(require(key), v)) {
            fail(Errc::parse_error, path.string() + ": bad integer in field '" + key + "'");
        }
        return v;
    };

    if (model.method == "qr") {
        model.tau = as_double("tau");
    }
    model.lead_months = as_int("lead_months");
    model.lag_years = as_int("lag_years");
    model.include_intercept = as_int("include_intercept") != 0;
    model.objective_value = as_double("objective_value");

    model.feature_names = split(require("features"), ',');
    for (auto& name : model.feature_names) {
        name = trim(name);
    }
    const auto coef_tokens = split(require("coefficients"), ',');
    if (coef_tokens.size() != model.feature_names.size()) {
        fail(Errc::parse_error, path.string() + ": " + std::to_string(coef_tokens.size()) +
                                    " coefficients against " +
                                    std::to_string(model.feature_names.size()) + " features");
    }
    model.coefficients.resize(static_cast<Eigen::Index>(coef_tokens.size()));
    for (std::size_t i = 0; i < coef_tokens.size(); ++i) {
        if (!parse_double(coef_tokens[i], model.coefficients[static_cast<Eigen::Index>(i)])) {
            fail(Errc::parse_error, path.string() + ": bad coefficient '" + coef_tokens[i] + "'");
        }
    }

    if (model.method == "qr") {
        SolverOptions options;
        if (kv.contains("feasibility_tolerance")) {
            options.feasibility_tolerance = as_double("feasibility_tolerance");
        }
        if (kv.contains("max_pivots")) {
            options.max_pivots = as_int("max_pivots");
        }
        if (kv.contains("tie_break")) {
            options.tie_break = require("tie_break");
        }
        model.solver_options = options;
    }
    return model;
}

}  // namespace elf
