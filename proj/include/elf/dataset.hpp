#pragma once

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

#include "elf/errors.hpp"

namespace elf {

/// Calendar month key, ordered chronologically.
struct YearMonth {
    int year = 0;
    int month = 0;

    friend bool operator==(const YearMonth&, const YearMonth&) = default;
    friend auto operator<=>(const YearMonth&, const YearMonth&) = default;
};

/// "YYYY-MM" with a zero-padded month.
std::string to_string(const YearMonth& ym);

/// One observed month: energy load plus the month's total heating and
/// cooling degree days.
struct MonthlyRecord {
    int year = 0;       // calendar year, >= 1900
    int month = 0;      // 1..12
    double load = 0.0;  // finite; GWh or dimensionless after normalization
    double hdd = 0.0;   // >= 0
    double cdd = 0.0;   // >= 0

    /// Throws InvalidRecord when a field violates its range.
    void validate() const;

    YearMonth ym() const noexcept { return {year, month}; }
};

/// Monthly records kept strictly increasing by (year, month). Missing
/// months are allowed in storage; they only matter once lagged features
/// are built, where any target with an incomplete window is dropped.
class LoadSeries {
public:
    LoadSeries() = default;

    /// Sorts the records chronologically and validates each one.
    /// Throws DuplicateMonth when two records share a (year, month).
    explicit LoadSeries(std::vector<MonthlyRecord> records);

    const std::vector<MonthlyRecord>& records() const noexcept { return records_; }
    bool empty() const noexcept { return records_.empty(); }
    std::size_t size() const noexcept { return records_.size(); }

    /// Lookup by calendar month; nullptr when absent.
    const MonthlyRecord* find(int year, int month) const noexcept;

private:
    std::vector<MonthlyRecord> records_;
};

/// Lagged regression problem: one row per forecastable month. A row holds
/// the same-month loads of prior years, the target month's degree days and
/// an optional trailing intercept column; the target is that month's load.
struct SupervisedSet {
    Eigen::VectorXd targets;                 // y, one entry per row
    Eigen::MatrixXd design;                  // row i pairs with targets[i]
    std::vector<std::string> feature_names;  // one label per design column
    std::vector<YearMonth> index;            // target month per row
    int lead_months = 12;
    int lag_years = 11;
    bool has_intercept = true;

    Eigen::Index rows() const noexcept { return targets.size(); }
    Eigen::Index cols() const noexcept { return design.cols(); }
};

struct SplitSpec {
    double train_fraction = 0.6;  // in (0, 1)
};

/// Builds the supervised problem from a series.
///
/// With lead = 12*L months, the features of a target month (Y, m) are the
/// loads of (Y-k, m) for k = L .. L+lag_years-1 (newest first), the actual
/// hdd/cdd of (Y, m), and a trailing 1.0 when include_intercept is set.
/// Targets with any missing lag month are omitted, never imputed.
///
/// Throws NonMonthlyLead when lead_months is not a positive multiple of 12
/// (same-month lags would be ambiguous otherwise), EmptyResult when no
/// target has a complete lag window.
SupervisedSet build_supervised(const LoadSeries& series, int lead_months, int lag_years,
                               bool include_intercept = true);

/// Splits chronologically: the first floor(train_fraction * N) rows form
/// the training set, the rest validation. No shuffling. Throws
/// DegenerateSplit when either side would be empty.
std::pair<SupervisedSet, SupervisedSet> chronological_split(const SupervisedSet& set,
                                                            const SplitSpec& spec);

}  // namespace elf
