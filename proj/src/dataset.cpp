#include "elf/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace elf {

std::string to_string(const YearMonth& ym) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", ym.year, ym.month);
    return buf;
}

void MonthlyRecord::validate() const {
    if (year < 1900) {
        fail(Errc::invalid_record, "year " + std::to_string(year) + " is before 1900");
    }
    if (month < 1 || month > 12) {
        fail(Errc::invalid_record, "month " + std::to_string(month) + " outside 1..12");
    }
    if (!std::isfinite(load)) {
        fail(Errc::invalid_record, "non-finite load at " + to_string(ym()));
    }
    if (!std::isfinite(hdd) || hdd < 0.0) {
        fail(Errc::invalid_record, "hdd must be finite and >= 0 at " + to_string(ym()));
    }
    if (!std::isfinite(cdd) || cdd < 0.0) {
        fail(Errc::invalid_record, "cdd must be finite and >= 0 at " + to_string(ym()));
    }
}

LoadSeries::LoadSeries(std::vector<MonthlyRecord> records) : records_(std::move(records)) {
    for (const auto& rec : records_) {
        rec.validate();
    }
    std::sort(records_.begin(), records_.end(),
              [](const MonthlyRecord& a, const MonthlyRecord& b) { return a.ym() < b.ym(); });
    for (std::size_t i = 1; i < records_.size(); ++i) {
        if (records_[i].ym() == records_[i - 1].ym()) {
            fail(Errc::duplicate_month, "two records for " + to_string(records_[i].ym()));
        }
    }
}

const MonthlyRecord* LoadSeries::find(int year, int month) const noexcept {
    const YearMonth key{year, month};
    auto it = std::lower_bound(records_.begin(), records_.end(), key,
                               [](const MonthlyRecord& r, const YearMonth& k) { return r.ym() < k; });
    if (it == records_.end() || !(it->ym() == key)) {
        return nullptr;
    }
    return &*it;
}

SupervisedSet build_supervised(const LoadSeries& series, int lead_months, int lag_years,
                               bool include_intercept) {
    if (lead_months < 1) {
        fail(Errc::invalid_config, "lead_months must be >= 1");
    }
    if (lag_years < 1) {
        fail(Errc::invalid_config, "lag_years must be >= 1");
    }
    if (lead_months % 12 != 0) {
        fail(Errc::non_monthly_lead,
             "lead of " + std::to_string(lead_months) + " months is not a whole number of years");
    }
    if (series.empty()) {
        fail(Errc::empty_result, "series is empty");
    }

    const int lead_years = lead_months / 12;

    // Month id -> load, for O(1) lag lookups.
    std::unordered_map<int, double> load_at;
    load_at.reserve(series.size());
    for (const auto& rec : series.records()) {
        load_at.emplace(rec.year * 12 + (rec.month - 1), rec.load);
    }

    const int n_features = lag_years + 2 + (include_intercept ? 1 : 0);
    std::vector<double> rows;
    std::vector<double> targets;
    std::vector<YearMonth> index;

    for (const auto& rec : series.records()) {
        const int id = rec.year * 12 + (rec.month - 1);
        bool complete = true;
        for (int k = lead_years; k < lead_years + lag_years; ++k) {
            if (!load_at.contains(id - 12 * k)) {
                complete = false;
                break;
            }
        }
        if (!complete) {
            continue;
        }
        for (int k = lead_years; k < lead_years + lag_years; ++k) {
            rows.push_back(load_at.at(id - 12 * k));
        }
        rows.push_back(rec.hdd);
        rows.push_back(rec.cdd);
        if (include_intercept) {
            rows.push_back(1.0);
        }
        targets.push_back(rec.load);
        index.push_back(rec.ym());
    }

    if (targets.empty()) {
        fail(Errc::empty_result, "no target month has a complete " + std::to_string(lag_years) +
                                     "-year lag window");
    }

    SupervisedSet set;
    const auto n = static_cast<Eigen::Index>(targets.size());
    set.targets = Eigen::Map<const Eigen::VectorXd>(targets.data(), n);
    set.design = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                Eigen::RowMajor>>(rows.data(), n, n_features);
    set.index = std::move(index);
    set.lead_months = lead_months;
    set.lag_years = lag_years;
    set.has_intercept = include_intercept;

    set.feature_names.reserve(static_cast<std::size_t>(n_features));
    for (int k = lead_years; k < lead_years + lag_years; ++k) {
        set.feature_names.push_back("load_lag_" + std::to_string(k) + "y");
    }
    set.feature_names.emplace_back("hdd");
    set.feature_names.emplace_back("cdd");
    if (include_intercept) {
        set.feature_names.emplace_back("intercept");
    }
    return set;
}

std::pair<SupervisedSet, SupervisedSet> chronological_split(const SupervisedSet& set,
                                                            const SplitSpec& spec) {
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        fail(Errc::invalid_config, "train_fraction must lie strictly between 0 and 1");
    }
    const Eigen::Index n = set.rows();
    if (n == 0) {
        fail(Errc::empty_result, "cannot split an empty set");
    }
    const auto n_train =
        static_cast<Eigen::Index>(std::floor(spec.train_fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train == n) {
        fail(Errc::degenerate_split, "split of " + std::to_string(n) + " rows at fraction " +
                                         std::to_string(spec.train_fraction) +
                                         " leaves one side empty");
    }

    auto slice = [&](Eigen::Index begin, Eigen::Index count) {
        SupervisedSet part;
        part.targets = set.targets.segment(begin, count);
        part.design = set.design.middleRows(begin, count);
        part.feature_names = set.feature_names;
        part.index.assign(set.index.begin() + begin, set.index.begin() + begin + count);
        part.lead_months = set.lead_months;
        part.lag_years = set.lag_years;
        part.has_intercept = set.has_intercept;
        return part;
    };
    return {slice(0, n_train), slice(n_train, n - n_train)};
}

}  // namespace elf
