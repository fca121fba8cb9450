#include <doctest.h>

#include <algorithm>
#include <limits>
#include <vector>

#include "elf/dataset.hpp"

using namespace elf;

namespace {

// Jan 2000 .. Sep 2015 inclusive, with loads that encode their own month so
// lag lookups can be checked by recomputing the value.
LoadSeries paper_window_series() {
    std::vector<MonthlyRecord> records;
    for (int year = 2000; year <= 2015; ++year) {
        for (int month = 1; month <= 12; ++month) {
            if (year == 2015 && month > 9) {
                break;
            }
            records.push_back({year, month, year + month / 100.0, 10.0 * month, 5.0 * month});
        }
    }
    return LoadSeries(std::move(records));
}

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("records and series enforce their invariants") {
    CHECK_NOTHROW((MonthlyRecord{2001, 12, -3.5, 0.0, 0.0}.validate()));
    CHECK_THROWS_AS((MonthlyRecord{1899, 1, 1.0, 0.0, 0.0}.validate()), Error);
    CHECK_THROWS_AS((MonthlyRecord{2001, 0, 1.0, 0.0, 0.0}.validate()), Error);
    CHECK_THROWS_AS((MonthlyRecord{2001, 13, 1.0, 0.0, 0.0}.validate()), Error);
    CHECK_THROWS_AS(
        (MonthlyRecord{2001, 1, std::numeric_limits<double>::infinity(), 0.0, 0.0}.validate()),
        Error);
    CHECK_THROWS_AS((MonthlyRecord{2001, 1, 1.0, -1.0, 0.0}.validate()), Error);
    CHECK_THROWS_AS((MonthlyRecord{2001, 1, 1.0, 0.0, -1.0}.validate()), Error);

    // construction sorts
    LoadSeries series({{2001, 2, 2.0, 0, 0}, {2000, 5, 1.0, 0, 0}});
    CHECK(series.records().front().year == 2000);

    CHECK_THROWS_WITH_AS(LoadSeries({{2000, 5, 1.0, 0, 0}, {2000, 5, 2.0, 0, 0}}),
                         doctest::Contains("2000-05"), Error);
    try {
        LoadSeries({{2000, 5, 1.0, 0, 0}, {2000, 5, 2.0, 0, 0}});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::duplicate_month);
    }
}

TEST_CASE("one-year lead with 11 lag years reproduces the canonical window") {
    const LoadSeries series = paper_window_series();
    CHECK(series.size() == 189);

    const SupervisedSet set = build_supervised(series, 12, 11, true);

    // Independent row count: a month is forecastable iff all 11 same-month
    // prior years are present.
    int expected_rows = 0;
    for (const auto& rec : series.records()) {
        bool complete = true;
        for (int k = 1; k <= 11; ++k) {
            if (series.find(rec.year - k, rec.month) == nullptr) {
                complete = false;
            }
        }
        if (complete) {
            ++expected_rows;
        }
    }
    CHECK(expected_rows == 57);
    CHECK(set.rows() == expected_rows);
    CHECK((set.index.front() == YearMonth{2011, 1}));
    CHECK((set.index.back() == YearMonth{2015, 9}));

    // January 2011 row: loads of Jan 2010 .. Jan 2000, then hdd/cdd of
    // Jan 2011, then the intercept.
    CHECK(set.cols() == 14);
    for (int k = 0; k < 11; ++k) {
        CHECK(set.design(0, k) == series.find(2010 - k, 1)->load);
    }
    CHECK(set.design(0, 11) == series.find(2011, 1)->hdd);
    CHECK(set.design(0, 12) == series.find(2011, 1)->cdd);
    CHECK(set.design(0, 13) == 1.0);
    CHECK(set.targets[0] == series.find(2011, 1)->load);

    CHECK(set.feature_names.front() == "load_lag_1y");
    CHECK(set.feature_names[10] == "load_lag_11y");
    CHECK(set.feature_names[11] == "hdd");
    CHECK(set.feature_names[12] == "cdd");
    CHECK(set.feature_names.back() == "intercept");

    SUBCASE("every lag value matches a direct series lookup") {
        for (Eigen::Index i = 0; i < set.rows(); ++i) {
            const auto& ym = set.index[static_cast<std::size_t>(i)];
            for (int k = 1; k <= 11; ++k) {
                CHECK(set.design(i, k - 1) == series.find(ym.year - k, ym.month)->load);
            }
        }
    }

    SUBCASE("rebuilding is bit-identical") {
        const SupervisedSet again = build_supervised(series, 12, 11, true);
        CHECK(again.design == set.design);
        CHECK(again.targets == set.targets);
        CHECK(again.index == set.index);
    }

    SUBCASE("no intercept drops the trailing column") {
        const SupervisedSet bare = build_supervised(series, 12, 11, false);
        CHECK(bare.cols() == 13);
        CHECK(bare.feature_names.back() == "cdd");
        CHECK_FALSE(bare.has_intercept);
    }
}

TEST_CASE("twelve consecutive same-month records give exactly one row") {
    std::vector<MonthlyRecord> records;
    for (int year = 2000; year < 2012; ++year) {
        records.push_back({year, 1, static_cast<double>(year), 3.0, 1.0});
    }
    const SupervisedSet set = build_supervised(LoadSeries(std::move(records)), 12, 11, true);
    CHECK(set.rows() == 1);
    CHECK((set.index.front() == YearMonth{2011, 1}));
}

TEST_CASE("a two-year lead shifts the lag window back") {
    const LoadSeries series = paper_window_series();
    const SupervisedSet set = build_supervised(series, 24, 3, true);
    CHECK(set.feature_names.front() == "load_lag_2y");
    CHECK(set.feature_names[2] == "load_lag_4y");
    // first target needs years Y-2..Y-4 present
    CHECK((set.index.front() == YearMonth{2004, 1}));
    CHECK(set.design(0, 0) == series.find(2002, 1)->load);
    CHECK(set.design(0, 2) == series.find(2000, 1)->load);
}

TEST_CASE("rows with missing lags are dropped, never imputed") {
    std::vector<MonthlyRecord> records;
    for (int year = 2000; year <= 2014; ++year) {
        for (int month = 1; month <= 12; ++month) {
            if (year == 2005 && month == 3) {
                continue;  // hole
            }
            records.push_back({year, month, year + month / 100.0, 1.0, 1.0});
        }
    }
    const LoadSeries series(std::move(records));
    const SupervisedSet set = build_supervised(series, 12, 4, true);

    int expected = 0;
    for (const auto& rec : series.records()) {
        bool complete = true;
        for (int k = 1; k <= 4; ++k) {
            if (series.find(rec.year - k, rec.month) == nullptr) {
                complete = false;
            }
        }
        if (complete) {
            ++expected;
        }
    }
    CHECK(set.rows() == expected);
    // March targets 2006..2009 need the missing March 2005
    for (const auto& ym : set.index) {
        CHECK_FALSE((ym.month == 3 && ym.year >= 2006 && ym.year <= 2009));
    }
    CHECK_FALSE(std::any_of(set.index.begin(), set.index.end(),
                            [](const YearMonth& ym) { return ym == YearMonth{2005, 3}; }));
}

TEST_CASE("feature-build error cases") {
    const LoadSeries series = paper_window_series();
    SUBCASE("non-annual lead") {
        try {
            build_supervised(series, 13, 11, true);
            FAIL("expected NonMonthlyLead");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::non_monthly_lead);
        }
    }
    SUBCASE("no complete window") {
        std::vector<MonthlyRecord> records;
        for (int year = 2000; year < 2005; ++year) {
            records.push_back({year, 6, 1.0, 0, 0});
        }
        try {
            build_supervised(LoadSeries(std::move(records)), 12, 11, true);
            FAIL("expected EmptyResult");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::empty_result);
        }
    }
    SUBCASE("empty series") {
        try {
            build_supervised(LoadSeries{}, 12, 11, true);
            FAIL("expected EmptyResult");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::empty_result);
        }
    }
    SUBCASE("bad lead or lag counts") {
        CHECK_THROWS_AS(build_supervised(series, 0, 11, true), Error);
        CHECK_THROWS_AS(build_supervised(series, 12, 0, true), Error);
    }
}

TEST_CASE("chronological split") {
    const LoadSeries series = paper_window_series();
    const SupervisedSet set = build_supervised(series, 12, 11, true);
    REQUIRE(set.rows() == 57);

    SUBCASE("57 rows at 0.6 split 34/23") {
        const auto [train, validation] = chronological_split(set, SplitSpec{0.6});
        CHECK(train.rows() == 34);
        CHECK(validation.rows() == 23);
        CHECK(train.index.front() == set.index.front());
        CHECK(validation.index.back() == set.index.back());
        CHECK(train.feature_names == set.feature_names);
        CHECK(validation.feature_names == set.feature_names);

        // concatenating the halves reproduces the input exactly
        Eigen::MatrixXd joined(set.rows(), set.cols());
        joined << train.design, validation.design;
        CHECK(joined == set.design);
        Eigen::VectorXd targets(set.rows());
        targets << train.targets, validation.targets;
        CHECK(targets == set.targets);
        std::vector<YearMonth> index = train.index;
        index.insert(index.end(), validation.index.begin(), validation.index.end());
        CHECK(index == set.index);
    }

    SUBCASE("boundary fractions") {
        SupervisedSet two = set;
        two.targets = set.targets.head(2);
        two.design = set.design.topRows(2);
        two.index.assign(set.index.begin(), set.index.begin() + 2);
        auto [a, b] = chronological_split(two, SplitSpec{0.5});
        CHECK(a.rows() == 1);
        CHECK(b.rows() == 1);

        SupervisedSet ten = set;
        ten.targets = set.targets.head(10);
        ten.design = set.design.topRows(10);
        ten.index.assign(set.index.begin(), set.index.begin() + 10);
        auto [c, d] = chronological_split(ten, SplitSpec{0.9});
        CHECK(c.rows() == 9);
        CHECK(d.rows() == 1);
    }

    SUBCASE("degenerate splits are rejected") {
        SupervisedSet one = set;
        one.targets = set.targets.head(1);
        one.design = set.design.topRows(1);
        one.index.assign(set.index.begin(), set.index.begin() + 1);
        try {
            chronological_split(one, SplitSpec{0.6});
            FAIL("expected DegenerateSplit");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::degenerate_split);
        }
        try {
            chronological_split(set, SplitSpec{0.001});
            FAIL("expected DegenerateSplit");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::degenerate_split);
        }
        CHECK_THROWS_AS(chronological_split(set, SplitSpec{0.0}), Error);
        CHECK_THROWS_AS(chronological_split(set, SplitSpec{1.0}), Error);
    }
}

}  // TEST_SUITE
