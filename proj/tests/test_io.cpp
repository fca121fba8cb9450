#include <doctest.h>

#include <fstream>
#include <string>

#include "elf/io.hpp"
#include "elf/synthetic.hpp"
#include "temp_dir.hpp"

using namespace elf;
using elf::testing::TempDir;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out);
    out << text;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("series round-trip is exact") {
    TempDir dir("series");
    SyntheticConfig config;
    config.years = 4;
    config.seed = 9;
    const LoadSeries original = make_synthetic_series(config);

    write_series(dir.file("series.csv"), original);
    const LoadSeries reread = read_series(dir.file("series.csv"));

    REQUIRE(reread.size() == original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        CHECK(reread.records()[i].ym() == original.records()[i].ym());
        CHECK(reread.records()[i].load == original.records()[i].load);
        CHECK(reread.records()[i].hdd == original.records()[i].hdd);
        CHECK(reread.records()[i].cdd == original.records()[i].cdd);
    }

    SUBCASE("write after read reproduces the file byte for byte") {
        write_series(dir.file("series2.csv"), reread);
        CHECK(slurp(dir.file("series2.csv")) == slurp(dir.file("series.csv")));
    }

    SUBCASE("awkward doubles survive") {
        const LoadSeries tricky({{2000, 1, 1.0 / 3.0, 0.1, 1e-17},
                                 {2000, 2, 12345.678901234567, 9.999999999999999e+10, 0.0}});
        write_series(dir.file("tricky.csv"), tricky);
        const LoadSeries back = read_series(dir.file("tricky.csv"));
        CHECK(back.records()[0].load == 1.0 / 3.0);
        CHECK(back.records()[0].cdd == 1e-17);
        CHECK(back.records()[1].load == 12345.678901234567);
        CHECK(back.records()[1].hdd == 9.999999999999999e+10);
    }
}

TEST_CASE("series parsing") {
    TempDir dir("parse");

    SUBCASE("crlf line endings are accepted") {
        spit(dir.file("crlf.csv"), "date,load,hdd,cdd\r\n2001-03,5.5,10,0\r\n");
        const LoadSeries s = read_series(dir.file("crlf.csv"));
        REQUIRE(s.size() == 1);
        CHECK(s.records()[0].load == 5.5);
        CHECK((s.records()[0].ym() == YearMonth{2001, 3}));
    }

    SUBCASE("rows are sorted by month") {
        spit(dir.file("unsorted.csv"),
             "date,load,hdd,cdd\n2001-03,3,0,0\n2000-12,1,0,0\n2001-01,2,0,0\n");
        const LoadSeries s = read_series(dir.file("unsorted.csv"));
        CHECK((s.records()[0].ym() == YearMonth{2000, 12}));
        CHECK((s.records()[2].ym() == YearMonth{2001, 3}));
    }

    SUBCASE("strict mode reports the offending line") {
        spit(dir.file("bad.csv"), "date,load,hdd,cdd\n2001-01,1,0,0\n2001-02,oops,0,0\n");
        try {
            read_series(dir.file("bad.csv"));
            FAIL("expected ParseError");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::parse_error);
            CHECK(std::string(e.what()).find(":3:") != std::string::npos);
        }
    }

    SUBCASE("lenient mode skips bad rows") {
        spit(dir.file("bad.csv"),
             "date,load,hdd,cdd\n2001-01,1,0,0\nnot,a,row,at all\n2001-02,2,0,0\n");
        IngestOptions options;
        options.strict = false;
        const LoadSeries s = read_series(dir.file("bad.csv"), options);
        CHECK(s.size() == 2);
    }

    SUBCASE("date format is strict") {
        spit(dir.file("date.csv"), "date,load,hdd,cdd\n2001-1,1,0,0\n");
        CHECK_THROWS_AS(read_series(dir.file("date.csv")), Error);
    }

    SUBCASE("duplicate months are rejected") {
        spit(dir.file("dup.csv"), "date,load,hdd,cdd\n2001-01,1,0,0\n2001-01,2,0,0\n");
        try {
            read_series(dir.file("dup.csv"));
            FAIL("expected DuplicateMonth");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::duplicate_month);
        }
    }

    SUBCASE("empty and header-only files") {
        spit(dir.file("empty.csv"), "");
        try {
            read_series(dir.file("empty.csv"));
            FAIL("expected EmptyFile");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::empty_file);
        }
        spit(dir.file("header.csv"), "date,load,hdd,cdd\n");
        CHECK_THROWS_AS(read_series(dir.file("header.csv")), Error);
    }

    SUBCASE("wrong header") {
        spit(dir.file("hdr.csv"), "month,load,hdd,cdd\n2001-01,1,0,0\n");
        CHECK_THROWS_AS(read_series(dir.file("hdr.csv")), Error);
    }

    SUBCASE("missing file") {
        try {
            read_series(dir.file("nope.csv"));
            FAIL("expected IoError");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::io_error);
        }
    }
}

TEST_CASE("normalization") {
    TempDir dir("norm");
    spit(dir.file("n.csv"), "date,load,hdd,cdd\n2000-01,2,0,0\n2000-02,4,0,0\n2000-03,8,0,0\n");
    IngestOptions options;
    options.normalize = Normalize::divide_by_max;
    const LoadSeries s = read_series(dir.file("n.csv"), options);
    CHECK(s.records()[0].load == 0.25);
    CHECK(s.records()[1].load == 0.5);
    CHECK(s.records()[2].load == 1.0);

    SUBCASE("ordering and argmax are preserved") {
        SyntheticConfig config;
        config.years = 3;
        config.seed = 4;
        const LoadSeries raw = make_synthetic_series(config);
        write_series(dir.file("raw.csv"), raw);
        const LoadSeries scaled = read_series(dir.file("raw.csv"), options);
        for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
            CHECK((raw.records()[i].load < raw.records()[i + 1].load) ==
                  (scaled.records()[i].load < scaled.records()[i + 1].load));
        }
    }
}

TEST_CASE("prediction files") {
    TempDir dir("pred");

    SUBCASE("empty input writes only the header") {
        write_predictions(dir.file("empty.csv"), {}, Eigen::VectorXd(), Eigen::VectorXd());
        CHECK(slurp(dir.file("empty.csv")) == "date,actual,forecast,residual\n");
        const PredictionTable t = read_predictions(dir.file("empty.csv"));
        CHECK(t.index.empty());
    }

    SUBCASE("single pair with its residual") {
        write_predictions(dir.file("one.csv"), {{2011, 1}}, Eigen::VectorXd::Constant(1, 100.0),
                          Eigen::VectorXd::Constant(1, 95.0));
        CHECK(slurp(dir.file("one.csv")) == "date,actual,forecast,residual\n2011-01,100,95,5\n");
    }

    SUBCASE("round-trip returns identical vectors") {
        std::vector<YearMonth> index{{2010, 12}, {2011, 1}, {2011, 2}};
        Eigen::VectorXd actual(3);
        actual << 1.0 / 3.0, -2.25, 1e300;
        Eigen::VectorXd forecast(3);
        forecast << 0.1, -2.25, 99.75;
        write_predictions(dir.file("rt.csv"), index, actual, forecast);
        const PredictionTable t = read_predictions(dir.file("rt.csv"));
        CHECK(t.index == index);
        CHECK(t.actual == actual);
        CHECK(t.forecast == forecast);
    }

    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(write_predictions(dir.file("x.csv"), {{2011, 1}}, Eigen::VectorXd(),
                                          Eigen::VectorXd()),
                        Error);
    }

    SUBCASE("malformed rows are rejected") {
        spit(dir.file("bad.csv"), "date,actual,forecast,residual\n2011-01,1,2\n");
        CHECK_THROWS_AS(read_predictions(dir.file("bad.csv")), Error);
    }
}

TEST_CASE("model files") {
    TempDir dir("model");

    SUBCASE("quantile model round-trip") {
        QuantileModel model{Eigen::Vector3d(0.123456789012345678, -7.25, 3.0e-9), Tau(0.7),
                            {"load_lag_1y", "hdd", "intercept"}, 42.125};
        SolverOptions options;
        options.max_pivots = 500;
        const ModelFile file = to_model_file(model, options, 12, 1, true);
        write_model(dir.file("m.txt"), file);

        const ModelFile back = read_model(dir.file("m.txt"));
        CHECK(back.method == "qr");
        REQUIRE(back.tau.has_value());
        CHECK(*back.tau == 0.7);
        CHECK(back.coefficients == model.coefficients);
        CHECK(back.feature_names == model.feature_names);
        CHECK(back.objective_value == 42.125);
        CHECK(back.lead_months == 12);
        CHECK(back.lag_years == 1);
        CHECK(back.include_intercept);
        REQUIRE(back.solver_options.has_value());
        CHECK(back.solver_options->max_pivots == 500);
        CHECK(back.solver_options->feasibility_tolerance == options.feasibility_tolerance);
        CHECK(back.solver_options->tie_break == "lowest-vertex");
    }

    SUBCASE("least-squares model omits tau") {
        LinearModel model{Eigen::Vector2d(1.5, -0.25), {"x", "intercept"}, 0.125};
        write_model(dir.file("mlr.txt"), to_model_file(model, 12, 1, true));
        const std::string text = slurp(dir.file("mlr.txt"));
        CHECK(text.find("tau") == std::string::npos);
        const ModelFile back = read_model(dir.file("mlr.txt"));
        CHECK(back.method == "mlr");
        CHECK_FALSE(back.tau.has_value());
        CHECK(back.coefficients == model.coefficients);
        CHECK(back.objective_value == 0.125);
    }

    SUBCASE("defective files are rejected") {
        spit(dir.file("junk.txt"), "not a model\n");
        CHECK_THROWS_AS(read_model(dir.file("junk.txt")), Error);
        spit(dir.file("short.txt"), "method: qr\ntau: 0.5\n");
        CHECK_THROWS_AS(read_model(dir.file("short.txt")), Error);
        spit(dir.file("mismatch.txt"),
             "method: mlr\nlead_months: 12\nlag_years: 1\ninclude_intercept: 1\n"
             "features: a,b\ncoefficients: 1\nobjective_value: 0\n");
        CHECK_THROWS_AS(read_model(dir.file("mismatch.txt")), Error);
    }
}

}  // TEST_SUITE
