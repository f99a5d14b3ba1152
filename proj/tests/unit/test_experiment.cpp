#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "ubq/csv.hpp"
#include "ubq/error.hpp"
#include "ubq/experiment.hpp"

using namespace ubq;

namespace {

const char* kRecovery = R"({
  "version": 1,
  "experiment": "recovery",
  "model": {
    "h": {"type": "ramp", "u": 1.0, "l": -0.8, "k": 20, "ascending": true},
    "tau": {"type": "scaled", "c0": 0.5}
  },
  "theta": 1.5,
  "n_grid": [500, 5000],
  "channels": [[0, 0], [0.1, 0.1]],
  "trials": 50,
  "seed": 3,
  "full": {"trials": 5000, "n_grid": [1000]}
})";

std::string to_csv(const Table& t) {
    std::ostringstream out;
    write_csv(out, t);
    return out.str();
}

ErrorCode parse_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "config parsed unexpectedly";
    return ErrorCode::InvalidArgument;
}

std::string with(const std::string& key_value) {
    std::string s = kRecovery;
    return s.insert(s.find('{') + 1, key_value + ",");
}

}  // namespace

TEST(Csv, SeventeenSignificantDigits) {
    EXPECT_EQ(format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(-2.5e-300), "-2.5e-300");
    EXPECT_EQ(format_number(2.0 / 3.0), "0.66666666666666663");
    EXPECT_EQ(format_number(NAN), "nan");
    for (double x : {1.0 / 3.0, 12636.123456789, 2.2e-16}) EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Csv, HeaderQuotingAndLineEndings) {
    Table t;
    t.header = {"a", "b,c"};
    t.rows.push_back({std::int64_t{3}, std::string("x\"y")});
    t.rows.push_back({0.5, std::string("-")});
    EXPECT_EQ(to_csv(t), "a,\"b,c\"\n3,\"x\"\"y\"\n0.5,-\n");
    t.rows.push_back({1.0});
    EXPECT_THROW(to_csv(t), Error);
}

TEST(Config, ParsesAndMergesFullScale) {
    const auto c = parse_config(kRecovery);
    EXPECT_EQ(c.kind, ExperimentKind::Recovery);
    EXPECT_EQ(c.trials, 50);
    EXPECT_EQ(c.n_grid, (std::vector<std::int64_t>{500, 5000}));
    ASSERT_EQ(c.channels.size(), 2u);
    EXPECT_EQ(c.channels[1].first, 0.1);
    EXPECT_EQ(c.model.sigma_w, 1.0);
    const auto full = parse_config(kRecovery, true);
    EXPECT_EQ(full.trials, 5000);
    EXPECT_EQ(full.n_grid, (std::vector<std::int64_t>{1000}));
}

TEST(Config, RejectsSchemaErrors) {
    EXPECT_EQ(parse_error("not json"), ErrorCode::InvalidConfig);
    EXPECT_EQ(parse_error(with("\"versionx\": 1")), ErrorCode::InvalidConfig);
    std::string v2 = kRecovery;
    v2.replace(v2.find("\"version\": 1"), 12, "\"version\": 2");
    EXPECT_EQ(parse_error(v2), ErrorCode::InvalidConfig);
    std::string trials = kRecovery;
    trials.replace(trials.find("\"trials\": 50"), 12, "\"trials\": 0");
    EXPECT_EQ(parse_error(trials), ErrorCode::InvalidConfig);
    std::string grid = kRecovery;
    grid.replace(grid.find("[500, 5000]"), 11, "[]");
    EXPECT_EQ(parse_error(grid), ErrorCode::InvalidConfig);
    std::string wrong_type = kRecovery;
    wrong_type.replace(wrong_type.find("\"theta\": 1.5"), 12, "\"theta\": \"x\"");
    EXPECT_EQ(parse_error(wrong_type), ErrorCode::InvalidConfig);
    std::string kind = kRecovery;
    kind.replace(kind.find("\"recovery\""), 10, "\"plot\"");
    EXPECT_EQ(parse_error(kind), ErrorCode::InvalidConfig);
    EXPECT_EQ(parse_error(with("\"detectors\": [\"T4\"]")), ErrorCode::InvalidConfig);
    EXPECT_EQ(parse_error(with("\"strategies\": [\"fastest\"]")), ErrorCode::InvalidConfig);
    EXPECT_THROW(load_config("/nonexistent/config.json"), Error);
}

TEST(Config, ShippedConfigsParse) {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(UBQ_CONFIG_DIR)) {
        if (entry.path().extension() != ".json") continue;
        EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
        EXPECT_NO_THROW(load_config(entry.path().string(), true)) << entry.path();
        ++seen;
    }
    EXPECT_GE(seen, 8);
}

TEST(BuildModel, Shapes) {
    ModelSpec spec;
    spec.h.type = ShapeSpec::Type::Ramp;
    spec.h.u = 2.5;
    spec.h.l = -1.5;
    spec.tau.c0 = 0.5;
    const auto ramp = build_model(spec, 20);
    EXPECT_DOUBLE_EQ(ramp.h()[0], 2.5);
    EXPECT_DOUBLE_EQ(ramp.h()[19], -1.5);
    EXPECT_NEAR(ramp.h()[1] - ramp.h()[0], -4.0 / 19.0, 1e-15);
    EXPECT_DOUBLE_EQ(ramp.tau()[3], 0.5 * ramp.h()[3]);

    spec.h.type = ShapeSpec::Type::Sinusoid;
    spec.h.seed = 4;
    spec.tau.type = TauSpec::Type::Uniform;
    const auto a = build_model(spec, 30);
    const auto b = build_model(spec, 30);
    EXPECT_TRUE(std::equal(a.h().begin(), a.h().end(), b.h().begin()));
    for (std::size_t i = 0; i < 30; ++i) {
        EXPECT_LE(std::abs(a.h()[i]), 1.0);
        EXPECT_LE(std::abs(a.tau()[i]), spec.delta);
    }
    // sorted phases: asin of the first entries rises while the sine rises
    EXPECT_LT(std::asin(a.h()[0]), std::asin(a.h()[1]) + 1e-12);

    spec.h.type = ShapeSpec::Type::Explicit;
    spec.h.values = {1.0, 2.0};
    EXPECT_THROW(build_model(spec, 3), Error);
}

TEST(Runners, RecoveryTableAndDeterminism) {
    const auto cfg = parse_config(kRecovery);
    const Table t = run_recovery(cfg);
    EXPECT_EQ(t.header, (std::vector<std::string>{"K", "N", "q0", "q1", "empirical", "pr_kn", "pr_kn_relaxed",
                                                  "pr_kn_raw"}));
    ASSERT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(to_csv(t), to_csv(run_recovery(cfg)));
    const double low = std::get<double>(t.rows[0][4]);
    const double high = std::get<double>(t.rows[1][4]);
    EXPECT_LT(low, high);
}

TEST(Runners, MseColumns) {
    auto cfg = parse_config(R"({"version": 1, "experiment": "mse",
        "model": {"h": {"type": "ramp", "u": 2.5, "l": -1.5, "k": 20}, "tau": {"type": "scaled", "c0": 0.5},
                  "q0": 0.05, "q1": 0.05},
        "n_grid": [1000], "strategies": ["auto", "altmax"], "trials": 20, "seed": 1})");
    const Table t = run_mse(cfg);
    EXPECT_EQ(t.header, (std::vector<std::string>{"N", "mse_labeled", "mse_auto", "mse_altmax", "crlb"}));
    ASSERT_EQ(t.rows.size(), 1u);
    for (std::size_t c = 1; c < 5; ++c) EXPECT_GT(std::get<double>(t.rows[0][c]), 0.0);
    cfg.trials = 1;
    EXPECT_EQ(to_csv(run_mse(cfg)), to_csv(run_mse(cfg)));
}

TEST(Runners, DetectionRows) {
    const auto cfg = parse_config(R"({"version": 1, "experiment": "detection",
        "model": {"h": {"type": "ramp", "u": 2.5, "l": -1.5, "k": 20}, "tau": {"type": "scaled", "c0": 0.5},
                  "sigma_w": 3.0, "q0": 0.05, "q1": 0.05},
        "theta": 0.0, "n_grid": [5, 10], "trials": 100, "seed": 2})");
    const Table t = run_detection(cfg);
    ASSERT_EQ(t.rows.size(), 6u);
    EXPECT_EQ(std::get<std::string>(t.rows[0][1]), "T1");
    EXPECT_EQ(std::get<std::string>(t.rows[0][2]), "-");
    EXPECT_EQ(std::get<std::string>(t.rows[2][1]), "T3");
    EXPECT_EQ(std::get<std::string>(t.rows[2][2]), "auto");
}

TEST(Runners, GapFitNeedsThreeSizes) {
    auto cfg = parse_config(R"({"version": 1, "experiment": "gap-fit",
        "model": {"h": {"type": "ramp", "u": 1.0, "l": -0.8}, "tau": {"type": "scaled", "c0": 0.5}},
        "theta": 1.5, "k_grid": [10, 20, 40], "fit": {"alpha": 1.0}, "trials": 1})");
    const Table t = run_gap_fit(cfg);
    ASSERT_EQ(t.rows.size(), 3u);
    EXPECT_EQ(std::get<double>(t.rows[0][5]), 1.0);
    cfg.k_grid = {10, 20};
    cfg.fit_alpha.reset();
    try {
        run_gap_fit(cfg);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateFit);
    }
}
