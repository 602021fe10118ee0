#include "qic/report.hpp"

#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "qic/sweep.hpp"

using namespace qic;
using report::Json;

TEST(FormatReal, seventeen_significant_digits) {
    EXPECT_EQ(report::format_real(0.1), "0.10000000000000001");
    EXPECT_EQ(report::format_real(1.0), "1");
    EXPECT_EQ(report::format_real(0.5), "0.5");
    EXPECT_EQ(report::format_real(1e-20), "9.9999999999999995e-21");
}

TEST(Dump, layout_and_number_formats) {
    Json doc;
    doc["b"] = 1;
    doc["a"] = Json::array({0.25, true, nullptr});
    doc["e"] = Json::array();
    doc["o"] = Json::object();
    doc["s"] = "x\"y";
    EXPECT_EQ(report::dump(doc),
              "{\n"
              "  \"b\": 1,\n"
              "  \"a\": [\n"
              "    0.25,\n"
              "    true,\n"
              "    null\n"
              "  ],\n"
              "  \"e\": [],\n"
              "  \"o\": {},\n"
              "  \"s\": \"x\\\"y\"\n"
              "}\n");
}

TEST(Dump, non_finite_becomes_null) {
    Json doc = Json::array({std::numeric_limits<double>::infinity(), std::nan("")});
    EXPECT_EQ(report::dump(doc), "[\n  null,\n  null\n]\n");
}

TEST(Dump, round_trips_doubles_exactly) {
    const double values[] = {1.0 / 3.0, 0.4821428571428571, 1e-300, 123456789.123456789};
    for (double v : values) {
        Json parsed = Json::parse(report::dump(Json::array({v})));
        EXPECT_EQ(parsed[0].get<double>(), v);
    }
}

TEST(Envelope, fields_in_order) {
    Json env = report::envelope("solve", Json::object(), Json::array());
    std::vector<std::string> keys;
    for (const auto& [k, v] : env.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "command", "config", "results", "timing_ms"}));
    EXPECT_EQ(env["schema_version"], report::kSchemaVersion);
    EXPECT_TRUE(env["timing_ms"].is_null());
    EXPECT_EQ(report::envelope("x", {}, {}, 2.5)["timing_ms"], 2.5);
}

TEST(EnumerationJson, runs_and_summary) {
    const Register reg(3);
    auto r = enumerate_solutions(Predicate::from_indices({1, 3}, reg), reg, RunConfig{.seed = 42});
    Json results = report::results_json(r);
    EXPECT_EQ(results["termination"], "Exhausted");
    EXPECT_EQ(results["productive_runs"], 2);
    EXPECT_EQ(results["total_runs"], 3);
    ASSERT_EQ(results["runs"].size(), 3U);
    EXPECT_TRUE(results["runs"][2]["measured"].is_null());
    EXPECT_EQ(results["runs"][0]["verified"], true);
    Json config = report::config_json(r);
    EXPECT_EQ(config["qubits"], 3);
    EXPECT_EQ(config["seed"], 42);
    EXPECT_EQ(config["max_runs"], 16);
}

TEST(EccJson, collapse_has_null_after_values) {
    auto r = ecc_experiment(ChecksumScheme::global(2), NoiseModel{.events = 1, .theta = 1.5707963}, {}, 3);
    Json results = report::results_json(r);
    EXPECT_EQ(results["status"], "NormCollapse");
    EXPECT_TRUE(results["fidelity_after"].is_null());
    EXPECT_TRUE(results["valid_mass_after"].is_null());
    ASSERT_EQ(results["events"].size(), 1U);
}

TEST(Ranges, real_range) {
    auto eps = parse_real_range("0.1:0.3:0.1");
    ASSERT_EQ(eps.size(), 3U);
    EXPECT_NEAR(eps[2], 0.3, 1e-15);
    EXPECT_EQ(parse_real_range("0.25"), std::vector<double>{0.25});
    EXPECT_EQ(parse_real_range("0:0.5:0.25").size(), 3U);
    EXPECT_THROW(parse_real_range("0.1:0.3"), std::invalid_argument);
    EXPECT_THROW(parse_real_range("0.3:0.1:0.1"), std::invalid_argument);
    EXPECT_THROW(parse_real_range("0:1:0"), std::invalid_argument);
    EXPECT_THROW(parse_real_range("a:b:c"), std::invalid_argument);
    EXPECT_THROW(parse_real_range(""), std::invalid_argument);
}

TEST(Ranges, int_range) {
    EXPECT_EQ(parse_int_range("1:3"), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(parse_int_range("2:6:2"), (std::vector<int>{2, 4, 6}));
    EXPECT_EQ(parse_int_range("4"), std::vector<int>{4});
    EXPECT_THROW(parse_int_range("3:1"), std::invalid_argument);
    EXPECT_THROW(parse_int_range("1.5"), std::invalid_argument);
}

TEST(Sweep, nine_rows_match_prediction) {
    auto pred = Predicate::from_indices({1, 3}, Register(3));
    auto rows = leakage_sweep(pred, parse_real_range("0.1:0.3:0.1"), parse_int_range("1:3"));
    ASSERT_EQ(rows.size(), 9U);
    for (const auto& row : rows) {
        EXPECT_NEAR(row.predicted_ratio, std::pow(row.epsilon / (2 - row.epsilon), row.passes), 1e-15);
        EXPECT_LE(row.abs_error, 1e-9);
        EXPECT_EQ(row.abs_error, std::abs(row.measured_ratio - row.predicted_ratio));
    }
    EXPECT_EQ(rows[1].passes, 2);
    EXPECT_NEAR(rows[3].epsilon, 0.2, 1e-15);
}

TEST(Sweep, zero_leakage_gives_zero_ratio) {
    auto pred = Predicate::from_indices({1, 3}, Register(3));
    auto rows = leakage_sweep(pred, {0.0}, {1});
    ASSERT_EQ(rows.size(), 1U);
    EXPECT_EQ(rows[0].predicted_ratio, 0.0);
    EXPECT_EQ(rows[0].measured_ratio, 0.0);
}

TEST(Sweep, needs_valid_and_invalid_indices) {
    EXPECT_THROW(measured_leakage_ratio(Predicate::from_expr("1", Register(2)), {}), std::invalid_argument);
    EXPECT_THROW(measured_leakage_ratio(Predicate::from_expr("0", Register(2)), {}), std::invalid_argument);
}

TEST(Sweep, csv_layout) {
    std::vector<SweepRow> rows{{.epsilon = 0.5, .passes = 2, .predicted_ratio = 1.0 / 9.0,
                                .measured_ratio = 1.0 / 9.0, .abs_error = 0.0}};
    EXPECT_EQ(sweep_csv(rows),
              "epsilon,passes,predicted_ratio,measured_ratio,abs_error\n"
              "0.5,2,0.1111111111111111,0.1111111111111111,0\n");
}
