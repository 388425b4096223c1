// Copyright 2026 The nogo-postselect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nogo/scenario_io.hpp"

using nogo::io::json;

namespace {

const std::filesystem::path kFixtures = NOGO_FIXTURES_DIR;

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = nogo::cli::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fixture(const char *name) { return (kFixtures / name).string(); }

std::filesystem::path write_temp(const std::string &name, const std::string &text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path;
}

json without_wall_time(json j) {
    j.erase("wall_time_seconds");
    return j;
}

}  // namespace

TEST(CliVerify, cnot_error_fixture_passes) {
    const CliRun r = run({"verify", "--config", fixture("cnot_error.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_LE(j["verdict"]["gap"].get<double>(), 1e-10);
    EXPECT_TRUE(j["verdict"]["hypothesis_holds"].get<bool>());
    EXPECT_LE(j["error_disturbance"]["nogo_gap_error"].get<double>(), 1e-10);
}

TEST(CliVerify, generic_violation_reports_gap) {
    const CliRun r = run({"verify", "--config", fixture("generic_violation.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_FALSE(j["verdict"]["hypothesis_holds"].get<bool>());
    EXPECT_GT(j["verdict"]["gap"].get<double>(), 0.01);
    EXPECT_TRUE(j["verdict"]["degeneracy"][0]["witness"].is_array());
}

TEST(CliVerify, malformed_matrix_exits_two) {
    json j = json::parse(std::ifstream(fixture("cnot_error.json")));
    j["observable"][0]["system"][0].push_back(json::array({0, 0}));
    const auto path = write_temp("nogo_malformed.json", j.dump());
    const CliRun r = run({"verify", "--config", path.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("observable[0].system"), std::string::npos) << r.err;
    std::filesystem::remove(path);
}

TEST(CliVerify, usage_errors_exit_two) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"verify"}).code, 2);
    EXPECT_EQ(run({"verify", "--config", fixture("missing.json")}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"verify", "--config", fixture("cnot_error.json"), "--tol-deg", "-1"}).code, 2);
}

TEST(CliVerify, loose_degeneracy_tolerance_exposes_failure) {
    // A huge tol_deg declares the generic instance degenerate; its gap then
    // counts as a verification failure.
    const CliRun r = run({"verify", "--config", fixture("generic_violation.json"), "--tol-deg", "100"});
    EXPECT_EQ(r.code, 1) << r.err;
    const json j = json::parse(r.out);
    EXPECT_FALSE(j["passed"].get<bool>());
    EXPECT_TRUE(j["verdict"]["hypothesis_holds"].get<bool>());
}

TEST(CliVerify, replay_is_byte_identical) {
    const CliRun a = run({"verify", "--config", fixture("cnot_disturbance.json")});
    const CliRun b = run({"verify", "--config", fixture("cnot_disturbance.json")});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(without_wall_time(json::parse(a.out)).dump(2),
              without_wall_time(json::parse(b.out)).dump(2));
}

TEST(CliVerify, out_flag_writes_file) {
    const auto path = std::filesystem::temp_directory_path() / "nogo_report.json";
    const CliRun r = run({"verify", "--config", fixture("cnot_error.json"), "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    const json j = json::parse(std::ifstream(path));
    const auto report = nogo::io::decode_report(j);
    EXPECT_TRUE(report.passed);
    std::filesystem::remove(path);
}

TEST(CliSweep, csv_default_grid) {
    const CliRun r = run({"cnot-sweep"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    const auto rows = nogo::io::read_sweep_csv(in);
    EXPECT_EQ(rows.size(), 315u);
    for (const auto &row : rows) {
        EXPECT_LE(row.gap_epsilon, 1e-10);
        EXPECT_LE(row.gap_eta, 1e-10);
    }
}

TEST(CliSweep, json_format_and_grid_errors) {
    const CliRun r = run({"cnot-sweep", "--s-grid", "0,1", "--theta-grid", "0", "--varphi-grid", "0",
                       "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(r.out);
    ASSERT_EQ(j.size(), 2u);
    EXPECT_NEAR(j[0]["epsilon_sq"].get<double>(), 2.0, 1e-12);
    EXPECT_NEAR(j[1]["eta_sq"].get<double>(), 2.0, 1e-12);
    EXPECT_EQ(run({"cnot-sweep", "--s-grid", "0,abc"}).code, 2);
    EXPECT_EQ(run({"cnot-sweep", "--s-grid", "0,1.5"}).code, 2);
    EXPECT_EQ(run({"cnot-sweep", "--format", "xml"}).code, 2);
}

TEST(CliAudit, degenerate_mode_passes) {
    const CliRun r = run({"random-audit", "--count", "1000", "--dims", "2x2", "--seed", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    EXPECT_EQ(j["violations"].get<int>(), 0);
    EXPECT_EQ(j["records"].size(), 1000u);
    EXPECT_TRUE(j["records"][0].contains("seed"));
}

TEST(CliAudit, generic_mode_has_large_gap) {
    const CliRun r = run({"random-audit", "--count", "100", "--mode", "generic", "--seed", "1"});
    ASSERT_EQ(r.code, 0);
    EXPECT_GT(json::parse(r.out)["max_gap"].get<double>(), 0.01);
}

TEST(CliAudit, argument_errors) {
    EXPECT_EQ(run({"random-audit", "--count", "0"}).code, 2);
    EXPECT_EQ(run({"random-audit", "--dims", "2by2"}).code, 2);
    EXPECT_EQ(run({"random-audit", "--mode", "other"}).code, 2);
}

TEST(CliAudit, csv_output) {
    const CliRun r = run({"random-audit", "--count", "3", "--dims", "mixed", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
}

TEST(CliSample, cnot_error_sampling) {
    const CliRun r = run({"sample", "--config", fixture("cnot_error.json"), "--shots", "200000",
                       "--seed", "9"});
    ASSERT_EQ(r.code, 0) << r.err;
    const json j = json::parse(r.out);
    const double mean = j["conditional_mean"].get<double>();
    const double se = j["conditional_mean_stderr"].get<double>();
    EXPECT_NEAR(j["exact_conditional"].get<double>(), 1.0, 1e-12);
    EXPECT_LE(std::abs(mean - 1.0), 3.0 * se);
    const CliRun again = run({"sample", "--config", fixture("cnot_error.json"), "--shots", "200000",
                           "--seed", "9"});
    EXPECT_EQ(r.out, again.out);
    EXPECT_EQ(run({"sample", "--config", fixture("cnot_error.json"), "--shots", "0"}).code, 2);
    EXPECT_EQ(run({"sample", "--config", fixture("cnot_error.json"), "--term", "3"}).code, 2);
}
