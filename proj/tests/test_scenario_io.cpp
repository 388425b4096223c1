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

#include "nogo/scenario_io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "nogo/errors.hpp"
#include "nogo/random.hpp"
#include "test_util.hpp"

using namespace nogo;
using namespace nogo::testing;
using nogo::io::json;

namespace {

const std::filesystem::path kFixtures = NOGO_FIXTURES_DIR;

json minimal_config() {
    return json::parse(R"({
        "dims": [2, 2],
        "psi": [[1, 0], [0, 0]],
        "xi": [[1, 0], [0, 0]],
        "phi": [[0.6, 0], [0.8, 0]],
        "observable": [{"system": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
                        "device": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]}]
    })");
}

void expect_bits_equal(double a, double b) {
    EXPECT_EQ(std::memcmp(&a, &b, sizeof(double)), 0) << a << " vs " << b;
}

}  // namespace

TEST(ConfigParse, minimal) {
    const auto c = io::parse_config(minimal_config());
    EXPECT_EQ(c.n, 2u);
    EXPECT_EQ(c.m, 2u);
    ASSERT_TRUE(c.phi.has_value());
    EXPECT_EQ(c.terms.size(), 1u);
    EXPECT_FALSE(c.has_error_disturbance());
}

TEST(ConfigParse, ragged_matrix_row) {
    json j = minimal_config();
    j["observable"][0]["system"][0].push_back(json::array({0, 0}));
    EXPECT_THROW(io::parse_config(j), ConfigError);
}

TEST(ConfigParse, schema_violations) {
    {
        json j = minimal_config();
        j.erase("psi");
        EXPECT_THROW(io::parse_config(j), ConfigError);
    }
    {
        json j = minimal_config();
        j["psi"] = json::array({json::array({1, 0}), json::array({1, 0})});
        EXPECT_THROW(io::parse_config(j), ConfigError);
    }
    {
        json j = minimal_config();
        j["observable"][0]["device"][0][1] = json::array({0, 1});
        EXPECT_THROW(io::parse_config(j), ConfigError);
    }
    {
        json j = minimal_config();
        j["dims"] = json::array({2, 0});
        EXPECT_THROW(io::parse_config(j), ConfigError);
    }
    {
        json j = minimal_config();
        j["psi"][0] = json::array({1});
        EXPECT_THROW(io::parse_config(j), ConfigError);
    }
    {
        json j = minimal_config();
        j.erase("observable");
        EXPECT_THROW(io::parse_config(j), ConfigError);
    }
    {
        json j = minimal_config();
        j["interaction"] = {{"unitary", io::encode(2.0 * Operator::identity(4))}};
        j["setup"] = {{"A", io::encode(pauli::Z())},
                      {"B", io::encode(pauli::X())},
                      {"M", io::encode(pauli::Z())}};
        EXPECT_THROW(io::parse_config(j), ConfigError);
    }
    {
        json j = minimal_config();
        j["tolerances"] = {{"deg", -1.0}};
        EXPECT_THROW(io::parse_config(j), ConfigError);
    }
}

TEST(ConfigParse, round_trip_through_encode) {
    const auto c = io::load_config(kFixtures / "cnot_error.json");
    const auto again = io::parse_config(io::encode(c));
    EXPECT_EQ(io::encode(again).dump(), io::encode(c).dump());
    EXPECT_TRUE(c.has_error_disturbance());
    EXPECT_TRUE(c.interaction->unitary.has_value());
}

TEST(ConfigParse, hamiltonian_interaction) {
    json j = minimal_config();
    j["interaction"] = {{"hamiltonians",
                         {{"system", io::encode(pauli::Z())},
                          {"device", io::encode(pauli::X())},
                          {"t", 0.25}}}};
    j["setup"] = {{"A", io::encode(pauli::Z())},
                  {"B", io::encode(pauli::X())},
                  {"M", io::encode(pauli::Z())}};
    const auto c = io::parse_config(j);
    EXPECT_TRUE(c.model().unitary().is_unitary());
    EXPECT_LT(max_abs_diff(c.model().unitary(),
                           matrix_exponential_skew(tensor(pauli::Z(), pauli::X()), 0.25)),
              1e-15);
}

TEST(ConfigLoad, missing_file_and_bad_json) {
    EXPECT_THROW(io::load_config(kFixtures / "does_not_exist.json"), ConfigError);
    const auto tmp = std::filesystem::temp_directory_path() / "nogo_bad_config.json";
    {
        std::ofstream(tmp) << "{ not json";
    }
    EXPECT_THROW(io::load_config(tmp), ConfigError);
    std::filesystem::remove(tmp);
}

TEST(Tolerances, environment_override) {
    ::setenv("NOGO_DEFAULT_TOL", "1e-7", 1);
    const auto t = io::default_tolerances();
    EXPECT_EQ(t.deg, 1e-7);
    EXPECT_EQ(t.verify, 1e-7);
    ::setenv("NOGO_DEFAULT_TOL", "abc", 1);
    EXPECT_THROW(io::default_tolerances(), ConfigError);
    ::unsetenv("NOGO_DEFAULT_TOL");
    EXPECT_EQ(io::default_tolerances().deg, kTolDegeneracy);
}

TEST(Hash, fnv1a_reference_values) {
    EXPECT_EQ(io::fnv1a64_hex(""), "cbf29ce484222325");
    EXPECT_EQ(io::fnv1a64_hex("a"), "af63dc4c8601ec8c");
}

TEST(Report, round_trip_is_bit_identical) {
    for (const char *name : {"cnot_error.json", "cnot_disturbance.json", "generic_violation.json"}) {
        const auto c = io::load_config(kFixtures / name);
        const auto report = io::run_verify(c, "deadbeef", io::Tolerances{});
        const json encoded = io::encode(report);
        const auto decoded = io::decode_report(json::parse(encoded.dump()));
        EXPECT_EQ(io::encode(decoded).dump(), encoded.dump()) << name;
        if (report.verdict) {
            expect_bits_equal(decoded.verdict->gap, report.verdict->gap);
            expect_bits_equal(decoded.verdict->conditional, report.verdict->conditional);
        }
        if (report.error_disturbance) {
            expect_bits_equal(decoded.error_disturbance->eta_sq, report.error_disturbance->eta_sq);
            EXPECT_EQ(max_abs_diff(decoded.error_disturbance->noise_op,
                                   report.error_disturbance->noise_op),
                      0.0);
        }
    }
}

TEST(Report, verify_outcomes_for_fixtures) {
    const auto err = io::run_verify(io::load_config(kFixtures / "cnot_error.json"), "h",
                                    io::Tolerances{});
    EXPECT_TRUE(err.passed);
    ASSERT_TRUE(err.verdict.has_value());
    EXPECT_LE(err.verdict->gap, 1e-10);
    EXPECT_TRUE(err.verdict->theorem_applies());
    ASSERT_TRUE(err.error_disturbance.has_value());
    EXPECT_NEAR(err.error_disturbance->epsilon_sq, 1.0, 1e-12);

    const auto gen = io::run_verify(io::load_config(kFixtures / "generic_violation.json"), "h",
                                    io::Tolerances{});
    EXPECT_TRUE(gen.passed);
    EXPECT_FALSE(gen.verdict->hypothesis_holds);
    EXPECT_GT(gen.verdict->gap, 0.01);
}

TEST(Report, missing_phi_is_a_config_error) {
    json j = minimal_config();
    j.erase("phi");
    EXPECT_THROW(io::run_verify(io::parse_config(j), "h", io::Tolerances{}), ConfigError);
}

TEST(Sweep, default_grid_rows) {
    const auto rows = io::cnot_sweep(io::default_s_grid(), io::default_theta_grid(),
                                     io::default_varphi_grid());
    ASSERT_EQ(rows.size(), 21u * 5u * 3u);
    EXPECT_EQ(rows.front().s, 0.0);
    EXPECT_NEAR(rows.front().epsilon_sq, 2.0, 1e-12);
    EXPECT_NEAR(rows.front().eta_sq, 0.0, 1e-12);
    EXPECT_EQ(rows.back().s, 1.0);
    EXPECT_NEAR(rows.back().epsilon_sq, 0.0, 1e-12);
    EXPECT_NEAR(rows.back().eta_sq, 2.0, 1e-12);
    for (const auto &r : rows) {
        EXPECT_LE(r.gap_epsilon, 1e-10);
        EXPECT_LE(r.gap_eta, 1e-10);
    }
}

TEST(Grid, parse_forms) {
    EXPECT_EQ(io::parse_grid("0,0.5,1"), (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(io::parse_grid("0:1:5"), (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(io::parse_grid("0.3:9:1"), (std::vector<double>{0.3}));
    EXPECT_THROW(io::parse_grid(""), ConfigError);
    EXPECT_THROW(io::parse_grid("0,x"), ConfigError);
    EXPECT_THROW(io::parse_grid("0:1"), ConfigError);
    EXPECT_THROW(io::parse_grid("0:1:0"), ConfigError);
    EXPECT_THROW(io::parse_grid("0:1:2.5"), ConfigError);
    EXPECT_THROW(io::parse_grid("nan"), ConfigError);
}

TEST(Csv, round_trip_is_exact) {
    const auto rows = io::cnot_sweep(io::parse_grid("0:1:21"), io::default_theta_grid(),
                                     io::default_varphi_grid());
    std::stringstream ss;
    io::write_sweep_csv(ss, rows);
    const std::string text = ss.str();
    EXPECT_EQ(text.substr(0, text.find("\r\n")),
              "s,theta,varphi,epsilon_sq,epsilon_sq_post,eta_sq,eta_sq_post,gap_epsilon,gap_eta");
    std::stringstream in(text);
    EXPECT_EQ(io::read_sweep_csv(in), rows);
}

TEST(FormatDouble, shortest_round_trip) {
    Rng rng(8);
    for (int k = 0; k < 10000; ++k) {
        const double x = rng.normal() * std::pow(10.0, rng.uniform(-300.0, 300.0));
        const std::string s = io::format_double(x);
        EXPECT_EQ(std::stod(s), x);
    }
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(2.0), "2");
    EXPECT_EQ(io::format_double(-0.0), "-0");
}
