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

/**
 * @file
 * JSON scenario configurations, run reports and sweep tables.
 *
 * Complex numbers are encoded as [re, im] pairs, kets as arrays of pairs and
 * matrices as arrays of rows of pairs. See docs/config_schema.json.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "nogo/error_disturbance.hpp"
#include "nogo/linalg.hpp"
#include "nogo/measurement.hpp"
#include "nogo/theorem.hpp"

namespace nogo::io {

using json = nlohmann::json;

struct Tolerances {
    double deg = kTolDegeneracy;
    double verify = kTolVerify;
};

/// Library defaults, with both values replaced by NOGO_DEFAULT_TOL when that
/// environment variable holds a positive number. Throws ConfigError on an
/// unparsable value.
Tolerances default_tolerances();

// Encoding of the numeric primitives. Decoders throw ConfigError with the
// offending field name.
json encode(Complex z);
json encode(const Ket &ket);
json encode(const Operator &op);
Complex decode_complex(const json &j, std::string_view field);
Ket decode_ket(const json &j, std::size_t dim, std::string_view field);
Operator decode_operator(const json &j, std::size_t dim, std::string_view field);

struct InteractionSpec {
    std::optional<Operator> unitary;
    std::optional<HamiltonianCoupling> hamiltonians;
};

struct ScenarioConfig {
    std::string name;
    std::size_t n = 0;
    std::size_t m = 0;
    Ket psi;
    Ket xi;
    std::optional<Ket> phi;
    std::vector<ProductTerm> terms;
    std::optional<InteractionSpec> interaction;
    std::optional<MeasurementSetup> setup;
    std::optional<double> tol_deg;
    std::optional<double> tol_verify;
    std::optional<std::uint64_t> seed;

    bool has_observable() const { return !terms.empty(); }
    bool has_error_disturbance() const { return interaction && setup; }

    MeasurementScenario scenario(double tol_deg) const;
    InteractionModel model() const;
};

/// Validates the schema, dimensions, Hermiticity, unitarity and
/// normalization. Throws ConfigError.
ScenarioConfig parse_config(const json &j);
ScenarioConfig load_config(const std::filesystem::path &path);
json encode(const ScenarioConfig &config);

/// FNV-1a 64-bit digest, rendered as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

struct RunReport {
    std::string config_hash;
    std::optional<std::uint64_t> seed;
    Tolerances tolerances;
    std::optional<TheoremVerdict> verdict;
    std::optional<ErrorDisturbanceReport> error_disturbance;
    bool passed = true;
    double wall_time_seconds = 0.0;
};

json encode(const DegeneracyReport &report);
json encode(const TheoremVerdict &verdict);
json encode(const ErrorDisturbanceReport &report);
json encode(const RunReport &report);
RunReport decode_report(const json &j);

/// Runs every check the configuration enables. `passed` is false when a
/// verdict has its hypotheses satisfied but the sides disagree.
RunReport run_verify(const ScenarioConfig &config, std::string config_hash,
                     const Tolerances &tolerances);

// ---------------------------------------------------------------------------
// CNOT sweep tables

struct SweepRow {
    double s = 0.0;
    double theta = 0.0;
    double varphi = 0.0;
    double epsilon_sq = 0.0;
    double epsilon_sq_post = 0.0;
    double eta_sq = 0.0;
    double eta_sq_post = 0.0;
    double gap_epsilon = 0.0;
    double gap_eta = 0.0;

    bool operator==(const SweepRow &) const = default;
};

/// Rows ordered by (s, theta, varphi) grid index.
std::vector<SweepRow> cnot_sweep(const std::vector<double> &s_grid,
                                 const std::vector<double> &theta_grid,
                                 const std::vector<double> &varphi_grid,
                                 const Tolerances &tolerances = {});

std::vector<double> default_s_grid();
std::vector<double> default_theta_grid();
std::vector<double> default_varphi_grid();

/// "a,b,c" or "start:stop:count" (inclusive linspace). Throws ConfigError.
std::vector<double> parse_grid(std::string_view spec);

/// Shortest representation that parses back to the same double.
std::string format_double(double x);

/// RFC 4180 with a header row and CRLF line endings.
void write_sweep_csv(std::ostream &os, const std::vector<SweepRow> &rows);
std::vector<SweepRow> read_sweep_csv(std::istream &is);
json encode(const std::vector<SweepRow> &rows);

}  // namespace nogo::io
