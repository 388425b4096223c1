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
 * Brute-force reference paths for the two-step (measure, then postselect)
 * process. Nothing here goes through the measurement module's formulas:
 * projectors are explicit outer-product matrices, states are collapsed by
 * matrix-vector products, and postselection is applied as the full
 * |phi><phi| (x) I matrix.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nogo/measurement.hpp"

namespace nogo::oracle {

struct OutcomeRecord {
    std::size_t k = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    double eigenvalue = 0.0;
    /// ||P_ij Psi||^2
    double outcome_prob = 0.0;
    /// ||Pi_phi P_ij Psi||^2
    double joint_prob = 0.0;
    double conditional_prob = 0.0;
};

struct EnumerationResult {
    /// Outcomes ordered by (k, i, j).
    std::vector<OutcomeRecord> outcomes;
    /// Per-term postselection probability.
    std::vector<double> denominators;

    /// sum_ij r_ij P(r_ij | phi, rho) for term k.
    double conditional_expectation(std::size_t k) const;
    /// sum_ij r_ij P(r_ij | rho) for term k.
    double expectation(std::size_t k) const;
    const OutcomeRecord &at(std::size_t k, std::size_t i, std::size_t j) const;

    std::size_t n = 0;
    std::size_t m = 0;
};

/// Throws ZeroProbability if any term's denominator is at or below tol_p and
/// MissingPostselection if the scenario has no phi.
EnumerationResult enumerate_two_step(const MeasurementScenario &scenario,
                                     double tol_p = kTolProbability);

struct SamplingResult {
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::size_t term = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    /// Accepted shots per outcome, flat index i * m + j.
    std::vector<std::uint64_t> counts;
    std::uint64_t accepted = 0;

    /// Empirical conditional mean of the eigenvalues; r must be n x m.
    double conditional_mean(const std::vector<std::vector<double>> &r) const;
    /// Standard error of conditional_mean under independent draws.
    double conditional_mean_stderr(const std::vector<std::vector<double>> &r) const;
    double acceptance_rate() const;
};

/// Shots per shard; each shard draws from its own stream seeded by
/// derive_seed(seed, shard index).
inline constexpr std::uint64_t kShardShots = 1u << 16;

/// Simulates `shots` runs of: projective outcome draw for term k, collapse,
/// postselection accept/reject. Identical arguments give identical counts.
/// Throws std::invalid_argument when shots is 0.
SamplingResult sample_two_step(const MeasurementScenario &scenario, std::uint64_t shots,
                               std::uint64_t seed, std::size_t k = 0);

}  // namespace nogo::oracle
