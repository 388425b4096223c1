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

#include "nogo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nogo/errors.hpp"
#include "nogo/random.hpp"

namespace nogo::oracle {

double EnumerationResult::conditional_expectation(std::size_t k) const {
    double s = 0.0;
    for (const auto &o : outcomes) {
        if (o.k == k) {
            s += o.eigenvalue * o.conditional_prob;
        }
    }
    return s;
}

double EnumerationResult::expectation(std::size_t k) const {
    double s = 0.0;
    for (const auto &o : outcomes) {
        if (o.k == k) {
            s += o.eigenvalue * o.outcome_prob;
        }
    }
    return s;
}

const OutcomeRecord &EnumerationResult::at(std::size_t k, std::size_t i, std::size_t j) const {
    return outcomes.at((k * n + i) * m + j);
}

EnumerationResult enumerate_two_step(const MeasurementScenario &scenario, double tol_p) {
    if (!scenario.postselect()) {
        throw MissingPostselection("enumerate_two_step requires a postselected state");
    }
    const std::size_t n = scenario.system_dim();
    const std::size_t m = scenario.device_dim();
    const Ket psi = tensor(scenario.psi(), scenario.xi());
    const Operator pi = tensor(Operator::outer(*scenario.postselect(), *scenario.postselect()),
                               Operator::identity(m));

    EnumerationResult result;
    result.n = n;
    result.m = m;
    for (std::size_t k = 0; k < scenario.observable().size(); ++k) {
        const auto &term = scenario.observable().term(k);
        const Operator full = tensor(term.system, term.device);
        const SpectralDecomposition sys = spectral_decompose(term.system, scenario.tol_deg());
        const SpectralDecomposition dev = spectral_decompose(term.device, scenario.tol_deg());
        const std::size_t first = result.outcomes.size();
        double denom = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                const Ket w = tensor(sys.eigenvectors[i], dev.eigenvectors[j]);
                const Operator p = Operator::outer(w, w);
                const Ket collapsed = p * psi;
                const Ket passed = pi * collapsed;
                OutcomeRecord rec;
                rec.k = k;
                rec.i = i;
                rec.j = j;
                rec.eigenvalue = matrix_element(w, full, w).real();
                rec.outcome_prob = collapsed.norm_sq();
                rec.joint_prob = passed.norm_sq();
                denom += rec.joint_prob;
                result.outcomes.push_back(rec);
            }
        }
        if (!(denom > tol_p)) {
            throw ZeroProbability("postselection impossible for term " + std::to_string(k));
        }
        for (std::size_t idx = first; idx < result.outcomes.size(); ++idx) {
            result.outcomes[idx].conditional_prob = result.outcomes[idx].joint_prob / denom;
        }
        result.denominators.push_back(denom);
    }
    return result;
}

double SamplingResult::conditional_mean(const std::vector<std::vector<double>> &r) const {
    if (accepted == 0) {
        return 0.0;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            s += r.at(i).at(j) * static_cast<double>(counts[i * m + j]);
        }
    }
    return s / static_cast<double>(accepted);
}

double SamplingResult::conditional_mean_stderr(const std::vector<std::vector<double>> &r) const {
    if (accepted < 2) {
        return 0.0;
    }
    const double mean = conditional_mean(r);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double d = r.at(i).at(j) - mean;
            var += d * d * static_cast<double>(counts[i * m + j]);
        }
    }
    var /= static_cast<double>(accepted - 1);
    return std::sqrt(var / static_cast<double>(accepted));
}

double SamplingResult::acceptance_rate() const {
    return shots ? static_cast<double>(accepted) / static_cast<double>(shots) : 0.0;
}

SamplingResult sample_two_step(const MeasurementScenario &scenario, std::uint64_t shots,
                               std::uint64_t seed, std::size_t k) {
    if (shots == 0) {
        throw std::invalid_argument("sample_two_step needs at least one shot");
    }
    const EnumerationResult table = enumerate_two_step(scenario, 0.0);
    const std::size_t n = table.n;
    const std::size_t m = table.m;
    const std::size_t outcomes = n * m;

    std::vector<double> cdf(outcomes);
    std::vector<double> accept(outcomes);
    double total = 0.0;
    for (std::size_t idx = 0; idx < outcomes; ++idx) {
        const auto &o = table.at(k, idx / m, idx % m);
        total += o.outcome_prob;
        cdf[idx] = total;
        accept[idx] = o.outcome_prob > 0.0 ? std::min(1.0, o.joint_prob / o.outcome_prob) : 0.0;
    }

    SamplingResult result;
    result.seed = seed;
    result.shots = shots;
    result.term = k;
    result.n = n;
    result.m = m;
    result.counts.assign(outcomes, 0);

    const std::uint64_t shards = (shots + kShardShots - 1) / kShardShots;
    for (std::uint64_t shard = 0; shard < shards; ++shard) {
        Rng rng(derive_seed(seed, shard));
        const std::uint64_t begin = shard * kShardShots;
        const std::uint64_t end = std::min(shots, begin + kShardShots);
        for (std::uint64_t shot = begin; shot < end; ++shot) {
            const double u = rng.uniform() * total;
            std::size_t idx = static_cast<std::size_t>(
                std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
            idx = std::min(idx, outcomes - 1);
            if (rng.uniform() < accept[idx]) {
                ++result.counts[idx];
                ++result.accepted;
            }
        }
    }
    return result;
}

}  // namespace nogo::oracle
