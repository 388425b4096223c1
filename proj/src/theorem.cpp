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

#include "nogo/theorem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nogo/errors.hpp"
#include "nogo/random.hpp"

namespace nogo {

// ---------------------------------------------------------------------------
// Degeneracy

bool DegeneracyReport::all_degenerate() const {
    return std::all_of(terms.begin(), terms.end(),
                       [](const TermDegeneracy &t) { return t.is_rank_m_degenerate; });
}

TermDegeneracy check_rank_m_degeneracy(const std::vector<std::vector<double>> &r_grid,
                                       double tol_deg) {
    TermDegeneracy out;
    if (r_grid.empty()) {
        out.is_rank_m_degenerate = true;
        return out;
    }
    const std::size_t n = r_grid.size();
    const std::size_t m = r_grid.front().size();
    for (const auto &row : r_grid) {
        if (row.size() != m) {
            throw DimensionMismatch("ragged eigenvalue grid");
        }
    }
    std::vector<double> column_means(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t lo = 0;
        std::size_t hi = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (r_grid[i][j] < r_grid[lo][j]) {
                lo = i;
            }
            if (r_grid[i][j] > r_grid[hi][j]) {
                hi = i;
            }
            column_means[j] += r_grid[i][j];
        }
        column_means[j] /= static_cast<double>(n);
        const double spread = r_grid[hi][j] - r_grid[lo][j];
        out.max_spread = std::max(out.max_spread, spread);
        if (spread > tol_deg && !out.witness) {
            out.witness = DegeneracyWitness{std::min(lo, hi), std::max(lo, hi), j};
        }
    }
    out.is_rank_m_degenerate = !out.witness.has_value();
    if (out.is_rank_m_degenerate) {
        out.tilde_r = std::move(column_means);
    }
    return out;
}

DegeneracyReport check_rank_m_degeneracy(const ProductSpectralData &spectral, double tol_deg) {
    DegeneracyReport report;
    for (const auto &t : spectral.terms) {
        report.terms.push_back(check_rank_m_degeneracy(t.r_grid(), tol_deg));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Basis requirement

BasisTransform::BasisTransform(Operator t, const Ket &phi, std::size_t device_dim)
    : t_(std::move(t)) {
    if (t_.dim() != phi.dim() * device_dim) {
        throw DimensionMismatch("transform dimension does not match phi (x) device");
    }
    if (!t_.is_unitary(1e-10)) {
        throw NotUnitary("basis transform is not unitary");
    }
    transformed_ = t_.adjoint() * PostselectionProjector(phi, device_dim).matrix() * t_;
}

BasisTransform BasisTransform::for_term(const TermSpectrum &term, const Ket &phi) {
    return BasisTransform(term.transform(), phi, term.m());
}

bool check_basis_requirement(const BasisTransform &transform, const Ket &phi, std::size_t n,
                             std::size_t m, double tol) {
    if (phi.dim() != n || transform.matrix().dim() != n * m) {
        throw DimensionMismatch("check_basis_requirement: dimensions disagree");
    }
    // Recomputed from phi so that a transform built for another state cannot pass.
    const Operator &t = transform.matrix();
    const Operator rotated = t.adjoint() * PostselectionProjector(phi, m).matrix() * t;
    for (std::size_t i = 0; i < n; ++i) {
        const double first = rotated(i * m, i * m).real();
        for (std::size_t j = 1; j < m; ++j) {
            if (std::abs(rotated(i * m + j, i * m + j).real() - first) > tol) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

double closed_form_for_term(const TermSpectrum &ts, const std::vector<double> &tilde_r,
                            const Ket &xi) {
    double sum = 0.0;
    for (std::size_t j = 0; j < ts.m(); ++j) {
        sum += tilde_r[j] * std::norm(inner(ts.device.eigenvectors[j], xi));
    }
    return sum;
}

}  // namespace

bool TheoremVerdict::violated(double tol_verify) const {
    return theorem_applies() && (gap > tol_verify || closed_form_gap > tol_verify);
}

TheoremVerdict verify_nogo(const MeasurementScenario &scenario, double tol_deg,
                           double tol_verify) {
    if (!scenario.postselect()) {
        throw MissingPostselection("verify_nogo requires a postselected state");
    }
    const Ket &phi = *scenario.postselect();
    TheoremVerdict verdict;
    verdict.degeneracy = check_rank_m_degeneracy(scenario.spectral(), tol_deg);
    verdict.hypothesis_holds = verdict.degeneracy.all_degenerate();
    verdict.basis_requirement_holds = true;

    double closed_sum = 0.0;
    for (std::size_t k = 0; k < scenario.observable().size(); ++k) {
        const auto &ts = scenario.term_spectrum(k);
        const auto &deg = verdict.degeneracy.terms[k];
        TermVerdict tv;
        tv.hypothesis_holds = deg.is_rank_m_degenerate;
        tv.basis_requirement_holds = check_basis_requirement(BasisTransform::for_term(ts, phi), phi,
                                                             ts.n(), ts.m());
        tv.postselection_probability = postselection_probability(scenario, k);
        tv.conditional = conditional_expectation(scenario, k);
        tv.unconditional = expectation(scenario, k);
        if (deg.is_rank_m_degenerate) {
            tv.closed_form = closed_form_for_term(ts, deg.tilde_r, scenario.xi());
            closed_sum += *tv.closed_form;
        }
        verdict.basis_requirement_holds = verdict.basis_requirement_holds && tv.basis_requirement_holds;
        verdict.conditional += tv.conditional;
        verdict.unconditional += tv.unconditional;
        verdict.terms.push_back(tv);
    }
    verdict.gap = std::abs(verdict.conditional - verdict.unconditional);
    if (verdict.hypothesis_holds) {
        verdict.closed_form = closed_sum;
        verdict.closed_form_gap = std::max(std::abs(verdict.conditional - closed_sum),
                                           std::abs(verdict.unconditional - closed_sum));
    }
    verdict.consistent = !verdict.violated(tol_verify);
    return verdict;
}

AppendixIdentities appendix_identities(const MeasurementScenario &scenario, std::size_t k,
                                       double tol_deg) {
    const auto &ts = scenario.term_spectrum(k);
    const Operator pi = scenario.postselection_projector().matrix();
    const Operator rho = scenario.density();
    const Ket &phi = *scenario.postselect();

    AppendixIdentities out;
    double numer_lhs = 0.0;
    for (std::size_t i = 0; i < ts.n(); ++i) {
        for (std::size_t j = 0; j < ts.m(); ++j) {
            const double tr = joint_probability(rho, ts.projector(i, j), pi);
            out.denominator_lhs += tr;
            numer_lhs += ts.r(i, j) * tr;
        }
    }
    for (std::size_t i = 0; i < ts.n(); ++i) {
        const Ket &u_i = ts.system.eigenvectors[i];
        out.denominator_rhs += std::norm(inner(u_i, scenario.psi())) * std::norm(inner(u_i, phi));
    }
    const TermDegeneracy deg = check_rank_m_degeneracy(ts.r_grid(), tol_deg);
    if (deg.is_rank_m_degenerate) {
        out.numerator_lhs = numer_lhs;
        out.numerator_rhs = closed_form_for_term(ts, deg.tilde_r, scenario.xi()) * out.denominator_rhs;
    }
    return out;
}

double corollary1_value(const MeasurementScenario &scenario, double tol_deg,
                        double tol_diagonal) {
    const auto &obs = scenario.observable();
    const std::size_t n = obs.system_dim();
    const std::size_t m = obs.device_dim();
    double value = 0.0;
    for (std::size_t k = 0; k < obs.size(); ++k) {
        const auto &t = obs.term(k);
        if (!t.system.is_diagonal(tol_diagonal) || !t.device.is_diagonal(tol_diagonal)) {
            throw NotCanonical("term " + std::to_string(k) + " is not diagonal in the canonical basis");
        }
        std::vector<std::vector<double>> grid(n, std::vector<double>(m));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                grid[i][j] = t.system(i, i).real() * t.device(j, j).real();
            }
        }
        const TermDegeneracy deg = check_rank_m_degeneracy(grid, tol_deg);
        if (!deg.is_rank_m_degenerate) {
            throw NotDegenerate("term " + std::to_string(k) + " is not rank-m degenerate");
        }
        for (std::size_t j = 0; j < m; ++j) {
            value += deg.tilde_r[j] * std::norm(scenario.xi()[j]);
        }
    }
    return value;
}

Corollary2Result corollary2_check(const Ket &psi, const Ket &phi, const Operator &a,
                                  double tol_deg, double tol_verify) {
    Corollary2Result out;
    out.weak_value = weak_value(psi, phi, a);
    const SpectralDecomposition sd = spectral_decompose(a, tol_deg);
    const double spread = sd.eigenvalues.back() - sd.eigenvalues.front();
    out.is_fully_degenerate = spread <= tol_deg;
    if (out.is_fully_degenerate) {
        double mean = 0.0;
        for (double v : sd.eigenvalues) {
            mean += v;
        }
        mean /= static_cast<double>(sd.dim());
        out.eigenvalue = mean;
        out.agrees = std::abs(out.weak_value - Complex{mean, 0.0}) <= tol_verify;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random audits

MeasurementScenario audit_instance(AuditMode mode, std::uint64_t instance_seed,
                                   const std::vector<std::pair<std::size_t, std::size_t>> &dims,
                                   double tol_deg) {
    if (dims.empty()) {
        throw DimensionMismatch("audit needs at least one (n, m) choice");
    }
    Rng rng(instance_seed);
    const auto [n, m] = dims[static_cast<std::size_t>(rng.next_u64() % dims.size())];
    std::vector<ProductTerm> terms;
    if (mode == AuditMode::Degenerate) {
        const std::size_t count = 1 + static_cast<std::size_t>(rng.next_u64() % 2);
        for (std::size_t k = 0; k < count; ++k) {
            const double c = rng.uniform(-2.0, 2.0);
            terms.push_back({Complex{c, 0.0} * Operator::identity(n), random_hermitian(rng, m)});
        }
    } else {
        terms.push_back({random_hermitian(rng, n), random_hermitian(rng, m)});
    }
    Ket psi = random_ket(rng, n);
    Ket xi = random_ket(rng, m);
    Ket phi = random_ket(rng, n);
    return MeasurementScenario(std::move(psi), std::move(xi), JointObservable(n, m, std::move(terms)),
                               std::move(phi), tol_deg);
}

AuditSummary run_random_audit(const AuditOptions &options) {
    AuditSummary summary;
    summary.options = options;
    std::uint64_t attempt = 0;
    // Redraw budget guards against a min_postselection no draw can satisfy.
    const std::uint64_t max_attempts = 100 * static_cast<std::uint64_t>(options.count) + 100;
    while (summary.records.size() < options.count && attempt < max_attempts) {
        const std::uint64_t seed = derive_seed(options.seed, attempt++);
        const MeasurementScenario sc = audit_instance(options.mode, seed, options.dims, options.tol_deg);
        double min_post = 1.0;
        for (std::size_t k = 0; k < sc.observable().size(); ++k) {
            min_post = std::min(min_post, postselection_probability(sc, k));
        }
        if (min_post < options.min_postselection) {
            ++summary.skipped;
            continue;
        }
        const TheoremVerdict v = verify_nogo(sc, options.tol_deg, options.tol_verify);
        AuditRecord rec;
        rec.index = summary.records.size();
        rec.seed = seed;
        rec.n = sc.system_dim();
        rec.m = sc.device_dim();
        rec.hypothesis_holds = v.hypothesis_holds;
        rec.basis_requirement_holds = v.basis_requirement_holds;
        rec.conditional = v.conditional;
        rec.unconditional = v.unconditional;
        rec.gap = v.gap;
        rec.closed_form_gap = v.closed_form_gap;
        rec.postselection_probability = min_post;
        rec.violation = options.mode == AuditMode::Degenerate &&
                        (!v.theorem_applies() || v.violated(options.tol_verify));
        summary.violations += rec.violation ? 1 : 0;
        summary.records.push_back(rec);
    }
    if (!summary.records.empty()) {
        std::vector<double> gaps;
        gaps.reserve(summary.records.size());
        for (const auto &r : summary.records) {
            gaps.push_back(r.gap);
        }
        std::sort(gaps.begin(), gaps.end());
        summary.min_gap = gaps.front();
        summary.max_gap = gaps.back();
        const std::size_t mid = gaps.size() / 2;
        summary.median_gap = gaps.size() % 2 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
    }
    return summary;
}

}  // namespace nogo
