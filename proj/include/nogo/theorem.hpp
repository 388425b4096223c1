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
 * Rank-m degeneracy analysis and mechanical checks of the postselection no-go
 * result: when every product eigenvalue column r_ij (fixed j) is constant in
 * i, and the postselection projector keeps its block-constant diagonal in the
 * product eigenbasis, the postselected conditional expectation equals the
 * plain expectation sum_j r~_j |<v_j|xi>|^2.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nogo/linalg.hpp"
#include "nogo/measurement.hpp"

namespace nogo {

inline constexpr double kTolVerify = 1e-9;

/// Rows i and i_prime disagree in column j.
struct DegeneracyWitness {
    std::size_t i = 0;
    std::size_t i_prime = 0;
    std::size_t j = 0;

    bool operator==(const DegeneracyWitness &) const = default;
};

struct TermDegeneracy {
    bool is_rank_m_degenerate = false;
    /// Column values r~_j; filled only when degenerate.
    std::vector<double> tilde_r;
    std::optional<DegeneracyWitness> witness;
    /// max_j (max_i r_ij - min_i r_ij)
    double max_spread = 0.0;
};

struct DegeneracyReport {
    std::vector<TermDegeneracy> terms;

    bool all_degenerate() const;
};

/// Works on the r grid directly, so a column with v_j = 0 is constant no
/// matter what the system eigenvalues are.
TermDegeneracy check_rank_m_degeneracy(const std::vector<std::vector<double>> &r_grid,
                                       double tol_deg = kTolDegeneracy);
DegeneracyReport check_rank_m_degeneracy(const ProductSpectralData &spectral,
                                         double tol_deg = kTolDegeneracy);

/// Change of basis from the canonical joint basis to a product eigenbasis,
/// together with the postselection projector expressed in that basis.
class BasisTransform {
  public:
    /// Throws NotUnitary if t is not unitary within 1e-10 and
    /// DimensionMismatch if t is not (n m) x (n m).
    BasisTransform(Operator t, const Ket &phi, std::size_t device_dim);

    static BasisTransform for_term(const TermSpectrum &term, const Ket &phi);

    const Operator &matrix() const { return t_; }
    /// T^dagger (|phi><phi| (x) I) T
    const Operator &transformed_projector() const { return transformed_; }

  private:
    Operator t_;
    Operator transformed_;
};

/// True iff the diagonal of T^dagger Pi_phi T is constant inside each of the
/// n consecutive blocks of length m, within tol.
bool check_basis_requirement(const BasisTransform &transform, const Ket &phi, std::size_t n,
                             std::size_t m, double tol = 1e-10);

struct TermVerdict {
    bool hypothesis_holds = false;
    bool basis_requirement_holds = false;
    double conditional = 0.0;
    double unconditional = 0.0;
    double postselection_probability = 0.0;
    /// sum_j r~_j |xi'_j|^2, present when the term is rank-m degenerate.
    std::optional<double> closed_form;
};

struct TheoremVerdict {
    /// Every term is rank-m degenerate.
    bool hypothesis_holds = false;
    /// Every term satisfies the basis requirement.
    bool basis_requirement_holds = false;
    double conditional = 0.0;
    double unconditional = 0.0;
    double gap = 0.0;
    std::optional<double> closed_form;
    /// Largest distance of either side from the closed form; 0 when absent.
    double closed_form_gap = 0.0;
    /// False when the hypotheses hold but the sides disagree beyond the
    /// tolerance passed to verify_nogo.
    bool consistent = true;
    std::vector<TermVerdict> terms;
    DegeneracyReport degeneracy;

    bool theorem_applies() const { return hypothesis_holds && basis_requirement_holds; }
    /// Hypotheses satisfied but the two sides (or the closed form) disagree.
    bool violated(double tol_verify = kTolVerify) const;
};

/// Throws ZeroProbability if some term's postselection probability is at or
/// below kTolProbability, MissingPostselection if phi is absent.
TheoremVerdict verify_nogo(const MeasurementScenario &scenario, double tol_deg = kTolDegeneracy,
                           double tol_verify = kTolVerify);

/// Both sides of the denominator and numerator identities of the proof for
/// one term. The left-hand sides are evaluated as operator traces.
struct AppendixIdentities {
    double denominator_lhs = 0.0;
    double denominator_rhs = 0.0;
    /// Present only for rank-m degenerate terms.
    std::optional<double> numerator_lhs;
    std::optional<double> numerator_rhs;
};

AppendixIdentities appendix_identities(const MeasurementScenario &scenario, std::size_t k,
                                       double tol_deg = kTolDegeneracy);

/// sum_k sum_j r~_j |xi_j|^2 using canonical amplitudes of xi. Requires every
/// factor operator to be diagonal (NotCanonical otherwise) and every term to be
/// rank-m degenerate (NotDegenerate otherwise).
double corollary1_value(const MeasurementScenario &scenario, double tol_deg = kTolDegeneracy,
                        double tol_diagonal = 1e-12);

struct Corollary2Result {
    bool is_fully_degenerate = false;
    Complex weak_value;
    std::optional<double> eigenvalue;
    /// |weak_value - eigenvalue| <= tol_verify; true when not degenerate.
    bool agrees = true;
};

Corollary2Result corollary2_check(const Ket &psi, const Ket &phi, const Operator &a,
                                  double tol_deg = kTolDegeneracy,
                                  double tol_verify = kTolVerify);

// ---------------------------------------------------------------------------
// Random audits

enum class AuditMode { Degenerate, Generic };

struct AuditOptions {
    AuditMode mode = AuditMode::Degenerate;
    std::size_t count = 1000;
    /// (n, m) choices; each instance picks one uniformly.
    std::vector<std::pair<std::size_t, std::size_t>> dims = {{2, 2}};
    std::uint64_t seed = 0;
    double tol_deg = kTolDegeneracy;
    double tol_verify = kTolVerify;
    /// Draws whose postselection probability falls below this are redrawn.
    double min_postselection = 1e-6;
};

struct AuditRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    bool hypothesis_holds = false;
    bool basis_requirement_holds = false;
    double conditional = 0.0;
    double unconditional = 0.0;
    double gap = 0.0;
    double closed_form_gap = 0.0;
    double postselection_probability = 0.0;
    bool violation = false;
};

struct AuditSummary {
    AuditOptions options;
    std::vector<AuditRecord> records;
    std::size_t skipped = 0;
    std::size_t violations = 0;
    double min_gap = 0.0;
    double median_gap = 0.0;
    double max_gap = 0.0;
};

/// Rebuilds the instance drawn from `instance_seed`. Degenerate mode uses one
/// or two terms c_k I (x) M_k; generic mode one term S (x) M with random
/// Hermitian factors. States are normalized complex Gaussian kets.
MeasurementScenario audit_instance(AuditMode mode, std::uint64_t instance_seed,
                                   const std::vector<std::pair<std::size_t, std::size_t>> &dims,
                                   double tol_deg = kTolDegeneracy);

AuditSummary run_random_audit(const AuditOptions &options);

}  // namespace nogo
