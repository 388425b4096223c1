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
 * Measurement statistics for a joint system-device observable
 * O = sum_k S_k (x) M_k measured term by term in the product eigenbasis
 * |u_i v_j> of each term, optionally followed by postselection of the system
 * onto |phi>.
 *
 * Indices: k selects the term, i in [0, n) the system eigenvector, j in
 * [0, m) the device eigenvector. Eigenvectors follow the ordering and phase
 * conventions of spectral_decompose.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nogo/linalg.hpp"

namespace nogo {

/// Cutoff below which a postselection or outcome probability counts as zero.
inline constexpr double kTolProbability = 1e-12;

struct ProductTerm {
    Operator system;
    Operator device;
};

class JointObservable {
  public:
    /// Throws DimensionMismatch on inconsistent factor sizes and NonHermitian
    /// when a factor fails the Hermiticity check.
    JointObservable(std::size_t n, std::size_t m, std::vector<ProductTerm> terms);

    static JointObservable single(Operator system, Operator device);

    std::size_t system_dim() const { return n_; }
    std::size_t device_dim() const { return m_; }
    std::size_t size() const { return terms_.size(); }
    const ProductTerm &term(std::size_t k) const { return terms_.at(k); }
    const std::vector<ProductTerm> &terms() const { return terms_; }

    /// S_k (x) M_k as an nm x nm matrix.
    Operator term_matrix(std::size_t k) const;
    /// Sum of all term matrices.
    Operator matrix() const;

  private:
    std::size_t n_;
    std::size_t m_;
    std::vector<ProductTerm> terms_;
};

/// Spectral data of a single product term.
struct TermSpectrum {
    SpectralDecomposition system;
    SpectralDecomposition device;

    std::size_t n() const { return system.dim(); }
    std::size_t m() const { return device.dim(); }
    double u(std::size_t i) const { return system.eigenvalues.at(i); }
    double v(std::size_t j) const { return device.eigenvalues.at(j); }
    /// Product eigenvalue r_ij = u_i v_j.
    double r(std::size_t i, std::size_t j) const { return u(i) * v(j); }
    /// n x m grid of product eigenvalues, row i, column j.
    std::vector<std::vector<double>> r_grid() const;
    /// |u_i> (x) |v_j>
    Ket product_vector(std::size_t i, std::size_t j) const;
    /// Rank-one projector |u_i v_j><u_i v_j|.
    Operator projector(std::size_t i, std::size_t j) const;
    /// Columns are the product eigenvectors in flat order i * m + j.
    Operator transform() const;
};

struct ProductSpectralData {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<TermSpectrum> terms;
};

ProductSpectralData product_spectral(const JointObservable &observable,
                                     double tol_deg = kTolDegeneracy);

/// |phi><phi| (x) I_m
class PostselectionProjector {
  public:
    PostselectionProjector(Ket phi, std::size_t device_dim);

    const Ket &phi() const { return phi_; }
    const Operator &matrix() const { return matrix_; }

  private:
    Ket phi_;
    Operator matrix_;
};

/// Pure product preparation psi (x) xi, a joint observable and an optional
/// postselected system state. The product spectral data is computed once at
/// construction.
class MeasurementScenario {
  public:
    /// Throws DimensionMismatch on inconsistent sizes and InvalidState when a
    /// ket is not normalized within kTolNorm.
    MeasurementScenario(Ket psi, Ket xi, JointObservable observable,
                        std::optional<Ket> postselect = std::nullopt,
                        double tol_deg = kTolDegeneracy);

    const Ket &psi() const { return psi_; }
    const Ket &xi() const { return xi_; }
    const std::optional<Ket> &postselect() const { return postselect_; }
    const JointObservable &observable() const { return observable_; }
    const ProductSpectralData &spectral() const { return spectral_; }
    const TermSpectrum &term_spectrum(std::size_t k) const { return spectral_.terms.at(k); }
    double tol_deg() const { return tol_deg_; }

    std::size_t system_dim() const { return observable_.system_dim(); }
    std::size_t device_dim() const { return observable_.device_dim(); }

    Ket joint_state() const { return tensor(psi_, xi_); }
    /// |Psi><Psi|
    Operator density() const;
    /// Throws MissingPostselection when no postselected state is set.
    PostselectionProjector postselection_projector() const;

    MeasurementScenario with_postselect(std::optional<Ket> phi) const;

  private:
    Ket psi_;
    Ket xi_;
    JointObservable observable_;
    std::optional<Ket> postselect_;
    double tol_deg_;
    ProductSpectralData spectral_;
};

/// Tr[P_ij rho] = |<u_i|psi>|^2 |<v_j|xi>|^2
double outcome_probability(const MeasurementScenario &scenario, std::size_t k, std::size_t i,
                           std::size_t j);

/// sum_ij r_ij Tr[P_ij rho]
double expectation(const MeasurementScenario &scenario, std::size_t k);

/// Sum of the per-term expectations.
double observable_expectation(const MeasurementScenario &scenario);

/// Tr[Pi_phi P_ij rho P_ij], evaluated as |<u_i v_j|Psi>|^2 <u_i v_j|Pi_phi|u_i v_j>.
/// Throws MissingPostselection.
double joint_probability(const MeasurementScenario &scenario, std::size_t k, std::size_t i,
                         std::size_t j);

/// Denominator of the ABL ratio for term k: sum_ij Tr[Pi_phi P_ij rho P_ij].
double postselection_probability(const MeasurementScenario &scenario, std::size_t k);

/// ABL conditional probability P(r_ij | phi, rho). Throws ZeroProbability when
/// the postselection probability is at or below tol_p.
double abl_conditional_probability(const MeasurementScenario &scenario, std::size_t k,
                                   std::size_t i, std::size_t j, double tol_p = kTolProbability);

/// Postselected conditional expectation of term k.
double conditional_expectation(const MeasurementScenario &scenario, std::size_t k,
                               double tol_p = kTolProbability);

/// Sum of the per-term conditional expectations.
double observable_conditional_expectation(const MeasurementScenario &scenario,
                                          double tol_p = kTolProbability);

/// Density-operator forms; rho may be mixed.
double outcome_probability(const Operator &rho, const Operator &projector);
double joint_probability(const Operator &rho, const Operator &projector,
                         const Operator &postselection);

/// P rho P / Tr[P rho]; throws ZeroProbability if Tr[P rho] <= tol_p.
Operator luders_update(const Operator &rho, const Operator &projector,
                       double tol_p = kTolProbability);

/// <phi|A|psi> / <phi|psi>; throws OrthogonalPostselection if |<phi|psi>| <= tol_p.
Complex weak_value(const Ket &psi, const Ket &phi, const Operator &a,
                   double tol_p = kTolProbability);

namespace extension {

/// Conditional expectation of the whole observable measured in its own joint
/// eigenbasis, with Lueders projectors onto each eigenspace. This is not the
/// per-term quantity that the degeneracy theorem addresses, and no
/// postselection-independence is claimed for it.
double joint_eigenbasis_conditional_expectation(const MeasurementScenario &scenario,
                                                double tol_p = kTolProbability);

}  // namespace extension

}  // namespace nogo
