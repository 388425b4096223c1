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
 * Ozawa-style error and disturbance of a system measurement carried out
 * through a device coupled by a unitary U:
 *
 *   N_A = U^dagger (I (x) M) U - A (x) I      (noise operator)
 *   D_B = U^dagger (B (x) I) U - B (x) I      (disturbance operator)
 *   eps^2 = <Psi|N_A^2|Psi>,  eta^2 = <Psi|D_B^2|Psi>
 *
 * plus the postselected counterparts obtained by measuring N_A^2 and D_B^2 as
 * joint observables, and the CNOT-coupled qubit example.
 */

#pragma once

#include <optional>
#include <variant>

#include "nogo/linalg.hpp"
#include "nogo/measurement.hpp"
#include "nogo/theorem.hpp"

namespace nogo {

/// Coupling U = exp(-i t H_S (x) H_M).
struct HamiltonianCoupling {
    Operator system;
    Operator device;
    double t = 0.0;
};

class InteractionModel {
  public:
    /// Throws NotUnitary.
    static InteractionModel from_unitary(Operator unitary, std::size_t system_dim);
    /// Throws NonHermitian.
    static InteractionModel from_hamiltonians(Operator h_system, Operator h_device, double t);

    const Operator &unitary() const { return unitary_; }
    std::size_t system_dim() const { return n_; }
    std::size_t device_dim() const { return unitary_.dim() / n_; }
    /// The Hamiltonian form, when the model was built from one.
    const std::optional<HamiltonianCoupling> &coupling() const { return coupling_; }

  private:
    InteractionModel(Operator u, std::size_t n, std::optional<HamiltonianCoupling> coupling);

    Operator unitary_;
    std::size_t n_;
    std::optional<HamiltonianCoupling> coupling_;
};

struct MeasurementSetup {
    Operator a;  ///< measured system observable
    Operator b;  ///< disturbed system observable
    Operator m;  ///< device readout

    /// Throws NonHermitian or DimensionMismatch.
    void validate() const;
};

/// U^dagger O0 U
Operator heisenberg_evolve(const Operator &u, const Operator &o0);

/// O0 + i t [H_S (x) H_M, O0], the first-order expansion of the exact
/// evolution under exp(-i t H_S (x) H_M).
Operator first_order_expansion(const Operator &h_system, const Operator &h_device, double t,
                               const Operator &o0);

Operator noise_operator(const InteractionModel &model, const MeasurementSetup &setup);
Operator disturbance_operator(const InteractionModel &model, const MeasurementSetup &setup);

double mean_square_error(const InteractionModel &model, const MeasurementSetup &setup,
                         const Ket &psi, const Ket &xi);
double mean_square_disturbance(const InteractionModel &model, const MeasurementSetup &setup,
                               const Ket &psi, const Ket &xi);

/// Writes a Hermitian operator on C^n (x) C^m as sum_k S_k (x) M_k with
/// Hermitian factors, using the fewest terms (operator Schmidt decomposition
/// over orthonormal Hermitian bases). A term whose system factor is a
/// multiple of the identity is normalized to S_k = I. Throws NonDecomposable
/// when the terms fail to reconstruct the input within 1e-10.
JointObservable decompose_product_terms(const Operator &o, std::size_t n, std::size_t m,
                                        double tol = 1e-12);

/// Generalized Gell-Mann basis, orthonormal under Tr[A B]; element 0 is I/sqrt(d).
std::vector<Operator> hermitian_basis(std::size_t dim);

struct ErrorDisturbanceReport {
    double epsilon_sq = 0.0;
    double eta_sq = 0.0;
    double epsilon_sq_post = 0.0;
    double eta_sq_post = 0.0;
    Operator noise_op;
    Operator disturb_op;
    double nogo_gap_error = 0.0;
    double nogo_gap_disturbance = 0.0;
    TheoremVerdict error_verdict;
    TheoremVerdict disturbance_verdict;
};

/// Throws ZeroProbability if postselection onto phi is impossible for either
/// squared operator.
ErrorDisturbanceReport postselected_error_disturbance(const InteractionModel &model,
                                                      const MeasurementSetup &setup,
                                                      const Ket &psi, const Ket &xi,
                                                      const Ket &phi,
                                                      double tol_deg = kTolDegeneracy,
                                                      double tol_verify = kTolVerify);

/// Parameters of the CNOT example: measurement strength s in [0, 1] and the
/// postselected state cos(theta)|0> + e^{-i varphi} sin(theta)|1>.
struct CnotScenario {
    double s = 0.0;
    double theta = 0.0;
    double varphi = 0.0;
};

struct CnotBundle {
    MeasurementScenario error_scenario;        ///< observable N_Z^2
    MeasurementScenario disturbance_scenario;  ///< observable D_X^2
    InteractionModel model;
    MeasurementSetup setup;
    Ket psi;
    Ket xi;
    Ket phi;
};

/// psi = (|0> + i|1>)/sqrt 2, xi = sqrt((1+s)/2)|0> + sqrt((1-s)/2)|1>,
/// U = |0><0| (x) I + |1><1| (x) X, A = M = Z, B = X.
/// Throws std::invalid_argument if s is outside [0, 1].
CnotBundle cnot_scenario(const CnotScenario &params, double tol_deg = kTolDegeneracy);

Operator cnot_gate();

/// Columns |0+>, |0->, |1+>, |1-> as written for the disturbance eigenbasis
/// (second and fourth columns carry the opposite overall sign).
Operator cnot_disturbance_transform();

Ket cnot_postselection(double theta, double varphi);

}  // namespace nogo
