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

#include "nogo/measurement.hpp"

#include <cmath>
#include <string>

#include "nogo/errors.hpp"

namespace nogo {

// ---------------------------------------------------------------------------
// JointObservable

JointObservable::JointObservable(std::size_t n, std::size_t m, std::vector<ProductTerm> terms)
    : n_(n), m_(m), terms_(std::move(terms)) {
    if (n_ == 0 || m_ == 0) {
        throw DimensionMismatch("joint observable needs positive dimensions");
    }
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto &t = terms_[k];
        if (t.system.dim() != n_ || t.device.dim() != m_) {
            throw DimensionMismatch("term " + std::to_string(k) + " has factor dimensions " +
                                    std::to_string(t.system.dim()) + "x" +
                                    std::to_string(t.device.dim()) + ", expected " +
                                    std::to_string(n_) + "x" + std::to_string(m_));
        }
        if (!t.system.is_hermitian() || !t.device.is_hermitian()) {
            throw NonHermitian("term " + std::to_string(k) + " has a non-Hermitian factor");
        }
    }
}

JointObservable JointObservable::single(Operator system, Operator device) {
    const std::size_t n = system.dim();
    const std::size_t m = device.dim();
    return JointObservable(n, m, {ProductTerm{std::move(system), std::move(device)}});
}

Operator JointObservable::term_matrix(std::size_t k) const {
    const auto &t = terms_.at(k);
    return tensor(t.system, t.device);
}

Operator JointObservable::matrix() const {
    Operator sum(n_ * m_);
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        sum += term_matrix(k);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Spectral data

std::vector<std::vector<double>> TermSpectrum::r_grid() const {
    std::vector<std::vector<double>> grid(n(), std::vector<double>(m()));
    for (std::size_t i = 0; i < n(); ++i) {
        for (std::size_t j = 0; j < m(); ++j) {
            grid[i][j] = r(i, j);
        }
    }
    return grid;
}

Ket TermSpectrum::product_vector(std::size_t i, std::size_t j) const {
    return tensor(system.eigenvectors.at(i), device.eigenvectors.at(j));
}

Operator TermSpectrum::projector(std::size_t i, std::size_t j) const {
    return Operator::projector(product_vector(i, j));
}

Operator TermSpectrum::transform() const {
    std::vector<Ket> cols;
    cols.reserve(n() * m());
    for (std::size_t i = 0; i < n(); ++i) {
        for (std::size_t j = 0; j < m(); ++j) {
            cols.push_back(product_vector(i, j));
        }
    }
    return Operator::from_columns(cols);
}

ProductSpectralData product_spectral(const JointObservable &observable, double tol_deg) {
    ProductSpectralData data;
    data.n = observable.system_dim();
    data.m = observable.device_dim();
    data.terms.reserve(observable.size());
    for (const auto &t : observable.terms()) {
        data.terms.push_back(
            TermSpectrum{spectral_decompose(t.system, tol_deg), spectral_decompose(t.device, tol_deg)});
    }
    return data;
}

// ---------------------------------------------------------------------------
// Scenario

PostselectionProjector::PostselectionProjector(Ket phi, std::size_t device_dim)
    : phi_(std::move(phi)),
      matrix_(tensor(Operator::projector(phi_), Operator::identity(device_dim))) {}

namespace {

void require_normalized(const Ket &k, const char *name) {
    if (!k.is_normalized(kTolNorm)) {
        throw InvalidState(std::string(name) + " is not normalized (norm^2 = " +
                           std::to_string(k.norm_sq()) + ")");
    }
}

}  // namespace

MeasurementScenario::MeasurementScenario(Ket psi, Ket xi, JointObservable observable,
                                         std::optional<Ket> postselect, double tol_deg)
    : psi_(std::move(psi)),
      xi_(std::move(xi)),
      observable_(std::move(observable)),
      postselect_(std::move(postselect)),
      tol_deg_(tol_deg) {
    if (psi_.dim() != observable_.system_dim()) {
        throw DimensionMismatch("psi dimension does not match the system dimension");
    }
    if (xi_.dim() != observable_.device_dim()) {
        throw DimensionMismatch("xi dimension does not match the device dimension");
    }
    require_normalized(psi_, "psi");
    require_normalized(xi_, "xi");
    if (postselect_) {
        if (postselect_->dim() != observable_.system_dim()) {
            throw DimensionMismatch("phi dimension does not match the system dimension");
        }
        require_normalized(*postselect_, "phi");
    }
    spectral_ = product_spectral(observable_, tol_deg_);
}

Operator MeasurementScenario::density() const { return Operator::projector(joint_state()); }

PostselectionProjector MeasurementScenario::postselection_projector() const {
    if (!postselect_) {
        throw MissingPostselection("scenario has no postselected state");
    }
    return PostselectionProjector(*postselect_, device_dim());
}

MeasurementScenario MeasurementScenario::with_postselect(std::optional<Ket> phi) const {
    MeasurementScenario copy = *this;
    if (phi) {
        if (phi->dim() != system_dim()) {
            throw DimensionMismatch("phi dimension does not match the system dimension");
        }
        require_normalized(*phi, "phi");
    }
    copy.postselect_ = std::move(phi);
    return copy;
}

// ---------------------------------------------------------------------------
// Statistics

double outcome_probability(const MeasurementScenario &scenario, std::size_t k, std::size_t i,
                           std::size_t j) {
    const auto &ts = scenario.term_spectrum(k);
    const Complex psi_i = inner(ts.system.eigenvectors.at(i), scenario.psi());
    const Complex xi_j = inner(ts.device.eigenvectors.at(j), scenario.xi());
    return std::norm(psi_i * xi_j);
}

double expectation(const MeasurementScenario &scenario, std::size_t k) {
    const auto &ts = scenario.term_spectrum(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < ts.n(); ++i) {
        for (std::size_t j = 0; j < ts.m(); ++j) {
            sum += ts.r(i, j) * outcome_probability(scenario, k, i, j);
        }
    }
    return sum;
}

double observable_expectation(const MeasurementScenario &scenario) {
    double sum = 0.0;
    for (std::size_t k = 0; k < scenario.observable().size(); ++k) {
        sum += expectation(scenario, k);
    }
    return sum;
}

double joint_probability(const MeasurementScenario &scenario, std::size_t k, std::size_t i,
                         std::size_t j) {
    if (!scenario.postselect()) {
        throw MissingPostselection("joint_probability requires a postselected state");
    }
    const auto &ts = scenario.term_spectrum(k);
    const Ket &u_i = ts.system.eigenvectors.at(i);
    // <u_i v_j| (|phi><phi| (x) I) |u_i v_j> = |<phi|u_i>|^2
    const double overlap = std::norm(inner(*scenario.postselect(), u_i));
    return outcome_probability(scenario, k, i, j) * overlap;
}

double postselection_probability(const MeasurementScenario &scenario, std::size_t k) {
    const auto &ts = scenario.term_spectrum(k);
    double denom = 0.0;
    for (std::size_t i = 0; i < ts.n(); ++i) {
        for (std::size_t j = 0; j < ts.m(); ++j) {
            denom += joint_probability(scenario, k, i, j);
        }
    }
    return denom;
}

namespace {

double checked_denominator(const MeasurementScenario &scenario, std::size_t k, double tol_p) {
    const double denom = postselection_probability(scenario, k);
    if (!(denom > tol_p)) {
        throw ZeroProbability("postselection probability " + std::to_string(denom) +
                              " is below the cutoff for term " + std::to_string(k));
    }
    return denom;
}

}  // namespace

double abl_conditional_probability(const MeasurementScenario &scenario, std::size_t k,
                                   std::size_t i, std::size_t j, double tol_p) {
    const double denom = checked_denominator(scenario, k, tol_p);
    return joint_probability(scenario, k, i, j) / denom;
}

double conditional_expectation(const MeasurementScenario &scenario, std::size_t k, double tol_p) {
    const double denom = checked_denominator(scenario, k, tol_p);
    const auto &ts = scenario.term_spectrum(k);
    double numer = 0.0;
    for (std::size_t i = 0; i < ts.n(); ++i) {
        for (std::size_t j = 0; j < ts.m(); ++j) {
            numer += ts.r(i, j) * joint_probability(scenario, k, i, j);
        }
    }
    return numer / denom;
}

double observable_conditional_expectation(const MeasurementScenario &scenario, double tol_p) {
    double sum = 0.0;
    for (std::size_t k = 0; k < scenario.observable().size(); ++k) {
        sum += conditional_expectation(scenario, k, tol_p);
    }
    return sum;
}

double outcome_probability(const Operator &rho, const Operator &projector) {
    return (projector * rho).trace().real();
}

double joint_probability(const Operator &rho, const Operator &projector,
                         const Operator &postselection) {
    return (postselection * projector * rho * projector).trace().real();
}

Operator luders_update(const Operator &rho, const Operator &projector, double tol_p) {
    const double p = outcome_probability(rho, projector);
    if (!(p > tol_p)) {
        throw ZeroProbability("Lueders update on an outcome with probability " +
                              std::to_string(p));
    }
    Operator out = projector * rho * projector;
    out *= 1.0 / out.trace().real();
    return out;
}

Complex weak_value(const Ket &psi, const Ket &phi, const Operator &a, double tol_p) {
    const Complex overlap = inner(phi, psi);
    if (!(std::abs(overlap) > tol_p)) {
        throw OrthogonalPostselection("weak value undefined: <phi|psi> vanishes");
    }
    return matrix_element(phi, a, psi) / overlap;
}

namespace extension {

double joint_eigenbasis_conditional_expectation(const MeasurementScenario &scenario,
                                                double tol_p) {
    const Operator pi = scenario.postselection_projector().matrix();
    const SpectralDecomposition sd = spectral_decompose(scenario.observable().matrix(),
                                                        scenario.tol_deg());
    const Ket psi = scenario.joint_state();
    double numer = 0.0;
    double denom = 0.0;
    for (std::size_t g = 0; g < sd.eigenspace_groups.size(); ++g) {
        const Operator p = sd.group_projector(g);
        double value = 0.0;
        for (std::size_t idx : sd.eigenspace_groups[g]) {
            value += sd.eigenvalues[idx];
        }
        value /= static_cast<double>(sd.eigenspace_groups[g].size());
        const double joint = (pi * (p * psi)).norm_sq();
        numer += value * joint;
        denom += joint;
    }
    if (!(denom > tol_p)) {
        throw ZeroProbability("postselection incompatible with every eigenspace outcome");
    }
    return numer / denom;
}

}  // namespace extension

}  // namespace nogo
