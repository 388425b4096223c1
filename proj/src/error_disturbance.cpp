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

#include "nogo/error_disturbance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nogo/errors.hpp"

namespace nogo {

// ---------------------------------------------------------------------------
// Interaction and setup

InteractionModel::InteractionModel(Operator u, std::size_t n,
                                   std::optional<HamiltonianCoupling> coupling)
    : unitary_(std::move(u)), n_(n), coupling_(std::move(coupling)) {}

InteractionModel InteractionModel::from_unitary(Operator unitary, std::size_t system_dim) {
    if (system_dim == 0 || unitary.dim() % system_dim != 0) {
        throw DimensionMismatch("unitary dimension is not a multiple of the system dimension");
    }
    if (!unitary.is_unitary(1e-10)) {
        throw NotUnitary("interaction is not unitary");
    }
    return InteractionModel(std::move(unitary), system_dim, std::nullopt);
}

InteractionModel InteractionModel::from_hamiltonians(Operator h_system, Operator h_device,
                                                     double t) {
    if (!h_system.is_hermitian() || !h_device.is_hermitian()) {
        throw NonHermitian("coupling Hamiltonians must be Hermitian");
    }
    const std::size_t n = h_system.dim();
    Operator u = matrix_exponential_skew(tensor(h_system, h_device), t);
    if (!u.is_unitary(1e-10)) {
        throw NotUnitary("exponentiated coupling is not unitary");
    }
    return InteractionModel(std::move(u), n,
                            HamiltonianCoupling{std::move(h_system), std::move(h_device), t});
}

void MeasurementSetup::validate() const {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("A and B act on different system dimensions");
    }
    if (!a.is_hermitian() || !b.is_hermitian() || !m.is_hermitian()) {
        throw NonHermitian("measurement setup operators must be Hermitian");
    }
}

namespace {

void check_model_setup(const InteractionModel &model, const MeasurementSetup &setup) {
    setup.validate();
    if (setup.a.dim() != model.system_dim() || setup.m.dim() != model.device_dim()) {
        throw DimensionMismatch("setup operators do not match the interaction dimensions");
    }
}

double quadratic_form(const Operator &op, const Ket &psi, const Ket &xi) {
    if (!psi.is_normalized() || !xi.is_normalized()) {
        throw InvalidState("psi and xi must be normalized");
    }
    const Ket joint = tensor(psi, xi);
    if (joint.dim() != op.dim()) {
        throw DimensionMismatch("state dimension does not match the operator");
    }
    return matrix_element(joint, op, joint).real();
}

}  // namespace

Operator heisenberg_evolve(const Operator &u, const Operator &o0) {
    if (u.dim() != o0.dim()) {
        throw DimensionMismatch("heisenberg_evolve: U and O0 differ in dimension");
    }
    return u.adjoint() * o0 * u;
}

Operator first_order_expansion(const Operator &h_system, const Operator &h_device, double t,
                               const Operator &o0) {
    const Operator h = tensor(h_system, h_device);
    if (h.dim() != o0.dim()) {
        throw DimensionMismatch("first_order_expansion: coupling and O0 differ in dimension");
    }
    return o0 + Complex{0.0, t} * commutator(h, o0);
}

Operator noise_operator(const InteractionModel &model, const MeasurementSetup &setup) {
    check_model_setup(model, setup);
    const std::size_t n = model.system_dim();
    const std::size_t m = model.device_dim();
    const Operator m_t = heisenberg_evolve(model.unitary(), tensor(Operator::identity(n), setup.m));
    return m_t - tensor(setup.a, Operator::identity(m));
}

Operator disturbance_operator(const InteractionModel &model, const MeasurementSetup &setup) {
    check_model_setup(model, setup);
    const Operator b0 = tensor(setup.b, Operator::identity(model.device_dim()));
    return heisenberg_evolve(model.unitary(), b0) - b0;
}

double mean_square_error(const InteractionModel &model, const MeasurementSetup &setup,
                         const Ket &psi, const Ket &xi) {
    const Operator n = noise_operator(model, setup);
    return quadratic_form(n * n, psi, xi);
}

double mean_square_disturbance(const InteractionModel &model, const MeasurementSetup &setup,
                               const Ket &psi, const Ket &xi) {
    const Operator d = disturbance_operator(model, setup);
    return quadratic_form(d * d, psi, xi);
}

// ---------------------------------------------------------------------------
// Product-term decomposition

std::vector<Operator> hermitian_basis(std::size_t dim) {
    std::vector<Operator> basis;
    basis.reserve(dim * dim);
    basis.push_back(Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0} *
                    Operator::identity(dim));
    const double r2 = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = j + 1; k < dim; ++k) {
            Operator sym(dim);
            sym(j, k) = r2;
            sym(k, j) = r2;
            basis.push_back(sym);
            Operator anti(dim);
            anti(j, k) = Complex{0.0, -r2};
            anti(k, j) = Complex{0.0, r2};
            basis.push_back(anti);
        }
    }
    for (std::size_t l = 1; l < dim; ++l) {
        Operator d(dim);
        const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
        for (std::size_t j = 0; j < l; ++j) {
            d(j, j) = scale;
        }
        d(l, l) = -static_cast<double>(l) * scale;
        basis.push_back(d);
    }
    return basis;
}

namespace {

Operator partial_trace_system(const Operator &o, std::size_t n, std::size_t m) {
    Operator out(m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t l = 0; l < m; ++l) {
                out(j, l) += o(i * m + j, i * m + l);
            }
        }
    }
    return out;
}

double max_abs_entry(const Operator &o) { return max_abs_diff(o, Operator::zero(o.dim())); }

// Returns c when op = c I within tol.
std::optional<double> identity_multiple(const Operator &op, double tol) {
    const double c = op(0, 0).real();
    if (max_abs_diff(op, Complex{c, 0.0} * Operator::identity(op.dim())) <= tol) {
        return c;
    }
    return std::nullopt;
}

void require_reconstruction(const JointObservable &obs, const Operator &o) {
    const double err = max_abs_diff(obs.matrix(), o);
    if (err > 1e-10 * std::max(1.0, max_abs_entry(o))) {
        throw NonDecomposable("product-term decomposition misses the operator by " +
                              std::to_string(err));
    }
}

}  // namespace

JointObservable decompose_product_terms(const Operator &o, std::size_t n, std::size_t m,
                                        double tol) {
    if (n == 0 || m == 0 || o.dim() != n * m) {
        throw DimensionMismatch("decompose_product_terms: operator is not (n m) x (n m)");
    }
    if (!o.is_hermitian(1e-10)) {
        throw NonHermitian("decompose_product_terms: operator is not Hermitian");
    }
    const double scale = std::max(1.0, max_abs_entry(o));

    // Single term I (x) M first.
    Operator device = partial_trace_system(o, n, m);
    device *= 1.0 / static_cast<double>(n);
    device = 0.5 * (device + device.adjoint());
    if (max_abs_diff(tensor(Operator::identity(n), device), o) <= tol * scale) {
        return JointObservable::single(Operator::identity(n), device);
    }

    const std::vector<Operator> gs = hermitian_basis(n);
    const std::vector<Operator> hs = hermitian_basis(m);
    const std::size_t na = gs.size();
    const std::size_t nb = hs.size();
    std::vector<std::vector<double>> coeff(na, std::vector<double>(nb));
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
            coeff[a][b] = (tensor(gs[a], hs[b]) * o).trace().real();
        }
    }
    // Left singular vectors of coeff from coeff coeff^T.
    Operator gram(na);
    for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t c = 0; c < na; ++c) {
            double s = 0.0;
            for (std::size_t b = 0; b < nb; ++b) {
                s += coeff[a][b] * coeff[c][b];
            }
            gram(a, c) = s;
        }
    }
    const SpectralDecomposition sd = spectral_decompose(gram);

    std::vector<ProductTerm> terms;
    for (std::size_t idx = sd.dim(); idx-- > 0;) {
        const Ket &left = sd.eigenvectors[idx];
        std::vector<double> partner(nb, 0.0);
        double partner_norm_sq = 0.0;
        for (std::size_t b = 0; b < nb; ++b) {
            for (std::size_t a = 0; a < na; ++a) {
                partner[b] += coeff[a][b] * left[a].real();
            }
            partner_norm_sq += partner[b] * partner[b];
        }
        if (std::sqrt(partner_norm_sq) <= tol * scale) {
            continue;
        }
        Operator s_k(n);
        for (std::size_t a = 0; a < na; ++a) {
            s_k += Complex{left[a].real(), 0.0} * gs[a];
        }
        Operator m_k(m);
        for (std::size_t b = 0; b < nb; ++b) {
            m_k += Complex{partner[b], 0.0} * hs[b];
        }
        if (const auto c = identity_multiple(s_k, 1e-14)) {
            m_k *= *c;
            s_k = Operator::identity(n);
        }
        terms.push_back({std::move(s_k), std::move(m_k)});
    }
    if (terms.empty()) {
        terms.push_back({Operator::identity(n), Operator::zero(m)});
    }
    JointObservable obs(n, m, std::move(terms));
    require_reconstruction(obs, o);
    return obs;
}

// ---------------------------------------------------------------------------
// Postselected report

ErrorDisturbanceReport postselected_error_disturbance(const InteractionModel &model,
                                                      const MeasurementSetup &setup,
                                                      const Ket &psi, const Ket &xi,
                                                      const Ket &phi, double tol_deg,
                                                      double tol_verify) {
    const std::size_t n = model.system_dim();
    const std::size_t m = model.device_dim();
    ErrorDisturbanceReport report;
    report.noise_op = noise_operator(model, setup);
    report.disturb_op = disturbance_operator(model, setup);
    const Operator noise_sq = report.noise_op * report.noise_op;
    const Operator disturb_sq = report.disturb_op * report.disturb_op;
    report.epsilon_sq = quadratic_form(noise_sq, psi, xi);
    report.eta_sq = quadratic_form(disturb_sq, psi, xi);

    const MeasurementScenario err(psi, xi, decompose_product_terms(noise_sq, n, m), phi, tol_deg);
    const MeasurementScenario dis(psi, xi, decompose_product_terms(disturb_sq, n, m), phi, tol_deg);
    report.error_verdict = verify_nogo(err, tol_deg, tol_verify);
    report.disturbance_verdict = verify_nogo(dis, tol_deg, tol_verify);
    report.epsilon_sq_post = report.error_verdict.conditional;
    report.eta_sq_post = report.disturbance_verdict.conditional;
    report.nogo_gap_error = report.error_verdict.gap;
    report.nogo_gap_disturbance = report.disturbance_verdict.gap;
    return report;
}

// ---------------------------------------------------------------------------
// CNOT example

Operator cnot_gate() {
    return Operator{{1.0, 0.0, 0.0, 0.0},
                    {0.0, 1.0, 0.0, 0.0},
                    {0.0, 0.0, 0.0, 1.0},
                    {0.0, 0.0, 1.0, 0.0}};
}

Operator cnot_disturbance_transform() {
    const double r = 1.0 / std::sqrt(2.0);
    return Operator{{r, -r, 0.0, 0.0},
                    {r, r, 0.0, 0.0},
                    {0.0, 0.0, r, -r},
                    {0.0, 0.0, r, r}};
}

Ket cnot_postselection(double theta, double varphi) {
    return Ket{Complex{std::cos(theta), 0.0},
               std::exp(Complex{0.0, -varphi}) * std::sin(theta)};
}

CnotBundle cnot_scenario(const CnotScenario &params, double tol_deg) {
    if (!(params.s >= 0.0 && params.s <= 1.0)) {
        throw std::invalid_argument("measurement strength s must lie in [0, 1]");
    }
    const double r = 1.0 / std::sqrt(2.0);
    Ket psi{Complex{r, 0.0}, Complex{0.0, r}};
    Ket xi{std::sqrt((1.0 + params.s) / 2.0), std::sqrt((1.0 - params.s) / 2.0)};
    Ket phi = cnot_postselection(params.theta, params.varphi);
    InteractionModel model = InteractionModel::from_unitary(cnot_gate(), 2);
    MeasurementSetup setup{pauli::Z(), pauli::X(), pauli::Z()};

    const Operator noise = noise_operator(model, setup);
    const Operator disturb = disturbance_operator(model, setup);
    MeasurementScenario err(psi, xi, decompose_product_terms(noise * noise, 2, 2), phi, tol_deg);
    MeasurementScenario dis(psi, xi, decompose_product_terms(disturb * disturb, 2, 2), phi,
                            tol_deg);
    return CnotBundle{std::move(err), std::move(dis), std::move(model), std::move(setup),
                      std::move(psi), std::move(xi), std::move(phi)};
}

}  // namespace nogo
