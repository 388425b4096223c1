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

#include <gtest/gtest.h>

#include "nogo/error_disturbance.hpp"
#include "nogo/errors.hpp"
#include "nogo/random.hpp"
#include "test_util.hpp"

using namespace nogo;
using namespace nogo::testing;

namespace {

const Ket kZero{Complex(1.0), Complex(0.0)};
const Ket kPlus{Complex(kInvSqrt2), Complex(kInvSqrt2)};

Operator swap_gate() {
    Operator s(4);
    s(0, 0) = 1.0;
    s(1, 2) = 1.0;
    s(2, 1) = 1.0;
    s(3, 3) = 1.0;
    return s;
}

/// Seeded draw (Rng 2024, 4 x 4) rounded to 17 digits; mixes the system blocks.
Operator frozen_mixing_unitary() {
    return Operator{
        {Complex(0.073536442043971195, -0.25480997004691225),
         Complex(-0.49454462774663754, -0.15287380454167712),
         Complex(0.52840361552203197, -0.59645532727815853),
         Complex(-0.14725667998157216, 0.071173125360998693)},
        {Complex(-0.22040615333738622, 0.37647086687553161),
         Complex(-0.34595291831402103, -0.16098393858531662),
         Complex(-0.19154457929420476, -0.025474396657011199),
         Complex(-0.35796509347925409, -0.70612625280535346)},
        {Complex(0.54373391097801127, 0.65900071384267278),
         Complex(0.026147028202228369, 0.047999717416277628),
         Complex(0.038848222278601227, -0.31878892048390006),
         Complex(0.40238055194437461, -0.045146256444979112)},
        {Complex(-0.088658596015238678, -0.039575641260987462),
         Complex(0.44594165636221483, 0.62016478458917501),
         Complex(0.45230866575736844, -0.14132834678863218),
         Complex(-0.11998310234546407, -0.41006380658882113)}};
}

/// diag(T^dagger (|phi><phi| (x) I) T) by explicit products.
std::vector<double> transformed_diagonal(const Operator &t, const Ket &phi, std::size_t m) {
    const Operator pi = naive_kron(Operator::outer(phi, phi), Operator::identity(m));
    const Operator tp = naive_product(naive_product(naive_adjoint(t), pi), t);
    std::vector<double> d;
    for (std::size_t i = 0; i < tp.dim(); ++i) {
        d.push_back(tp(i, i).real());
    }
    return d;
}

}  // namespace

TEST(Degeneracy, column_constant_grid) {
    const auto t = check_rank_m_degeneracy({{0.0, 4.0}, {0.0, 4.0}});
    EXPECT_TRUE(t.is_rank_m_degenerate);
    EXPECT_EQ(t.tilde_r, (std::vector<double>{0.0, 4.0}));
    EXPECT_FALSE(t.witness.has_value());
    EXPECT_EQ(t.max_spread, 0.0);
}

TEST(Degeneracy, distinct_values_report_witness) {
    const auto t = check_rank_m_degeneracy({{1.0, 2.0}, {3.0, 4.0}});
    EXPECT_FALSE(t.is_rank_m_degenerate);
    ASSERT_TRUE(t.witness.has_value());
    EXPECT_EQ(*t.witness, (DegeneracyWitness{0, 1, 0}));
    EXPECT_DOUBLE_EQ(t.max_spread, 2.0);
}

TEST(Degeneracy, tolerance_boundary) {
    EXPECT_TRUE(check_rank_m_degeneracy({{1.0, 2.0}, {1.0 + 5e-10, 2.0}}).is_rank_m_degenerate);
    EXPECT_FALSE(check_rank_m_degeneracy({{1.0, 2.0}, {1.0 + 5e-9, 2.0}}).is_rank_m_degenerate);
    EXPECT_TRUE(
        check_rank_m_degeneracy({{1.0, 2.0}, {1.0 + 5e-9, 2.0}}, 1e-8).is_rank_m_degenerate);
}

TEST(Degeneracy, zero_device_eigenvalue_column) {
    // S = diag(1, 3), M = diag(0, 1): column 0 is constant, column 1 is not.
    const auto data = product_spectral(
        JointObservable::single(Operator::diagonal({1.0, 3.0}), Operator::diagonal({0.0, 1.0})));
    const auto t = check_rank_m_degeneracy(data.terms[0].r_grid());
    EXPECT_FALSE(t.is_rank_m_degenerate);
    EXPECT_EQ(*t.witness, (DegeneracyWitness{0, 1, 1}));
}

TEST(DegeneracyProperty, identity_system_factor_always_passes) {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 2;
        const std::size_t m = 2 + (trial / 2) % 2;
        const auto data =
            product_spectral(JointObservable::single(Operator::identity(n), random_hermitian(rng, m)));
        EXPECT_TRUE(check_rank_m_degeneracy(data).all_degenerate());
    }
}

TEST(BasisRequirement, canonical_basis) {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const Ket phi = random_ket(rng, 3);
        const BasisTransform t(Operator::identity(6), phi, 2);
        EXPECT_TRUE(check_basis_requirement(t, phi, 3, 2));
    }
}

TEST(BasisRequirement, disturbance_transform) {
    const Operator t = cnot_disturbance_transform();
    for (double theta : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}) {
        for (double varphi : {0.0, kPi / 3, kPi}) {
            const Ket phi = cnot_postselection(theta, varphi);
            const BasisTransform bt(t, phi, 2);
            EXPECT_TRUE(check_basis_requirement(bt, phi, 2, 2));
            const double c2 = std::cos(theta) * std::cos(theta);
            const double s2 = std::sin(theta) * std::sin(theta);
            const auto diag = bt.transformed_projector().diagonal_entries();
            const auto oracle = transformed_diagonal(t, phi, 2);
            const std::vector<double> expected{c2, c2, s2, s2};
            for (std::size_t i = 0; i < 4; ++i) {
                EXPECT_NEAR(diag[i].real(), expected[i], 1e-12);
                EXPECT_NEAR(oracle[i], expected[i], 1e-12);
            }
        }
    }
}

TEST(BasisRequirement, swap_breaks_block_structure) {
    const Ket phi = cnot_postselection(kPi / 8, 0.0);
    const BasisTransform bt(swap_gate(), phi, 2);
    EXPECT_FALSE(check_basis_requirement(bt, phi, 2, 2));
    const auto oracle = transformed_diagonal(swap_gate(), phi, 2);
    EXPECT_GT(std::abs(oracle[0] - oracle[1]), 0.1);
}

TEST(BasisRequirement, frozen_mixing_unitary) {
    const Operator u = frozen_mixing_unitary();
    ASSERT_TRUE(u.is_unitary());
    const Ket phi = cnot_postselection(kPi / 8, 0.0);
    EXPECT_FALSE(check_basis_requirement(BasisTransform(u, phi, 2), phi, 2, 2));
    const auto d = transformed_diagonal(u, phi, 2);
    EXPECT_GT(std::abs(d[2] - d[3]), 0.05);
}

TEST(BasisRequirement, rejects_bad_transforms) {
    EXPECT_THROW(BasisTransform(2.0 * Operator::identity(4), kZero, 2), NotUnitary);
    EXPECT_THROW(BasisTransform(Operator::identity(6), kZero, 2), DimensionMismatch);
}

TEST(VerifyNogo, cnot_error_square) {
    for (double s : {0.0, 0.5, 1.0}) {
        const CnotBundle b = cnot_scenario({s, kPi / 8, kPi / 3});
        const auto v = verify_nogo(b.error_scenario);
        EXPECT_TRUE(v.hypothesis_holds);
        EXPECT_TRUE(v.basis_requirement_holds);
        EXPECT_NEAR(v.conditional, 2.0 * (1.0 - s), 1e-12);
        EXPECT_NEAR(v.unconditional, 2.0 * (1.0 - s), 1e-12);
        ASSERT_TRUE(v.closed_form.has_value());
        EXPECT_NEAR(*v.closed_form, 2.0 * (1.0 - s), 1e-12);
        EXPECT_TRUE(v.consistent);
        EXPECT_FALSE(v.violated());
    }
}

TEST(VerifyNogo, identity_system_with_device_eigenstate) {
    const MeasurementScenario sc(kPlus, kZero, JointObservable::single(pauli::I(), pauli::Z()),
                                 kZero);
    const auto v = verify_nogo(sc);
    EXPECT_TRUE(v.theorem_applies());
    EXPECT_NEAR(v.gap, 0.0, 1e-15);
    EXPECT_NEAR(v.conditional, 1.0, 1e-15);
}

TEST(VerifyNogo, frozen_generic_counterexample) {
    // Generic-mode instance 2 of seed 2026; the same draw ships as a CLI fixture.
    const auto sc = audit_instance(AuditMode::Generic, derive_seed(2026, 2), {{2, 2}});
    const auto v = verify_nogo(sc);
    EXPECT_FALSE(v.hypothesis_holds);
    EXPECT_GT(v.gap, 0.01);
    EXPECT_NEAR(v.gap, 0.3312757368378594, 1e-12);
    EXPECT_TRUE(v.consistent);
    EXPECT_FALSE(v.closed_form.has_value());
}

TEST(VerifyNogo, missing_and_impossible_postselection) {
    const MeasurementScenario none(kZero, kZero, JointObservable::single(pauli::Z(), pauli::Z()));
    EXPECT_THROW(verify_nogo(none), MissingPostselection);
    const MeasurementScenario orth(kZero, kZero, JointObservable::single(pauli::Z(), pauli::Z()),
                                   Ket{0.0, 1.0});
    EXPECT_THROW(verify_nogo(orth), ZeroProbability);
}

TEST(AppendixIdentities, cnot_terms) {
    for (double theta : {0.0, kPi / 4, kPi / 2}) {
        const CnotBundle b = cnot_scenario({0.6, theta, kPi / 3});
        for (const auto *sc : {&b.error_scenario, &b.disturbance_scenario}) {
            const auto a = appendix_identities(*sc, 0);
            EXPECT_NEAR(a.denominator_lhs, 0.5, 1e-12);
            EXPECT_NEAR(a.denominator_rhs, 0.5, 1e-12);
            ASSERT_TRUE(a.numerator_lhs && a.numerator_rhs);
            EXPECT_NEAR(*a.numerator_lhs, *a.numerator_rhs, 1e-10);
        }
    }
}

TEST(AppendixIdentitiesProperty, degenerate_random_instances) {
    const std::vector<std::pair<std::size_t, std::size_t>> dims{{2, 2}, {2, 3}, {3, 2}, {3, 3}};
    for (std::uint64_t k = 0; k < 200; ++k) {
        const auto sc = audit_instance(AuditMode::Degenerate, derive_seed(55, k), dims);
        for (std::size_t t = 0; t < sc.observable().size(); ++t) {
            const auto a = appendix_identities(sc, t);
            EXPECT_NEAR(a.denominator_lhs, a.denominator_rhs, 1e-10);
            ASSERT_TRUE(a.numerator_lhs.has_value());
            EXPECT_NEAR(*a.numerator_lhs, *a.numerator_rhs, 1e-10);
        }
    }
}

TEST(Corollary1, error_square_closed_form) {
    for (double s : {0.0, 0.3, 1.0}) {
        const CnotBundle b = cnot_scenario({s, 0.2, 0.0});
        EXPECT_NEAR(corollary1_value(b.error_scenario), 2.0 * (1.0 - s), 1e-12);
    }
}

TEST(Corollary1, fully_degenerate_and_eigenstate_device) {
    Rng rng(9);
    const Ket xi = random_ket(rng, 2);
    const MeasurementScenario flat(kPlus, xi,
                                   JointObservable::single(pauli::I(), 1.7 * pauli::I()), kZero);
    EXPECT_NEAR(corollary1_value(flat), 1.7, 1e-12);
    const MeasurementScenario eig(kPlus, kZero,
                                  JointObservable::single(pauli::I(), Operator::diagonal({0, 4})),
                                  kPlus);
    EXPECT_NEAR(corollary1_value(eig), 0.0, 1e-15);
}

TEST(Corollary1, preconditions) {
    const MeasurementScenario rotated(kPlus, kZero,
                                      JointObservable::single(pauli::I(), pauli::X()), kZero);
    EXPECT_THROW(corollary1_value(rotated), NotCanonical);
    const MeasurementScenario generic(kPlus, kZero,
                                      JointObservable::single(pauli::Z(), pauli::Z()), kZero);
    EXPECT_THROW(corollary1_value(generic), NotDegenerate);
}

TEST(Corollary2, scaled_identity) {
    Rng rng(10);
    const auto r = corollary2_check(random_ket(rng, 2), random_ket(rng, 2), 3.0 * pauli::I());
    EXPECT_TRUE(r.is_fully_degenerate);
    ASSERT_TRUE(r.eigenvalue.has_value());
    EXPECT_NEAR(*r.eigenvalue, 3.0, 1e-15);
    EXPECT_LT(std::abs(r.weak_value - 3.0), 1e-12);
    EXPECT_TRUE(r.agrees);

    const Ket psi = random_ket(rng, 3);
    const Ket phi = random_ket(rng, 3);
    const auto q = corollary2_check(psi, phi, 2.0 * Operator::identity(3));
    EXPECT_TRUE(q.is_fully_degenerate);
    // Direct ratio <phi|2I|psi>/<phi|psi>.
    const Complex oracle = (2.0 * inner(phi, psi)) / inner(phi, psi);
    EXPECT_LT(std::abs(q.weak_value - oracle), 1e-12);
}

TEST(Corollary2, non_degenerate_operator) {
    const Ket psi = kZero;
    const Ket phi = kPlus;
    const auto r = corollary2_check(psi, phi, pauli::Z());
    EXPECT_FALSE(r.is_fully_degenerate);
    EXPECT_FALSE(r.eigenvalue.has_value());
    EXPECT_LT(std::abs(r.weak_value - 1.0), 1e-12);
    EXPECT_TRUE(r.agrees);
}

TEST(Audit, degenerate_soundness_thousand_instances) {
    AuditOptions opt;
    opt.mode = AuditMode::Degenerate;
    opt.count = 1000;
    opt.dims = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
    opt.seed = 20261016;
    const auto summary = run_random_audit(opt);
    ASSERT_EQ(summary.records.size(), 1000u);
    EXPECT_EQ(summary.violations, 0u);
    for (const auto &r : summary.records) {
        EXPECT_TRUE(r.hypothesis_holds);
        EXPECT_TRUE(r.basis_requirement_holds);
        EXPECT_LE(r.gap, 1e-9);
        EXPECT_LE(r.closed_form_gap, 1e-9);
        EXPECT_GE(r.postselection_probability, 1e-6);
    }
}

TEST(Audit, generic_mode_reports_large_gaps) {
    AuditOptions opt;
    opt.mode = AuditMode::Generic;
    opt.count = 100;
    opt.seed = 1;
    const auto summary = run_random_audit(opt);
    EXPECT_GT(summary.max_gap, 0.01);
    EXPECT_LE(summary.min_gap, summary.median_gap);
    EXPECT_LE(summary.median_gap, summary.max_gap);
}

TEST(Audit, replayable_from_recorded_seed) {
    AuditOptions opt;
    opt.mode = AuditMode::Generic;
    opt.count = 5;
    opt.seed = 77;
    const auto summary = run_random_audit(opt);
    for (const auto &r : summary.records) {
        const auto sc = audit_instance(opt.mode, r.seed, opt.dims);
        EXPECT_EQ(verify_nogo(sc).gap, r.gap);
    }
}
