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
 * Dense complex linear algebra for small quantum systems: kets, square
 * operators, tensor products, Hermitian eigendecomposition by cyclic Jacobi
 * rotations, and exp(-itH) through the spectral route.
 *
 * Joint indices of a tensor product follow the system-major convention:
 * (i, j) in an n x m product maps to the flat index i * m + j.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

namespace nogo {

using Complex = std::complex<double>;

inline constexpr double kTolHermitian = 1e-12;
inline constexpr double kTolNorm = 1e-12;
inline constexpr double kTolDegeneracy = 1e-9;

class Ket {
  public:
    Ket() = default;
    explicit Ket(std::size_t dim);
    explicit Ket(std::vector<Complex> amplitudes);
    Ket(std::initializer_list<Complex> amplitudes);

    /// |index> in the canonical basis of a dim-dimensional space.
    static Ket basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }

    Complex &operator[](std::size_t i) { return amps_[i]; }
    const Complex &operator[](std::size_t i) const { return amps_[i]; }

    double norm_sq() const;
    double norm() const;
    bool is_normalized(double tol = kTolNorm) const;
    Ket normalized() const;

    Ket &operator+=(const Ket &other);
    Ket &operator-=(const Ket &other);
    Ket &operator*=(Complex scale);

  private:
    std::vector<Complex> amps_;
};

Ket operator+(Ket lhs, const Ket &rhs);
Ket operator-(Ket lhs, const Ket &rhs);
Ket operator*(Complex scale, Ket ket);

/// <bra|ket>, conjugate-linear in the first argument.
Complex inner(const Ket &bra, const Ket &ket);
Ket tensor(const Ket &a, const Ket &b);

/// Square complex matrix, row-major.
class Operator {
  public:
    Operator() = default;
    explicit Operator(std::size_t dim);
    /// Rows given as nested lists; throws DimensionMismatch if not square.
    Operator(std::initializer_list<std::initializer_list<Complex>> rows);

    static Operator identity(std::size_t dim);
    static Operator zero(std::size_t dim) { return Operator(dim); }
    static Operator diagonal(std::span<const double> values);
    static Operator diagonal(std::initializer_list<double> values);
    /// |a><b|
    static Operator outer(const Ket &a, const Ket &b);
    static Operator projector(const Ket &a) { return outer(a, a); }
    /// Matrix whose k-th column is columns[k].
    static Operator from_columns(std::span<const Ket> columns);

    std::size_t dim() const { return dim_; }

    Complex &operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }

    Ket column(std::size_t col) const;
    std::vector<Complex> diagonal_entries() const;

    Operator adjoint() const;
    Complex trace() const;
    bool is_hermitian(double tol = kTolHermitian) const;
    bool is_unitary(double tol = 1e-10) const;
    /// True when every off-diagonal entry is below tol in magnitude.
    bool is_diagonal(double tol = 1e-12) const;

    Operator &operator+=(const Operator &other);
    Operator &operator-=(const Operator &other);
    Operator &operator*=(Complex scale);

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

Operator operator+(Operator lhs, const Operator &rhs);
Operator operator-(Operator lhs, const Operator &rhs);
Operator operator*(Complex scale, Operator op);
Operator operator*(const Operator &a, const Operator &b);
Ket operator*(const Operator &a, const Ket &v);

Operator tensor(const Operator &a, const Operator &b);
Operator commutator(const Operator &a, const Operator &b);

/// <bra|A|ket>
Complex matrix_element(const Ket &bra, const Operator &a, const Ket &ket);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Operator &a, const Operator &b);
double max_abs_diff(const Ket &a, const Ket &b);

std::ostream &operator<<(std::ostream &os, const Operator &op);
std::ostream &operator<<(std::ostream &os, const Ket &ket);

/// Eigen-decomposition of a Hermitian operator.
///
/// Eigenvalues are ascending. Each eigenvector has its first non-negligible
/// component real and positive. Inside a group of tied eigenvalues the vectors
/// are ordered lexicographically by component, larger real part first, so a
/// diagonal input keeps the canonical order among equal eigenvalues.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<Ket> eigenvectors;
    /// Partition of eigenvalue indices; consecutive eigenvalues closer than
    /// the grouping tolerance share a group.
    std::vector<std::vector<std::size_t>> eigenspace_groups;

    std::size_t dim() const { return eigenvalues.size(); }
    /// Columns are the eigenvectors in order.
    Operator eigenbasis() const;
    Operator projector(std::size_t k) const;
    /// Projector onto the span of one eigenspace group.
    Operator group_projector(std::size_t group) const;
    Operator reconstruct() const;
};

struct JacobiOptions {
    double tol_deg = kTolDegeneracy;
    int max_sweeps = 100;
};

/// Throws NonHermitian when h fails the Hermiticity check and NoConvergence
/// when the sweep budget runs out.
SpectralDecomposition spectral_decompose(const Operator &h, const JacobiOptions &options = {});

inline SpectralDecomposition spectral_decompose(const Operator &h, double tol_deg) {
    return spectral_decompose(h, JacobiOptions{tol_deg, 100});
}

/// exp(-i t H) for Hermitian H, assembled from its spectral decomposition.
Operator matrix_exponential_skew(const Operator &h, double t);

namespace pauli {
Operator I();
Operator X();
Operator Y();
Operator Z();
}  // namespace pauli

}  // namespace nogo
