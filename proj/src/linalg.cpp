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

#include "nogo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <string>

#include "nogo/errors.hpp"

namespace nogo {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension " + std::to_string(a) +
                                " vs " + std::to_string(b));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Ket

Ket::Ket(std::size_t dim) : amps_(dim, Complex{0.0, 0.0}) {}

Ket::Ket(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {}

Ket::Ket(std::initializer_list<Complex> amplitudes) : amps_(amplitudes) {}

Ket Ket::basis(std::size_t dim, std::size_t index) {
    Ket k(dim);
    k.amps_.at(index) = 1.0;
    return k;
}

double Ket::norm_sq() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

double Ket::norm() const { return std::sqrt(norm_sq()); }

bool Ket::is_normalized(double tol) const { return std::abs(norm_sq() - 1.0) <= tol; }

Ket Ket::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw ZeroProbability("cannot normalize the zero ket");
    }
    Ket out = *this;
    out *= 1.0 / n;
    return out;
}

Ket &Ket::operator+=(const Ket &other) {
    require_same_dim(dim(), other.dim(), "ket addition");
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] += other.amps_[i];
    }
    return *this;
}

Ket &Ket::operator-=(const Ket &other) {
    require_same_dim(dim(), other.dim(), "ket subtraction");
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] -= other.amps_[i];
    }
    return *this;
}

Ket &Ket::operator*=(Complex scale) {
    for (auto &a : amps_) {
        a *= scale;
    }
    return *this;
}

Ket operator+(Ket lhs, const Ket &rhs) { return lhs += rhs; }
Ket operator-(Ket lhs, const Ket &rhs) { return lhs -= rhs; }
Ket operator*(Complex scale, Ket ket) { return ket *= scale; }

Complex inner(const Ket &bra, const Ket &ket) {
    require_same_dim(bra.dim(), ket.dim(), "inner product");
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < bra.dim(); ++i) {
        s += std::conj(bra[i]) * ket[i];
    }
    return s;
}

Ket tensor(const Ket &a, const Ket &b) {
    Ket out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(std::size_t dim) : dim_(dim), data_(dim * dim, Complex{0.0, 0.0}) {}

Operator::Operator(std::initializer_list<std::initializer_list<Complex>> rows)
    : Operator(rows.size()) {
    std::size_t r = 0;
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw DimensionMismatch("operator literal is not square");
        }
        std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
        ++r;
    }
}

Operator Operator::identity(std::size_t dim) {
    Operator op(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        op(i, i) = 1.0;
    }
    return op;
}

Operator Operator::diagonal(std::span<const double> values) {
    Operator op(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        op(i, i) = values[i];
    }
    return op;
}

Operator Operator::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

Operator Operator::outer(const Ket &a, const Ket &b) {
    require_same_dim(a.dim(), b.dim(), "outer product");
    Operator op(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            op(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return op;
}

Operator Operator::from_columns(std::span<const Ket> columns) {
    Operator op(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        require_same_dim(columns[c].dim(), columns.size(), "column matrix");
        for (std::size_t r = 0; r < columns.size(); ++r) {
            op(r, c) = columns[c][r];
        }
    }
    return op;
}

Ket Operator::column(std::size_t col) const {
    Ket k(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        k[r] = (*this)(r, col);
    }
    return k;
}

std::vector<Complex> Operator::diagonal_entries() const {
    std::vector<Complex> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        d[i] = (*this)(i, i);
    }
    return d;
}

Operator Operator::adjoint() const {
    Operator out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Complex Operator::trace() const {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

bool Operator::is_hermitian(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool Operator::is_unitary(double tol) const {
    return max_abs_diff(adjoint() * (*this), identity(dim_)) <= tol;
}

bool Operator::is_diagonal(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            if (i != j && std::abs((*this)(i, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

Operator &Operator::operator+=(const Operator &other) {
    require_same_dim(dim_, other.dim_, "operator addition");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

Operator &Operator::operator-=(const Operator &other) {
    require_same_dim(dim_, other.dim_, "operator subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

Operator &Operator::operator*=(Complex scale) {
    for (auto &x : data_) {
        x *= scale;
    }
    return *this;
}

Operator operator+(Operator lhs, const Operator &rhs) { return lhs += rhs; }
Operator operator-(Operator lhs, const Operator &rhs) { return lhs -= rhs; }
Operator operator*(Complex scale, Operator op) { return op *= scale; }

Operator operator*(const Operator &a, const Operator &b) {
    require_same_dim(a.dim(), b.dim(), "operator product");
    const std::size_t n = a.dim();
    Operator out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Ket operator*(const Operator &a, const Ket &v) {
    require_same_dim(a.dim(), v.dim(), "operator-ket product");
    Ket out(v.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Complex s{0.0, 0.0};
        for (std::size_t j = 0; j < a.dim(); ++j) {
            s += a(i, j) * v[j];
        }
        out[i] = s;
    }
    return out;
}

Operator tensor(const Operator &a, const Operator &b) {
    const std::size_t n = a.dim();
    const std::size_t m = b.dim();
    Operator out(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t l = 0; l < m; ++l) {
                    out(i * m + j, k * m + l) = aik * b(j, l);
                }
            }
        }
    }
    return out;
}

Operator commutator(const Operator &a, const Operator &b) { return a * b - b * a; }

Complex matrix_element(const Ket &bra, const Operator &a, const Ket &ket) {
    return inner(bra, a * ket);
}

double max_abs_diff(const Operator &a, const Operator &b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

double max_abs_diff(const Ket &a, const Ket &b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

std::ostream &operator<<(std::ostream &os, const Operator &op) {
    os << "[";
    for (std::size_t i = 0; i < op.dim(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < op.dim(); ++j) {
            os << (j ? ", " : "") << op(i, j);
        }
        os << "]";
    }
    return os << "]";
}

std::ostream &operator<<(std::ostream &os, const Ket &ket) {
    os << "(";
    for (std::size_t i = 0; i < ket.dim(); ++i) {
        os << (i ? ", " : "") << ket[i];
    }
    return os << ")";
}

// ---------------------------------------------------------------------------
// Spectral decomposition

Operator SpectralDecomposition::eigenbasis() const { return Operator::from_columns(eigenvectors); }

Operator SpectralDecomposition::projector(std::size_t k) const {
    return Operator::projector(eigenvectors.at(k));
}

Operator SpectralDecomposition::group_projector(std::size_t group) const {
    Operator p(dim());
    for (std::size_t k : eigenspace_groups.at(group)) {
        p += projector(k);
    }
    return p;
}

Operator SpectralDecomposition::reconstruct() const {
    Operator out(dim());
    for (std::size_t k = 0; k < dim(); ++k) {
        out += eigenvalues[k] * projector(k);
    }
    return out;
}

namespace {

constexpr double kPhaseThreshold = 1e-10;
constexpr double kOrderingGrid = 1e10;

double off_diagonal_norm_sq(const Operator &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return s;
}

double frobenius_norm_sq(const Operator &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            s += std::norm(a(i, j));
        }
    }
    return s;
}

// One complex Jacobi rotation zeroing a(p, q). The 2x2 block of the unitary
// is diag(1, e^{-i arg a_pq}) * [[c, s], [-s, c]].
void rotate(Operator &a, Operator &vecs, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double mag = std::abs(apq);
    const Complex phase = apq / mag;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex w_pp = c;
    const Complex w_pq = s;
    const Complex w_qp = -s * std::conj(phase);
    const Complex w_qq = c * std::conj(phase);

    const std::size_t n = a.dim();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = akp * w_pp + akq * w_qp;
        a(k, q) = akp * w_pq + akq * w_qq;
        const Complex vkp = vecs(k, p);
        const Complex vkq = vecs(k, q);
        vecs(k, p) = vkp * w_pp + vkq * w_qp;
        vecs(k, q) = vkp * w_pq + vkq * w_qq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = std::conj(w_pp) * apk + std::conj(w_qp) * aqk;
        a(q, k) = std::conj(w_pq) * apk + std::conj(w_qq) * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

void fix_phase(Ket &v) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > kPhaseThreshold) {
            v *= std::conj(v[i]) / mag;
            v[i] = mag;
            return;
        }
    }
}

std::vector<std::int64_t> ordering_key(const Ket &v) {
    std::vector<std::int64_t> key;
    key.reserve(2 * v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) {
        key.push_back(std::llround(v[i].real() * kOrderingGrid));
        key.push_back(std::llround(v[i].imag() * kOrderingGrid));
    }
    return key;
}

}  // namespace

SpectralDecomposition spectral_decompose(const Operator &h, const JacobiOptions &options) {
    if (!h.is_hermitian(kTolHermitian)) {
        throw NonHermitian("spectral_decompose: input is not Hermitian");
    }
    const std::size_t n = h.dim();
    Operator a = 0.5 * (h + h.adjoint());
    Operator vecs = Operator::identity(n);

    const double scale = std::max(1.0, frobenius_norm_sq(a));
    const double target = 1e-30 * scale;
    bool converged = off_diagonal_norm_sq(a) <= target;
    for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) > 1e-300) {
                    rotate(a, vecs, p, q);
                }
            }
        }
        converged = off_diagonal_norm_sq(a) <= target;
    }
    if (!converged) {
        throw NoConvergence("spectral_decompose: Jacobi sweep budget exhausted");
    }

    std::vector<double> values(n);
    std::vector<Ket> vectors(n);
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = a(k, k).real();
        vectors[k] = vecs.column(k);
        fix_phase(vectors[k]);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });

    SpectralDecomposition out;
    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && values[order[stop]] - values[order[stop - 1]] <= options.tol_deg) {
            ++stop;
        }
        std::vector<std::size_t> group(order.begin() + static_cast<std::ptrdiff_t>(start),
                                       order.begin() + static_cast<std::ptrdiff_t>(stop));
        std::stable_sort(group.begin(), group.end(), [&](std::size_t x, std::size_t y) {
            return ordering_key(vectors[x]) > ordering_key(vectors[y]);
        });
        std::vector<std::size_t> indices;
        for (std::size_t idx : group) {
            indices.push_back(out.eigenvalues.size());
            out.eigenvalues.push_back(values[idx]);
            out.eigenvectors.push_back(vectors[idx]);
        }
        out.eigenspace_groups.push_back(std::move(indices));
        start = stop;
    }
    return out;
}

Operator matrix_exponential_skew(const Operator &h, double t) {
    const SpectralDecomposition sd = spectral_decompose(h);
    Operator u(h.dim());
    for (std::size_t k = 0; k < sd.dim(); ++k) {
        const Complex phase = std::exp(Complex{0.0, -t * sd.eigenvalues[k]});
        u += phase * sd.projector(k);
    }
    return u;
}

namespace pauli {
Operator I() { return Operator::identity(2); }
Operator X() { return Operator{{0.0, 1.0}, {1.0, 0.0}}; }
Operator Y() { return Operator{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}}; }
Operator Z() { return Operator{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace nogo
