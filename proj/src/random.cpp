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

#include "nogo/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace nogo {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

Operator random_hermitian(Rng &rng, std::size_t dim) {
    Operator g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            g(i, j) = rng.complex_normal();
        }
    }
    return 0.5 * (g + g.adjoint());
}

Ket random_ket(Rng &rng, std::size_t dim) {
    Ket k(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        k[i] = rng.complex_normal();
    }
    return k.normalized();
}

Operator random_unitary(Rng &rng, std::size_t dim) {
    std::vector<Ket> cols;
    cols.reserve(dim);
    while (cols.size() < dim) {
        Ket v(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = rng.complex_normal();
        }
        for (const auto &c : cols) {
            v -= inner(c, v) * c;
        }
        if (v.norm() > 1e-8) {
            cols.push_back(v.normalized());
        }
    }
    return Operator::from_columns(cols);
}

}  // namespace nogo
