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

#pragma once

#include <cstdint>
#include <random>

#include "nogo/linalg.hpp"

namespace nogo {

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Sub-seed for stream `index` of a run started from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic random source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions are implemented here rather than taken from
/// <random>, because the standard leaves their algorithms unspecified and
/// streams would differ between standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller.
    double normal();
    /// Real and imaginary parts i.i.d. standard normal.
    Complex complex_normal();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// (G + G^dagger) / 2 with G i.i.d. standard complex Gaussian.
Operator random_hermitian(Rng &rng, std::size_t dim);
/// Normalized complex Gaussian ket.
Ket random_ket(Rng &rng, std::size_t dim);
/// Gram-Schmidt orthonormalization of a complex Gaussian matrix.
Operator random_unitary(Rng &rng, std::size_t dim);

}  // namespace nogo
