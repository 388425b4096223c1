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

#include <stdexcept>
#include <string>

namespace nogo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NonHermitian : public Error {
  public:
    using Error::Error;
};

class NoConvergence : public Error {
  public:
    using Error::Error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

/// A probability that must be strictly positive fell below the cutoff.
class ZeroProbability : public Error {
  public:
    using Error::Error;
};

class MissingPostselection : public Error {
  public:
    using Error::Error;
};

/// <phi|psi> vanishes, so the weak value is undefined.
class OrthogonalPostselection : public Error {
  public:
    using Error::Error;
};

class NotUnitary : public Error {
  public:
    using Error::Error;
};

class NonDecomposable : public Error {
  public:
    using Error::Error;
};

class NotCanonical : public Error {
  public:
    using Error::Error;
};

class NotDegenerate : public Error {
  public:
    using Error::Error;
};

/// A state ket is not normalized.
class InvalidState : public Error {
  public:
    using Error::Error;
};

class ConfigError : public Error {
  public:
    using Error::Error;
};

}  // namespace nogo
