// Copyright 2026 The weakval Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace weakval {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid input: bad axis, bad grid, non-Hermitian observable, etc.
/// The CLI maps these to exit code 1.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Pre- and post-selection with vanishing overlap; the weak value diverges.
class OrthogonalSelectionError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// Failure while running a simulation (exit code 2 in the CLI).
class SimulationError : public Error {
  public:
    using Error::Error;
};

class NullPostSelectionError : public SimulationError {
  public:
    using SimulationError::SimulationError;
};

class NoPostSelectionsError : public SimulationError {
  public:
    using SimulationError::SimulationError;
};

class EmptyStateError : public SimulationError {
  public:
    using SimulationError::SimulationError;
};

} // namespace weakval
