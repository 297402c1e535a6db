// Copyright 2026 The qnlpkit Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types thrown across the toolkit.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qnlp {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Register width outside the supported range.
struct CapacityError : Error {
    using Error::Error;
};

/// Qubit or basis index out of range.
struct IndexError : Error {
    using Error::Error;
};

/// Missing, duplicate, or misaligned gate parameters.
struct ParameterError : Error {
    using Error::Error;
};

/// Two registers or vectors that must agree in width do not.
struct WidthMismatchError : Error {
    using Error::Error;
};

/// Post-selection on an outcome whose probability mass is (numerically) zero.
struct ImpossibleOutcomeError : Error {
    using Error::Error;
};

/// A gate kind an algorithm cannot handle (e.g. RESET under adjoint differentiation).
struct UnsupportedGateError : Error {
    using Error::Error;
};

/// Text cannot be expressed in the given alphabet, or a layout constraint fails.
struct EncodingError : Error {
    using Error::Error;
};

/// A measured basis index cannot be decoded against the declared layout.
struct DecodeError : Error {
    using Error::Error;
};

/// Non-deterministic state preparation failed (post-selection mass ~ 0).
struct PreparationFailureError : Error {
    using Error::Error;
};

/// Model output distribution has (numerically) no mass on valid outcomes.
struct DegenerateOutputError : Error {
    using Error::Error;
};

/// Statevector norm drifted beyond tolerance; indicates a kernel bug.
struct NormError : Error {
    using Error::Error;
};

/// Malformed file or stream content.
struct IoError : Error {
    using Error::Error;
};

} // namespace qnlp
