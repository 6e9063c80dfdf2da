// Copyright 2026 The mubtomo Authors
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

namespace mubtomo {

/// Operand dimensions do not fit together (matrix product, dimension of a
/// state versus a basis family, index out of range, ...).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A value violates a physical invariant: non-Hermitian state, negative
/// eigenvalue, non-unitary rotation.
struct ValidityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The requested Hilbert-space dimension has no supported MUB construction.
struct UnsupportedDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Two computation routes that must agree do not.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input data (typically a measured tomogram) lies outside the tolerated band.
struct InvariantViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed input file.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mubtomo
