// Copyright 2026 The qpigeon Authors
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

#ifndef QPIGEON_ERRORS_HPP
#define QPIGEON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpigeon {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A state with no nonzero amplitude, or inconsistent amplitude keys.
struct InvalidState : Error {
    using Error::Error;
};

/// The basis would exceed the configured memory budget.
struct ResourceLimit : Error {
    using Error::Error;
};

/// Operands live on different (N, M, representation) domains.
struct DomainMismatch : Error {
    using Error::Error;
};

/// Scenario parameters that admit no pre/postselection solution.
struct ImpossibleScenario : Error {
    using Error::Error;
};

/// Postselected overlap vanishes, so conditional quantities are undefined.
struct ZeroOverlap : Error {
    using Error::Error;
};

/// Both ABL matrix elements vanish for the requested outcome.
struct OutcomeIncompatible : Error {
    using Error::Error;
};

struct NotFound : Error {
    using Error::Error;
};

/// Malformed run configuration or observable descriptor.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qpigeon

#endif  // QPIGEON_ERRORS_HPP
