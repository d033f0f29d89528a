// Copyright 2026 The qbnet Authors
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

#ifndef QBNET_ERRORS_H
#define QBNET_ERRORS_H

#include <stdexcept>
#include <string>

namespace qbn {

/// Base of every error the library throws on bad input or infeasible requests.
/// Internal invariant violations use std::logic_error instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: unknown labels, overlapping multinodes, out-of-range states.
struct ArgumentError : Error {
    using Error::Error;
};

/// A dense tensor or matrix would exceed the configured dimension cap.
struct CapacityError : Error {
    using Error::Error;
};

/// Conditioning on a ket with zero norm.
struct ZeroAmplitudeError : Error {
    using Error::Error;
};

/// The evidence has probability zero under the model.
struct ImpossibleEvidenceError : Error {
    explicit ImpossibleEvidenceError(const std::string &detail = "")
        : Error(detail.empty() ? "impossible evidence" : "impossible evidence: " + detail) {
    }
};

/// A matrix that should be a density matrix is not (negative spectrum, bad trace, ...).
struct InvalidStateError : Error {
    using Error::Error;
};

/// reduce_qbnet was handed a net whose x table depends on y0.
struct NotReducibleError : Error {
    using Error::Error;
};

/// Graph shape is unsupported by the requested algorithm (loops for BP, cycles in a DAG).
struct StructureError : Error {
    using Error::Error;
};

/// A message was requested before its inputs exist.
struct SchedulingError : Error {
    using Error::Error;
};

/// Iterative message passing did not reach a fixed point.
struct ConvergenceError : Error {
    using Error::Error;
};

struct OptimizationError : Error {
    using Error::Error;
};

/// Malformed input document.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace qbn

#endif
