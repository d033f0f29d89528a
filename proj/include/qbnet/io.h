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

#ifndef QBNET_IO_H
#define QBNET_IO_H

// JSON documents for every model type. Complex numbers are [re, im] pairs; a bare
// number is read as a real value. Parsers throw ParseError with "line L, column C" for
// malformed JSON and ParseError for documents of the wrong shape. Errors raised by the
// model constructors themselves (cycles, bad norms) pass through unchanged.

#include <string>
#include <vector>

#include "qbnet/qbp.h"
#include "qbnet/qinfo.h"
#include "qbnet/verify.h"

namespace qbn {

/// Table tolerance applied to parsed nets.
constexpr double kParsedNormTolerance = 1e-8;

/// {"nodes":[{"name","states","parents":[names]}], "tpms":{name:[[re,im],...]}}
QBNet parse_qbnet(const std::string &text);
/// The "nodes" part of a net document; "tpms" may be absent.
Dag parse_dag(const std::string &text);
std::string write_qbnet(const QBNet &net);

/// A density matrix with a name per axis; axis labels are 0, 1, ... in file order.
struct NamedDensity {
    DensityMatrix rho;
    std::vector<std::string> names;
};

/// {"labels":[{"name","dim"}], "matrix":[[[re,im],...],...]}
NamedDensity parse_density(const std::string &text);
std::string write_density(const DensityMatrix &rho, const std::vector<std::string> &names);

/// {"weights":[...], "components":[matrix,...], "labels":[{"name","dim"},{"name","dim"}]}
///
/// "labels" is optional; without it each component must be d×d with d a perfect square
/// and x, y both get dimension √d with names "x" and "y".
struct NamedExtension {
    DiagonalExtension ext;
    std::vector<std::string> names;
};
NamedExtension parse_extension(const std::string &text);
std::string write_extension(const DiagonalExtension &ext, const std::vector<std::string> &names);

/// {"roots":[{"name","states"}], "factors":[{"name","nb":[root names],"table":[[re,im],...]}]}
FactorGraphNet parse_factor_graph(const std::string &text);
std::string write_factor_graph(const FactorGraphNet &net);

/// One JSON object on a single line.
std::string write_report(const TrialReport &report);

/// Reads a whole file; throws ArgumentError if it cannot be opened.
std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &text);

}  // namespace qbn

#endif
