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

#ifndef QBNET_CONSTRUCTIONS_H
#define QBNET_CONSTRUCTIONS_H

#include "qbnet/qbnet.h"
#include "qbnet/qinfo.h"

namespace qbn {

/// Node indices of the five-node extension nets built by density_to_qbnet.
enum ExtensionRole : int { kLambda = 0, kX0 = 1, kY0 = 2, kX = 3, kY = 4 };

/// Fully connected five-node layout: λ → everything, x0 → y0, R0 = (x0, y0) → x, y; x → y.
Dag extension_dag_full(int lambda_card, int x_card, int y_card);
/// Sparse layout: λ → everything, x0 → x, y0 → y only.
Dag extension_dag_separated(int lambda_card, int x_card, int y_card);

/// Encodes a λ-diagonal state as a five-node qbnet.
///
/// For every λ the component is diagonalized as ρ^λ = U D U†. The eigen index of U's
/// columns is read as R0 = (x0, y0) and the node tables are
///
///   A(λ) = √P(λ),  A(x0|λ) = √P(x0|λ),  A(y0|x0,λ) = √P(y0|x0,λ),
///   A(x|R0,λ) · A(y|x,R0,λ) = ⟨x,y|U|x0,y0⟩,
///
/// with P(x0, y0|λ) the diagonal of D. The x table is chosen real and nonnegative; the y
/// table absorbs the phase. Tracing out R0 and dephasing λ gives back Σ_λ P(λ)|λ⟩⟨λ|⊗ρ^λ.
///
/// Throws InvalidStateError if any component has an eigenvalue below -1e-8.
QBNet density_to_qbnet(const DiagonalExtension &ext);

/// Collapses a five-node extension net into three nodes λ, X = (x, x0), Y = (y, y0).
///
/// Needs A(x | x0, y0, λ) not to depend on y0 (within 1e-10), otherwise throws
/// NotReducibleError. Each input node may use any subset of its parents in
/// extension_dag_full. The output has X → Y unless y ignores x and x0 and y0 ignores x0,
/// in which case X and Y are both children of λ only. Composite values are x * |x0| + x0
/// and y * |y0| + y0. The joint amplitude is preserved entrywise.
QBNet reduce_qbnet(const QBNet &net);

}  // namespace qbn

#endif
