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

#ifndef QBNET_SQUASHED_H
#define QBNET_SQUASHED_H

#include <cstdint>

#include "qbnet/qinfo.h"

namespace qbn {

struct SquashedOptions {
    /// Number of λ values; 0 means rank(ρ)².
    int lambda_card = 0;
    /// Restart 0 always starts from the single-λ extension; the rest start at random.
    int restarts = 16;
    /// Objective evaluations per restart.
    int evaluations = 2000;
    uint64_t seed = 0;
};

struct SquashedResult {
    double value = 0;
    DiagonalExtension witness;
    int best_restart = 0;
};

/// Upper bound on ½ min S(x:y|λ^d) over λ-diagonal extensions of a two-axis state.
///
/// ρ is purified onto an environment E of dimension rank(ρ). An extension is read off an
/// isometry W: E → Λ ⊗ E, whose blocks B_λ define the unnormalized components
/// tr_E[(1 ⊗ B_λ)|ψ⟩⟨ψ|(1 ⊗ B_λ)†]; every K-outcome decomposition of ρ has this form.
/// W is refined by a gradient-free local search over two-row Givens rotations. The
/// returned value equals ½ cmi_diagonal(witness).
SquashedResult squashed_entanglement(const DensityMatrix &rho_xy, const SquashedOptions &options = {});

}  // namespace qbn

#endif
