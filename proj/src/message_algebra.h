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

#ifndef QBNET_SRC_MESSAGE_ALGEBRA_H
#define QBNET_SRC_MESSAGE_ALGEBRA_H

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "qbnet/labeled_tensor.h"

namespace qbn::detail {

/// Product of message tensors. Only labels in `shared` may appear in more than one term;
/// any other overlap means two subtrees claim the same hidden node.
inline LabeledAmplitude combine(const std::vector<const LabeledAmplitude *> &terms, const std::vector<int> &shared) {
    std::map<int, int> uses;
    for (const auto *t : terms) {
        for (const auto &a : t->axes()) {
            if (++uses[a.label] > 1 && std::find(shared.begin(), shared.end(), a.label) == shared.end()) {
                throw std::logic_error("hidden label " + std::to_string(a.label) + " reached a node twice");
            }
        }
    }
    LabeledAmplitude out;
    for (const auto *t : terms) {
        out = product(out, *t);
    }
    return out;
}

/// Rescales to unit 2-norm. A zero message means the evidence is impossible.
inline LabeledAmplitude unit_normalized(LabeledAmplitude t) {
    const double n2 = squared_norm(t);
    if (!(n2 > 0)) {
        throw ImpossibleEvidenceError();
    }
    return scaled(std::move(t), cplx(1.0 / std::sqrt(n2)));
}

}  // namespace qbn::detail

#endif
