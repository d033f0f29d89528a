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

#ifndef QBNET_QBNET_H
#define QBNET_QBNET_H

#include <map>
#include <span>
#include <vector>

#include "qbnet/graph.h"
#include "qbnet/labeled_tensor.h"

namespace qbn {

/// Tolerance on Σ_x |A(x|pa)|² = 1 for in-memory construction.
inline constexpr double kTpmNormTolerance = 1e-10;

/// Complex transition table A(x | pa(x)) of one node.
///
/// `table` is flattened with the node's own state varying fastest, then the parents in
/// their declared order (first parent next fastest).
struct NodeTpm {
    int node = 0;
    std::vector<int> parents;
    std::vector<cplx> table;

    /// A(value | parent_values), parent values in declared parent order.
    cplx at(const Dag &dag, int value, std::span<const int> parent_values) const;
    /// The table as a labeled tensor over {node} ∪ parents.
    LabeledAmplitude as_tensor(const Dag &dag) const;
};

/// A DAG with one unit-norm complex table per node.
class QBNet {
   public:
    QBNet(Dag dag, std::vector<NodeTpm> tpms, double norm_tolerance = kTpmNormTolerance);

    const Dag &dag() const {
        return dag_;
    }
    const NodeTpm &tpm(int node) const {
        return tpms_.at(static_cast<size_t>(node));
    }
    const std::vector<NodeTpm> &tpms() const {
        return tpms_;
    }
    int size() const {
        return dag_.size();
    }
    /// Number of entries of the full amplitude tensor (saturates at SIZE_MAX).
    size_t joint_dimension() const;

   private:
    Dag dag_;
    std::vector<NodeTpm> tpms_;
};

/// Observed node values.
class Evidence {
   public:
    Evidence() = default;
    explicit Evidence(std::map<int, int> values) : values_(std::move(values)) {
    }

    const std::map<int, int> &values() const {
        return values_;
    }
    bool observed(int node) const {
        return values_.count(node) != 0;
    }
    int value(int node) const {
        return values_.at(node);
    }
    bool empty() const {
        return values_.empty();
    }
    Multinode nodes() const;
    /// Throws ArgumentError for unknown nodes or out-of-range values.
    void check(const Dag &dag) const;

   private:
    std::map<int, int> values_;
};

/// The pair (𝒜(b., a.), 𝒜(a.)) standing for 𝒜(b.|a.); never divided entrywise.
struct ConditionalAmplitude {
    LabeledAmplitude numerator;
    LabeledAmplitude denominator;

    /// ‖numerator‖² / ‖denominator‖² = P(b.|a.).
    double probability() const;
};

/// Π_j A(x_j | pa(x_j)) at a full assignment (one value per node, index order).
cplx joint_amplitude(const QBNet &net, std::span<const int> assignment);

/// The full ket Σ A(x) |x⟩ as a tensor over every node.
LabeledAmplitude amplitude_tensor(const QBNet &net, size_t cap = kDefaultDimensionCap);

/// The ket over the complement of `a` with entries A(a., a.^c); `a_values` follow a's
/// sorted member order.
LabeledAmplitude vector_amplitude(const QBNet &net, const Multinode &a, std::span<const int> a_values,
                                  size_t cap = kDefaultDimensionCap);

/// P(a.) = Σ_{a.^c} |A(a., a.^c)|² as a table over a's members.
ProbabilityTable marginal_probability(const QBNet &net, const Multinode &a, size_t cap = kDefaultDimensionCap);

/// Throws ZeroAmplitudeError when P(a_values) = 0.
ConditionalAmplitude conditional_amplitude(const QBNet &net, const Multinode &b, const Multinode &a,
                                           std::span<const int> b_values, std::span<const int> a_values,
                                           size_t cap = kDefaultDimensionCap);

/// Entrywise complex sum over the listed labels.
LabeledAmplitude marginalize(const LabeledAmplitude &amp, const Multinode &over);

/// The net restricted to an ancestrally closed node set, keeping the node tables.
///
/// Nodes keep their relative order and are renumbered 0, 1, ...; `old_to_new` maps old
/// indices to new ones (-1 for dropped nodes). Its state is the ket of the kept nodes
/// before any descendant is attached. Throws ArgumentError if `keep` is not closed.
struct SubNet {
    QBNet net;
    std::vector<int> old_to_new;
    Multinode map(const Multinode &m) const;
};
SubNet ancestral_subnet(const QBNet &net, const Multinode &keep);

/// Exact P(query | evidence) by summing |A|² over the full amplitude tensor.
///
/// Throws ImpossibleEvidenceError when P(evidence) = 0.
ProbabilityTable posterior_oracle(const QBNet &net, const Multinode &query, const Evidence &evidence,
                                  size_t cap = kDefaultDimensionCap);

}  // namespace qbn

#endif
