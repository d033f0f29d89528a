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

#ifndef QBNET_QBP_H
#define QBNET_QBP_H

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qbnet/qbnet.h"

namespace qbn {

// Messages are vector amplitudes. Besides the variable on the edge (the carrier) a
// message keeps one open index per unobserved node of the subtree it summarizes. The sums
// in the update rules therefore run only over observed values, which are sliced out up
// front; everything else stays an open index and the caller squares and sums at the end.
// On a polytree the subtrees behind distinct neighbours are disjoint, so every product
// below is well defined.

enum class MessageKind { kPi, kLambda };

struct AmplitudeMessage {
    int from = 0;
    int to = 0;
    MessageKind kind = MessageKind::kPi;
    int carrier = 0;
    LabeledAmplitude data;

    /// Labels of `data` other than the carrier.
    std::vector<int> hidden_labels() const;
};

/// A net with its evidence sliced into the node tables.
class ClampedNet {
   public:
    /// Throws ArgumentError on malformed evidence.
    ClampedNet(const QBNet &net, Evidence evidence);

    const QBNet &net() const {
        return *net_;
    }
    const Dag &dag() const {
        return net_->dag();
    }
    const Evidence &evidence() const {
        return evidence_;
    }
    /// A(x | pa(x)) with observed labels fixed.
    const LabeledAmplitude &factor(int node) const {
        return factors_.at(static_cast<size_t>(node));
    }

   private:
    const QBNet *net_;
    Evidence evidence_;
    std::vector<LabeledAmplitude> factors_;
};

/// π_x = A(x|pa) times every incoming π message; the tables of a root node alone.
AmplitudeMessage compute_pi(const ClampedNet &net, int x, std::span<const AmplitudeMessage> parent_messages);

/// λ_x = product of incoming λ messages; all ones for a leaf.
AmplitudeMessage compute_lambda(const ClampedNet &net, int x, std::span<const AmplitudeMessage> child_messages);

/// λ_{x→a} = N λ_x · A(x|pa) · Π_{k≠a} π_{x←a_k}.
AmplitudeMessage rule1_lambda_to_parent(const ClampedNet &net, int x, int parent, const AmplitudeMessage &lambda_x,
                                        std::span<const AmplitudeMessage> other_parent_messages);

/// π_{b←x} = N π_x · Π_{k≠b} λ_{b_k→x}.
AmplitudeMessage rule2_pi_to_child(const ClampedNet &net, int x, int child, const AmplitudeMessage &pi_x,
                                   std::span<const AmplitudeMessage> other_child_messages);

struct Belief {
    int node = 0;
    /// Unit-norm vector amplitude over the node and every other unobserved node.
    LabeledAmplitude amplitude;
    /// P(node | evidence), one entry per state.
    std::vector<double> probabilities;
};

/// Two-sweep message schedule on a polytree.
///
/// Each connected component is rooted at its smallest node. collect() sends messages from
/// the leaves towards the root, distribute() sends them back out. After one collect and
/// one distribute every message is at its fixed point.
class PolytreeSession {
   public:
    /// Throws StructureError unless the DAG is a polytree.
    PolytreeSession(const QBNet &net, Evidence evidence);

    void collect();
    void distribute();

    /// Messages keyed by (sender, receiver).
    const std::map<std::pair<int, int>, AmplitudeMessage> &messages() const {
        return messages_;
    }
    /// BEL(x) = N λ_x π_x for every node. Throws ImpossibleEvidenceError if P(evidence) = 0.
    std::vector<Belief> beliefs() const;

   private:
    AmplitudeMessage send(int from, int to) const;
    const AmplitudeMessage &incoming(int from, int to) const;
    AmplitudeMessage pi_of(int x) const;
    AmplitudeMessage lambda_of(int x) const;

    ClampedNet net_;
    std::vector<int> bfs_order_;
    std::vector<int> tree_parent_;
    std::map<std::pair<int, int>, AmplitudeMessage> messages_;
};

/// Exact posteriors of every node. Throws StructureError for non-polytrees and
/// ImpossibleEvidenceError when the evidence has probability zero.
std::vector<Belief> propagate_polytree(const QBNet &net, const Evidence &evidence);

/// Variables (roots) joined only through amplitude factors (leaves).
class FactorGraphNet {
   public:
    struct Root {
        std::string name;
        int states = 2;
    };
    /// `table` is flattened with the first neighbour's state varying fastest.
    struct Factor {
        std::string name;
        std::vector<int> nb;
        std::vector<cplx> table;
    };

    /// Throws StructureError when the bipartite skeleton has a cycle.
    FactorGraphNet(std::vector<Root> roots, std::vector<Factor> factors);

    const std::vector<Root> &roots() const {
        return roots_;
    }
    const std::vector<Factor> &factors() const {
        return factors_;
    }
    int root_count() const {
        return static_cast<int>(roots_.size());
    }
    int factor_count() const {
        return static_cast<int>(factors_.size());
    }
    /// nb(i): factors adjacent to root i, ascending.
    const std::vector<int> &root_neighbors(int i) const {
        return root_nb_.at(static_cast<size_t>(i));
    }
    /// f_α as a tensor over its neighbours (root index = label).
    const LabeledAmplitude &factor_tensor(int alpha) const {
        return tensors_.at(static_cast<size_t>(alpha));
    }

   private:
    std::vector<Root> roots_;
    std::vector<Factor> factors_;
    std::vector<std::vector<int>> root_nb_;
    std::vector<LabeledAmplitude> tensors_;
};

/// Messages for every (factor α, root i) pair, adjacent or not.
struct BipartiteMessages {
    /// to_root[α][i] = m_{α→i}
    std::vector<std::vector<LabeledAmplitude>> to_root;
    /// to_factor[α][i] = m_{α←i}
    std::vector<std::vector<LabeledAmplitude>> to_factor;
};

/// All messages set to ones over their root variable.
BipartiteMessages bipartite_initial(const FactorGraphNet &net);

/// One synchronous step: both traversal rules read only the previous state.
/// Non-adjacent pairs are copied over unchanged.
BipartiteMessages bipartite_iterate(const FactorGraphNet &net, const BipartiteMessages &previous);

/// Largest entrywise change between two states; infinity if any label set differs.
double message_change(const BipartiteMessages &a, const BipartiteMessages &b);

struct BipartiteRun {
    BipartiteMessages messages;
    /// Steps taken before the state stopped changing.
    int iterations = 0;
};

/// Iterates from the all-ones state until one more step changes nothing beyond 1e-12.
/// Throws ConvergenceError after `max_iterations` (0 picks twice the node count plus two).
BipartiteRun bipartite_converge(const FactorGraphNet &net, int max_iterations = 0);

struct BipartiteBeliefs {
    /// P(x_i | ε) per root, as a table over {i}.
    std::vector<ProbabilityTable> roots;
    /// P(x_nb(α) | ε) per factor, over nb(α) in ascending order.
    std::vector<ProbabilityTable> factors;
};

/// Throws ConvergenceError unless `messages` is a fixed point within 1e-12, and
/// ImpossibleEvidenceError when every factor product vanishes.
BipartiteBeliefs bipartite_beliefs(const FactorGraphNet &net, const BipartiteMessages &messages);

/// The same model as a qbnet: uniform root amplitudes, one binary child per factor with
/// A(1 | x_nb) = f(x_nb) / max|f|, and evidence setting every factor child to 1.
std::pair<QBNet, Evidence> to_qbnet(const FactorGraphNet &net);

}  // namespace qbn

#endif
