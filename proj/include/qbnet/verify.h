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

#ifndef QBNET_VERIFY_H
#define QBNET_VERIFY_H

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qbnet/graph.h"
#include "qbnet/qbnet.h"

namespace qbn {

constexpr double kForwardThreshold = 1e-9;
constexpr double kWitnessThreshold = 1e-3;
constexpr double kBpThreshold = 1e-8;

/// Which states count as compatible with a DAG in the d-separation checks.
enum class Compatibility {
    /// The net's pure state on all nodes, reduced to A ∪ B ∪ Z and dephased on Z.
    kFullNet,
    /// Same, but built from the net restricted to the ancestors of A ∪ B ∪ Z.
    kAncestral,
};

struct TrialReport {
    std::string kind;
    Compatibility model = Compatibility::kFullNet;
    /// Edge list such as "0->1 0->2", or "" for campaigns over many graphs.
    std::string dag;
    Multinode a, b, z;
    int trials = 0;
    /// Largest |CMI| for d-separation checks, largest posterior deviation for BP.
    double max_value = 0;
    /// Model seed of the first trial above threshold (witness search) or of the worst trial.
    std::optional<uint64_t> witness_seed;
    int witness_trial = -1;
    double seconds = 0;
    bool pass = false;
};

std::string describe_edges(const Dag &dag);

/// Seed of the model sampled in trial `t` of a campaign started from `seed`.
uint64_t trial_seed(uint64_t seed, int t);

/// I(A:B|Z) of the net's state with Z dephased.
double dephased_cmi(const QBNet &net, const Multinode &a, const Multinode &b, const Multinode &z,
                    Compatibility model = Compatibility::kFullNet);

/// Samples `trials` random nets on `dag` and records the largest dephased CMI.
/// PASS iff it never exceeds `threshold`. Throws ArgumentError unless A ⟂ B | Z.
TrialReport check_dsep_forward(const Dag &dag, const Multinode &a, const Multinode &b, const Multinode &z,
                               int trials, uint64_t seed, double threshold = kForwardThreshold,
                               Compatibility model = Compatibility::kFullNet);

/// Looks for a net on `dag` with dephased CMI above `threshold`; stops at the first.
/// Throws ArgumentError if A ⟂ B | Z (no witness can exist).
TrialReport search_dsep_witness(const Dag &dag, const Multinode &a, const Multinode &b, const Multinode &z,
                                int trials, uint64_t seed, double threshold = kWitnessThreshold,
                                Compatibility model = Compatibility::kFullNet);

/// Runs check_dsep_forward on every d-separated triple of `dag`, building each model's
/// amplitude tensor once. Reports are identical to the per-triple calls up to roundoff.
std::vector<TrialReport> check_dsep_forward_all(const Dag &dag, int trials, uint64_t seed,
                                                double threshold = kForwardThreshold,
                                                Compatibility model = Compatibility::kFullNet);

/// (A, B, Z) pairwise disjoint with A, B nonempty and min A < min B.
std::vector<std::tuple<Multinode, Multinode, Multinode>> disjoint_triples(int nodes);

/// One representative per isomorphism class of DAGs on `nodes` nodes, all of cardinality `card`.
std::vector<Dag> dags_up_to_isomorphism(int nodes, int card = 2);

struct BpCampaignOptions {
    int count = 100;
    int max_nodes = 10;
    int max_card = 3;
    /// Probability that each node is observed.
    double evidence_rate = 0.3;
    uint64_t seed = 0;
    /// Fixed graph for every case; random polytrees when empty.
    std::optional<Dag> dag;
};

/// propagate_polytree against posterior_oracle on `count` random cases.
TrialReport bp_campaign(const BpCampaignOptions &options);

}  // namespace qbn

#endif
