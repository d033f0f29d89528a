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

#ifndef QBNET_RANDOM_H
#define QBNET_RANDOM_H

#include <cstdint>
#include <random>
#include <vector>

#include "qbnet/qbnet.h"
#include "qbnet/qbp.h"

namespace qbn {

using Rng = std::mt19937_64;

/// Independent stream seed for item `index` of a run seeded with `seed` (splitmix64).
uint64_t derive_seed(uint64_t seed, uint64_t index);

/// Complex Gaussian vector scaled to unit 2-norm.
std::vector<cplx> random_unit_vector(int n, Rng &rng);

/// Every column of every table is an independent random unit vector.
QBNet random_qbnet(const Dag &dag, Rng &rng);

/// Random DAG: each pair is joined with probability `edge_probability`, oriented along a
/// random permutation. Cardinalities are uniform in [2, max_card] (or 1 when max_card is 1).
Dag random_dag(int nodes, int max_card, double edge_probability, Rng &rng);

/// Random polytree: a random forest skeleton with independently oriented edges.
Dag random_polytree(int nodes, int max_card, Rng &rng);

/// Random tree-structured factor graph with 1..max_roots roots and 1..max_factors
/// factors of arity 1..3. Roots may be left without factors. Tables are complex Gaussian.
FactorGraphNet random_factor_graph(int max_roots, int max_factors, int max_card, Rng &rng);

}  // namespace qbn

#endif
