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

#include "qbnet/random.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbn {

uint64_t derive_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<cplx> random_unit_vector(int n, Rng &rng) {
    std::normal_distribution<double> gauss;
    std::vector<cplx> v(static_cast<size_t>(n));
    double s = 0;
    do {
        s = 0;
        for (auto &e : v) {
            e = {gauss(rng), gauss(rng)};
            s += std::norm(e);
        }
    } while (!(s > 1e-300));
    const double inv = 1.0 / std::sqrt(s);
    for (auto &e : v) {
        e *= inv;
    }
    return v;
}

QBNet random_qbnet(const Dag &dag, Rng &rng) {
    std::vector<NodeTpm> tpms;
    for (int j = 0; j < dag.size(); ++j) {
        size_t columns = 1;
        for (int p : dag.parents(j)) {
            columns *= static_cast<size_t>(dag.card(p));
        }
        NodeTpm t{j, dag.parents(j), {}};
        for (size_t c = 0; c < columns; ++c) {
            auto col = random_unit_vector(dag.card(j), rng);
            t.table.insert(t.table.end(), col.begin(), col.end());
        }
        tpms.push_back(std::move(t));
    }
    return QBNet(dag, std::move(tpms));
}

namespace {

int random_card(int max_card, Rng &rng) {
    if (max_card <= 1) {
        return 1;
    }
    return std::uniform_int_distribution<int>(2, max_card)(rng);
}

}  // namespace

Dag random_dag(int nodes, int max_card, double edge_probability, Rng &rng) {
    std::vector<int> perm(static_cast<size_t>(nodes));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution coin(edge_probability);
    std::vector<int> cards;
    for (int i = 0; i < nodes; ++i) {
        cards.push_back(random_card(max_card, rng));
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < nodes; ++i) {
        for (int j = i + 1; j < nodes; ++j) {
            if (coin(rng)) {
                edges.emplace_back(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
            }
        }
    }
    return Dag::from_edges(std::move(cards), edges);
}

Dag random_polytree(int nodes, int max_card, Rng &rng) {
    std::vector<int> cards;
    for (int i = 0; i < nodes; ++i) {
        cards.push_back(random_card(max_card, rng));
    }
    std::vector<int> perm(static_cast<size_t>(nodes));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::bernoulli_distribution orient;
    std::bernoulli_distribution split(0.1);
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < nodes; ++i) {
        if (split(rng)) {
            continue;  // start a new component
        }
        int attach = perm[static_cast<size_t>(std::uniform_int_distribution<int>(0, i - 1)(rng))];
        int self = perm[static_cast<size_t>(i)];
        if (orient(rng)) {
            edges.emplace_back(attach, self);
        } else {
            edges.emplace_back(self, attach);
        }
    }
    return Dag::from_edges(std::move(cards), edges);
}

FactorGraphNet random_factor_graph(int max_roots, int max_factors, int max_card, Rng &rng) {
    const int nx = std::uniform_int_distribution<int>(1, max_roots)(rng);
    const int nf = std::uniform_int_distribution<int>(1, max_factors)(rng);
    std::vector<FactorGraphNet::Root> roots;
    for (int i = 0; i < nx; ++i) {
        roots.push_back({"x" + std::to_string(i), random_card(max_card, rng)});
    }
    // Roots already joined through earlier factors share a component id.
    std::vector<int> component(static_cast<size_t>(nx));
    std::iota(component.begin(), component.end(), 0);
    std::normal_distribution<double> gauss;
    std::vector<FactorGraphNet::Factor> factors;
    for (int a = 0; a < nf; ++a) {
        const int arity = std::uniform_int_distribution<int>(1, std::min(3, nx))(rng);
        std::vector<int> order(static_cast<size_t>(nx));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        FactorGraphNet::Factor f{"f" + std::to_string(a), {}, {}};
        std::vector<int> used;
        for (int i : order) {
            const int c = component[static_cast<size_t>(i)];
            if (static_cast<int>(f.nb.size()) == arity) {
                break;
            }
            if (std::find(used.begin(), used.end(), c) == used.end()) {
                f.nb.push_back(i);
                used.push_back(c);
            }
        }
        for (auto &c : component) {
            if (std::find(used.begin(), used.end(), c) != used.end()) {
                c = used.front();
            }
        }
        size_t size = 1;
        for (int i : f.nb) {
            size *= static_cast<size_t>(roots[static_cast<size_t>(i)].states);
        }
        for (size_t k = 0; k < size; ++k) {
            f.table.emplace_back(gauss(rng), gauss(rng));
        }
        factors.push_back(std::move(f));
    }
    return FactorGraphNet(std::move(roots), std::move(factors));
}

}  // namespace qbn
