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

#include <gtest/gtest.h>

#include <cmath>

#include "qbnet/qbp.h"
#include "qbnet/random.h"

namespace qbn {
namespace {

using Factor = FactorGraphNet::Factor;

double worst_gap(const FactorGraphNet &fg) {
    auto run = bipartite_converge(fg);
    auto bel = bipartite_beliefs(fg, run.messages);
    auto [net, ev] = to_qbnet(fg);
    double worst = 0;
    auto compare = [&](const ProbabilityTable &got, const Multinode &q) {
        auto want = posterior_oracle(net, q, ev);
        worst = std::max(worst, max_abs_difference(got, want));
    };
    for (int i = 0; i < fg.root_count(); ++i) {
        compare(bel.roots[static_cast<size_t>(i)], {i});
    }
    for (int a = 0; a < fg.factor_count(); ++a) {
        compare(bel.factors[static_cast<size_t>(a)], Multinode(fg.factors()[static_cast<size_t>(a)].nb));
    }
    return worst;
}

TEST(FactorGraphNet, Validation) {
    EXPECT_THROW(FactorGraphNet({{"u", 2}, {"u", 2}}, {}), ArgumentError);
    EXPECT_THROW(FactorGraphNet({{"u", 2}}, {Factor{"f", {1}, {1, 1}}}), ArgumentError);
    EXPECT_THROW(FactorGraphNet({{"u", 2}}, {Factor{"f", {0, 0}, {1, 1, 1, 1}}}), ArgumentError);
    EXPECT_THROW(FactorGraphNet({{"u", 2}}, {Factor{"f", {0}, {1, 1, 1}}}), ArgumentError);
    // u - f - v - g - u closes a loop.
    EXPECT_THROW(FactorGraphNet({{"u", 2}, {"v", 2}},
                                {Factor{"f", {0, 1}, {1, 1, 1, 1}}, Factor{"g", {1, 0}, {1, 1, 1, 1}}}),
                 StructureError);
}

TEST(FactorGraphNet, TableLayoutHasTheFirstNeighbourFastest) {
    FactorGraphNet fg({{"u", 2}, {"v", 3}}, {Factor{"f", {1, 0}, {0, 1, 2, 3, 4, 5}}});
    int idx[] = {1, 2};  // u = 1, v = 2
    EXPECT_EQ(fg.factor_tensor(0).at(idx), cplx(5));
    EXPECT_EQ(fg.root_neighbors(0), std::vector<int>({0}));
}

TEST(BipartiteIterate, SingleFactorSingleRootConvergesInOneStep) {
    FactorGraphNet fg({{"u", 3}}, {Factor{"f", {0}, {1, cplx(0, 2), 0.5}}});
    auto run = bipartite_converge(fg);
    EXPECT_EQ(run.iterations, 1);
    auto bel = bipartite_beliefs(fg, run.messages);
    const double total = 1 + 4 + 0.25;
    EXPECT_NEAR(bel.roots[0].data()[0], 1 / total, 1e-12);
    EXPECT_NEAR(bel.roots[0].data()[1], 4 / total, 1e-12);
    EXPECT_NEAR(bel.roots[0].data()[2], 0.25 / total, 1e-12);
}

TEST(BipartiteIterate, PairwiseFactorMessageIsTheTable) {
    Rng rng(71);
    auto table = random_unit_vector(6, rng);
    FactorGraphNet fg({{"u", 2}, {"v", 3}}, {Factor{"f", {0, 1}, table}});
    auto m = bipartite_iterate(fg, bipartite_initial(fg));
    // The other root stays an open index: m(u, v) ∝ f(u, v).
    const auto &to_u = m.to_root[0][0];
    ASSERT_EQ(to_u.labels(), std::vector<int>({0, 1}));
    const auto &f = fg.factor_tensor(0);
    EXPECT_LT(max_abs_difference(to_u, scaled(f, cplx(1 / std::sqrt(squared_norm(f))))), 1e-12);
}

TEST(BipartiteIterate, NonAdjacentPairsAreCarriedOver) {
    FactorGraphNet fg({{"u", 2}, {"v", 2}}, {Factor{"f", {0}, {1, 1}}, Factor{"g", {1}, {1, 2}}});
    auto init = bipartite_initial(fg);
    auto next = bipartite_iterate(fg, init);
    EXPECT_EQ(next.to_root[0][1], init.to_root[0][1]);
    EXPECT_EQ(next.to_factor[1][0], init.to_factor[1][0]);
}

TEST(BipartiteBeliefs, DisconnectedRootIsUniform) {
    FactorGraphNet fg({{"u", 2}, {"lonely", 4}}, {Factor{"f", {0}, {1, 2}}});
    auto bel = bipartite_beliefs(fg, bipartite_converge(fg).messages);
    for (double p : bel.roots[1].data()) {
        EXPECT_NEAR(p, 0.25, 1e-12);
    }
}

TEST(BipartiteBeliefs, RequiresAFixedPoint) {
    FactorGraphNet fg({{"u", 2}, {"v", 2}, {"w", 2}},
                      {Factor{"f", {0, 1}, {1, 2, 3, 4}}, Factor{"g", {1, 2}, {1, -1, 2, 0.5}}});
    EXPECT_THROW(bipartite_beliefs(fg, bipartite_initial(fg)), ConvergenceError);
    EXPECT_THROW(bipartite_converge(fg, 1), ConvergenceError);
}

TEST(BipartiteBeliefs, VanishingFactorsAreImpossibleEvidence) {
    FactorGraphNet fg({{"u", 2}}, {Factor{"f", {0}, {0, 0}}});
    EXPECT_THROW(bipartite_converge(fg), ImpossibleEvidenceError);
}

TEST(BipartiteBeliefs, ConvergesWithinTheDiameter) {
    for (uint64_t s = 0; s < 50; ++s) {
        Rng rng(derive_seed(72, s));
        auto fg = random_factor_graph(6, 4, 3, rng);
        auto run = bipartite_converge(fg);
        // Each step settles one more factor along the longest path.
        EXPECT_LE(run.iterations, 2 * fg.factor_count() + 1);
        EXPECT_LE(message_change(run.messages, bipartite_iterate(fg, run.messages)), 1e-12);
    }
}

TEST(BipartiteBeliefs, MatchesTheQbnetOracle) {
    for (uint64_t s = 0; s < 50; ++s) {
        Rng rng(derive_seed(73, s));
        EXPECT_LT(worst_gap(random_factor_graph(6, 4, 3, rng)), 1e-8);
    }
}

TEST(ToQbnet, EncodesFactorsAsBinaryChildren) {
    FactorGraphNet fg({{"u", 2}, {"v", 3}}, {Factor{"f", {0, 1}, {1, 2, 3, 4, 5, 6}}});
    auto [net, ev] = to_qbnet(fg);
    ASSERT_EQ(net.size(), 3);
    EXPECT_EQ(net.dag().card(2), 2);
    EXPECT_EQ(ev.values(), (std::map<int, int>{{2, 1}}));
    EXPECT_NEAR(std::abs(net.tpm(0).table[0]), 1 / std::sqrt(2.0), 1e-15);
}

}  // namespace
}  // namespace qbn
