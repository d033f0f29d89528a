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
#include "qbnet/verify.h"

namespace qbn {
namespace {

// |⟨a|b⟩| for unit vectors; 1 iff they agree up to a global phase.
double overlap(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    cplx s = 0;
    double na = 0, nb = 0;
    for (size_t k = 0; k < a.size(); ++k) {
        s += std::conj(a[k]) * b[k];
        na += std::norm(a[k]);
        nb += std::norm(b[k]);
    }
    return std::abs(s) / std::sqrt(na * nb);
}

double worst_gap(const QBNet &net, const Evidence &ev) {
    double worst = 0;
    for (const auto &bel : propagate_polytree(net, ev)) {
        if (ev.observed(bel.node)) {
            continue;
        }
        auto want = posterior_oracle(net, {bel.node}, ev);
        for (size_t k = 0; k < bel.probabilities.size(); ++k) {
            worst = std::max(worst, std::abs(bel.probabilities[k] - want.data()[k]));
        }
    }
    return worst;
}

TEST(ComputePi, RootIsItsTable) {
    Rng rng(51);
    auto net = random_qbnet(Dag::from_edges({3}, {}), rng);
    ClampedNet cn(net, Evidence{});
    auto pi = compute_pi(cn, 0, {});
    EXPECT_EQ(pi.data.labels(), std::vector<int>({0}));
    EXPECT_NEAR(overlap(pi.data.data(), net.tpm(0).table), 1, 1e-12);
}

TEST(ComputePi, ClampedParentSelectsAColumn) {
    Rng rng(52);
    auto net = random_qbnet(Dag::from_edges({3, 2}, {{0, 1}}), rng);
    Evidence ev(std::map<int, int>{{0, 2}});
    ClampedNet cn(net, ev);
    PolytreeSession s(net, ev);
    s.collect();
    s.distribute();
    const auto &from_parent = s.messages().at({0, 1});
    auto pi = compute_pi(cn, 1, std::span(&from_parent, 1));
    std::vector<cplx> column(net.tpm(1).table.begin() + 4, net.tpm(1).table.end());
    EXPECT_NEAR(overlap(pi.data.data(), column), 1, 1e-12);
}

TEST(ComputePi, MissingParentMessageIsASchedulingError) {
    Rng rng(53);
    auto net = random_qbnet(Dag::from_edges({2, 2}, {{0, 1}}), rng);
    ClampedNet cn(net, Evidence{});
    EXPECT_THROW(compute_pi(cn, 1, {}), SchedulingError);
}

TEST(ComputeLambda, LeafIsAllOnes) {
    Rng rng(54);
    auto net = random_qbnet(Dag::from_edges({2, 3}, {{0, 1}}), rng);
    ClampedNet cn(net, Evidence{});
    auto lam = compute_lambda(cn, 1, {});
    ASSERT_EQ(lam.data.labels(), std::vector<int>({1}));
    for (auto v : lam.data.data()) {
        EXPECT_NEAR(std::abs(v - lam.data.data()[0]), 0, 1e-15);
    }
}

TEST(ComputeLambda, ObservedChildContributesItsTableRow) {
    Rng rng(55);
    auto net = random_qbnet(Dag::from_edges({3, 2}, {{0, 1}}), rng);
    Evidence ev(std::map<int, int>{{1, 1}});
    ClampedNet cn(net, ev);
    auto lam_child = compute_lambda(cn, 1, {});
    auto up = rule1_lambda_to_parent(cn, 1, 0, lam_child, {});
    auto lam = compute_lambda(cn, 0, std::span(&up, 1));
    // A(1 | a) for a = 0, 1, 2: own state fastest.
    std::vector<cplx> row = {net.tpm(1).table[1], net.tpm(1).table[3], net.tpm(1).table[5]};
    EXPECT_NEAR(overlap(lam.data.data(), row), 1, 1e-12);
}

TEST(Rule1, RootSendsAConstantMessage) {
    Rng rng(56);
    auto net = random_qbnet(Dag::from_edges({2, 3}, {}), rng);
    ClampedNet cn(net, Evidence{});
    auto lam = compute_lambda(cn, 0, {});
    auto m = rule1_lambda_to_parent(cn, 0, 1, lam, {});
    ASSERT_EQ(m.data.labels(), std::vector<int>({1}));
    for (auto v : m.data.data()) {
        EXPECT_NEAR(std::abs(v - m.data.data()[0]), 0, 1e-15);
    }
}

TEST(Rule1, UnobservedLeafGivesAFlatProfile) {
    Rng rng(57);
    auto net = random_qbnet(Dag::from_edges({3, 2}, {{0, 1}}), rng);
    ClampedNet cn(net, Evidence{});
    auto m = rule1_lambda_to_parent(cn, 1, 0, compute_lambda(cn, 1, {}), {});
    EXPECT_EQ(m.hidden_labels(), std::vector<int>({1}));
    int keep[] = {0};
    auto profile = squared_marginal(m.data, keep);
    for (double p : profile.data()) {
        EXPECT_NEAR(p, 1.0 / 3, 1e-12);
    }
}

TEST(Rule2, OnlyChildGetsTheNormalizedPi) {
    Rng rng(58);
    auto net = random_qbnet(Dag::from_edges({3, 2}, {{0, 1}}), rng);
    ClampedNet cn(net, Evidence{});
    auto pi = compute_pi(cn, 0, {});
    auto m = rule2_pi_to_child(cn, 0, 1, pi, {});
    EXPECT_NEAR(max_abs_difference(m.data, pi.data), 0, 1e-15);
    EXPECT_NEAR(squared_norm(m.data), 1, 1e-12);
}

TEST(Propagate, SingleRootWithoutEvidence) {
    Rng rng(59);
    auto net = random_qbnet(Dag::from_edges({3}, {}), rng);
    auto bel = propagate_polytree(net, Evidence{});
    ASSERT_EQ(bel.size(), 1u);
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(bel[0].probabilities[static_cast<size_t>(k)], std::norm(net.tpm(0).table[static_cast<size_t>(k)]),
                    1e-12);
    }
}

TEST(Propagate, ChainWithObservedChild) {
    Rng rng(60);
    auto net = random_qbnet(Dag::from_edges({3, 2}, {{0, 1}}), rng);
    auto bel = propagate_polytree(net, Evidence(std::map<int, int>{{1, 0}}));
    std::vector<double> want;
    double total = 0;
    for (int a = 0; a < 3; ++a) {
        const auto i = static_cast<size_t>(a);
        want.push_back(std::norm(net.tpm(1).table[2 * i] * net.tpm(0).table[i]));
        total += want.back();
    }
    for (int a = 0; a < 3; ++a) {
        EXPECT_NEAR(bel[0].probabilities[static_cast<size_t>(a)], want[static_cast<size_t>(a)] / total, 1e-12);
    }
}

TEST(Propagate, MatchesOracleOnRandomPolytrees) {
    for (uint64_t s = 0; s < 100; ++s) {
        Rng rng(derive_seed(61, s));
        std::uniform_int_distribution<int> size(1, 10);
        auto dag = random_polytree(size(rng), 3, rng);
        auto net = random_qbnet(dag, rng);
        std::map<int, int> obs;
        std::bernoulli_distribution coin(0.3);
        for (int v = 0; v < dag.size(); ++v) {
            if (coin(rng)) {
                obs[v] = std::uniform_int_distribution<int>(0, dag.card(v) - 1)(rng);
            }
        }
        EXPECT_LT(worst_gap(net, Evidence(obs)), 1e-8) << describe_edges(dag);
    }
}

TEST(Propagate, RejectsLoopsAndImpossibleEvidence) {
    Rng rng(62);
    auto diamond = random_qbnet(Dag::from_edges({2, 2, 2, 2}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}), rng);
    EXPECT_THROW(propagate_polytree(diamond, Evidence{}), StructureError);
    QBNet zero(Dag::from_edges({2, 2}, {{0, 1}}), {NodeTpm{0, {}, {1, 0}}, NodeTpm{1, {0}, {1, 0, 0, 1}}});
    EXPECT_THROW(propagate_polytree(zero, Evidence(std::map<int, int>{{1, 1}})), ImpossibleEvidenceError);
}

TEST(Propagate, HiddenLabelsCoverEveryOtherUnobservedNode) {
    Rng rng(63);
    auto dag = Dag::from_edges({2, 3, 2, 2}, {{0, 1}, {2, 1}, {1, 3}});
    auto net = random_qbnet(dag, rng);
    Evidence ev(std::map<int, int>{{2, 0}});
    for (const auto &bel : propagate_polytree(net, ev)) {
        if (!ev.observed(bel.node)) {
            EXPECT_EQ(bel.amplitude.labels(), std::vector<int>({0, 1, 3}));
            EXPECT_NEAR(squared_norm(bel.amplitude), 1, 1e-12);
        }
    }
}

// One extra sweep after the exact schedule changes nothing.
TEST(PolytreeSession, FixedPointAfterOneSweep) {
    for (uint64_t s = 0; s < 20; ++s) {
        Rng rng(derive_seed(64, s));
        auto net = random_qbnet(random_polytree(7, 3, rng), rng);
        PolytreeSession session(net, Evidence(std::map<int, int>{{3, 0}}));
        session.collect();
        session.distribute();
        auto first = session.messages();
        session.collect();
        session.distribute();
        for (const auto &[edge, msg] : session.messages()) {
            EXPECT_LT(max_abs_difference(msg.data, first.at(edge).data), 1e-12);
        }
    }
}

TEST(PolytreeSession, DistributeBeforeCollectIsASchedulingError) {
    Rng rng(65);
    // π to one child needs the λ message from the other.
    auto net = random_qbnet(Dag::from_edges({2, 2, 2}, {{0, 1}, {0, 2}}), rng);
    PolytreeSession session(net, Evidence{});
    EXPECT_THROW(session.distribute(), SchedulingError);
}

// Real nonnegative tables √P reproduce classical posteriors.
TEST(Propagate, ClassicalEmbedding) {
    for (uint64_t s = 0; s < 20; ++s) {
        Rng rng(derive_seed(66, s));
        auto dag = random_polytree(6, 3, rng);
        auto base = random_qbnet(dag, rng);
        auto tpms = base.tpms();
        for (auto &t : tpms) {
            for (auto &v : t.table) {
                v = std::abs(v);
            }
        }
        QBNet net(dag, tpms);
        Evidence ev(std::map<int, int>{{0, 0}});
        // Classical posterior by direct summation of Π P(x_j | pa).
        std::vector<std::vector<double>> want(static_cast<size_t>(dag.size()));
        for (int v = 0; v < dag.size(); ++v) {
            want[static_cast<size_t>(v)].assign(static_cast<size_t>(dag.card(v)), 0);
        }
        std::vector<int> x(static_cast<size_t>(dag.size()), 0);
        double total = 0;
        while (true) {
            if (x[0] == 0) {
                double p = 1;
                for (int v = 0; v < dag.size(); ++v) {
                    size_t off = static_cast<size_t>(x[static_cast<size_t>(v)]);
                    size_t stride = static_cast<size_t>(dag.card(v));
                    for (int q : dag.parents(v)) {
                        off += stride * static_cast<size_t>(x[static_cast<size_t>(q)]);
                        stride *= static_cast<size_t>(dag.card(q));
                    }
                    p *= std::pow(net.tpm(v).table[off].real(), 2);
                }
                total += p;
                for (int v = 0; v < dag.size(); ++v) {
                    want[static_cast<size_t>(v)][static_cast<size_t>(x[static_cast<size_t>(v)])] += p;
                }
            }
            int k = dag.size() - 1;
            while (k >= 0 && ++x[static_cast<size_t>(k)] == dag.card(k)) {
                x[static_cast<size_t>(k--)] = 0;
            }
            if (k < 0) {
                break;
            }
        }
        for (const auto &bel : propagate_polytree(net, ev)) {
            if (bel.node == 0) {
                continue;
            }
            for (size_t k = 0; k < bel.probabilities.size(); ++k) {
                EXPECT_NEAR(bel.probabilities[k], want[static_cast<size_t>(bel.node)][k] / total, 1e-10);
            }
        }
    }
}

TEST(Propagate, GlobalPhasesDoNotMatter) {
    for (uint64_t s = 0; s < 20; ++s) {
        Rng rng(derive_seed(67, s));
        auto dag = random_polytree(6, 3, rng);
        auto net = random_qbnet(dag, rng);
        auto tpms = net.tpms();
        std::uniform_real_distribution<double> angle(0, 2 * M_PI);
        for (auto &t : tpms) {
            const cplx phase = std::polar(1.0, angle(rng));
            for (auto &v : t.table) {
                v *= phase;
            }
        }
        QBNet rotated(dag, tpms);
        Evidence ev(std::map<int, int>{{dag.size() - 1, 0}});
        auto a = propagate_polytree(net, ev), b = propagate_polytree(rotated, ev);
        for (size_t n = 0; n < a.size(); ++n) {
            for (size_t k = 0; k < a[n].probabilities.size(); ++k) {
                EXPECT_NEAR(a[n].probabilities[k], b[n].probabilities[k], 1e-10);
            }
        }
    }
}

}  // namespace
}  // namespace qbn
