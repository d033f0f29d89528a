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

#include "qbnet/constructions.h"
#include "qbnet/qinfo.h"
#include "qbnet/random.h"

namespace qbn {
namespace {

DiagonalExtension single(Eigen::MatrixXcd m) {
    return DiagonalExtension({1.0}, {DensityMatrix({{0, 2}, {1, 2}}, std::move(m))});
}

TEST(ExtensionDags, Shapes) {
    auto full = extension_dag_full(2, 3, 4);
    EXPECT_EQ(full.size(), 5);
    EXPECT_EQ(full.edges().size(), 10u);
    EXPECT_EQ(full.card(kLambda), 2);
    EXPECT_EQ(full.card(kY0), 4);
    auto sep = extension_dag_separated(2, 2, 2);
    EXPECT_EQ(sep.edges().size(), 6u);
}

TEST(DensityToQbnet, PureProductBasisState) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1;
    auto net = density_to_qbnet(single(m));
    auto p = marginal_probability(net, {kX, kY});
    EXPECT_NEAR(p.data()[0], 1, 1e-12);
    EXPECT_EQ(net.dag().card(kLambda), 1);
}

TEST(DensityToQbnet, MaximallyMixedHasUniformEigenWeights) {
    auto net = density_to_qbnet(single(Eigen::MatrixXcd::Identity(4, 4) / 4.0));
    auto p = marginal_probability(net, {kX0, kY0});
    for (double v : p.data()) {
        EXPECT_NEAR(v, 0.25, 1e-12);
    }
}

TEST(DensityToQbnet, ReconstructsTheExtension) {
    for (uint64_t s = 0; s < 200; ++s) {
        Rng rng(derive_seed(31, s));
        std::uniform_int_distribution<int> dim(1, 3);
        auto ext = random_extension(dim(rng), dim(rng), dim(rng), rng);
        auto net = density_to_qbnet(ext);
        auto rho = net_to_density(net, {kX, kY}, {kLambda});
        EXPECT_LT((rho.matrix() - ext.assemble(7).matrix()).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(DensityToQbnet, DegenerateSpectrumStillReconstructs) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(1, 1) = 0.5;
    m(0, 1) = m(1, 0) = 0.5;
    Eigen::MatrixXcd mixed = Eigen::MatrixXcd::Identity(4, 4) / 4.0;
    DiagonalExtension ext({0.5, 0.5}, {DensityMatrix({{0, 2}, {1, 2}}, m), DensityMatrix({{0, 2}, {1, 2}}, mixed)});
    auto rho = net_to_density(density_to_qbnet(ext), {kX, kY}, {kLambda});
    EXPECT_LT((rho.matrix() - ext.assemble(7).matrix()).cwiseAbs().maxCoeff(), 1e-9);
}

void expect_same_amplitudes(const QBNet &five, const QBNet &three) {
    const Dag &d = five.dag();
    const int cx0 = d.card(kX0), cy0 = d.card(kY0);
    for (int l = 0; l < d.card(kLambda); ++l) {
        for (int x0 = 0; x0 < cx0; ++x0) {
            for (int y0 = 0; y0 < cy0; ++y0) {
                for (int x = 0; x < d.card(kX); ++x) {
                    for (int y = 0; y < d.card(kY); ++y) {
                        int full[] = {l, x0, y0, x, y};
                        int grouped[] = {l, x * cx0 + x0, y * cy0 + y0};
                        EXPECT_LT(std::abs(joint_amplitude(five, full) - joint_amplitude(three, grouped)), 1e-10);
                    }
                }
            }
        }
    }
}

TEST(ReduceQbnet, SeparatedFormAlwaysReduces) {
    for (uint64_t s = 0; s < 20; ++s) {
        Rng rng(derive_seed(32, s));
        auto net = random_qbnet(extension_dag_separated(2, 3, 2), rng);
        auto red = reduce_qbnet(net);
        ASSERT_EQ(red.size(), 3);
        EXPECT_EQ(red.dag().card(1), 9);
        EXPECT_EQ(red.dag().card(2), 4);
        // y ignores x and x0, so X and Y hang off λ alone.
        EXPECT_TRUE(red.dag().parents(2) == std::vector<int>({0}));
        expect_same_amplitudes(net, red);
    }
}

TEST(ReduceQbnet, FullFormWithoutY0DependenceReduces) {
    Rng rng(33);
    auto net = random_qbnet(extension_dag_full(2, 2, 2), rng);
    auto tpms = net.tpms();
    // Parents of x are (x0, y0, λ); copy every y0 = 0 column onto y0 = 1.
    auto &t = tpms[kX].table;
    for (size_t e = 0; e < t.size(); ++e) {
        if (e / 4 % 2 == 1) {
            t[e] = t[e - 4];
        }
    }
    QBNet fixed(net.dag(), tpms);
    auto red = reduce_qbnet(fixed);
    EXPECT_FALSE(red.dag().parents(2).empty());
    expect_same_amplitudes(fixed, red);
}

TEST(ReduceQbnet, RejectsY0Dependence) {
    Rng rng(34);
    EXPECT_THROW(reduce_qbnet(random_qbnet(extension_dag_full(2, 2, 2), rng)), NotReducibleError);
}

TEST(ReduceQbnet, RejectsWrongShapes) {
    Rng rng(35);
    EXPECT_THROW(reduce_qbnet(random_qbnet(Dag::from_edges({2, 2}, {{0, 1}}), rng)), ArgumentError);
}

}  // namespace
}  // namespace qbn
