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

const double kLn2 = std::log(2.0);

DensityMatrix diag_state(std::vector<Axis> axes, std::vector<double> d) {
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size()));
    return DensityMatrix(std::move(axes), v.cast<cplx>().asDiagonal());
}

DensityMatrix bell() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = psi(3) = 1 / std::sqrt(2.0);
    return DensityMatrix({{0, 2}, {1, 2}}, psi * psi.adjoint());
}

double entrywise_gap(const DensityMatrix &a, const DensityMatrix &b) {
    return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

TEST(DensityMatrix, RejectsInvalidMatrices) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_THROW(DensityMatrix({{0, 2}}, m), InvalidStateError);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    EXPECT_THROW(DensityMatrix({{0, 2}}, m), InvalidStateError);
    m = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
    m(0, 1) = 0.1;
    EXPECT_THROW(DensityMatrix({{0, 2}}, m), InvalidStateError);
    EXPECT_THROW(DensityMatrix({{0, 3}}, Eigen::MatrixXcd::Identity(2, 2) / 2.0), ArgumentError);
    EXPECT_THROW(DensityMatrix({{0, 2}, {0, 2}}, Eigen::MatrixXcd::Identity(4, 4) / 4.0), ArgumentError);
}

TEST(VonNeumannEntropy, Examples) {
    EXPECT_NEAR(von_neumann_entropy(diag_state({{0, 2}}, {1, 0})), 0, 1e-15);
    EXPECT_NEAR(von_neumann_entropy(diag_state({{0, 2}}, {0.5, 0.5})), kLn2, 1e-12);
    EXPECT_NEAR(von_neumann_entropy(diag_state({{0, 2}}, {0.7, 0.3})),
                -0.7 * std::log(0.7) - 0.3 * std::log(0.3), 1e-12);
}

TEST(VonNeumannEntropy, IsUnitaryInvariant) {
    Rng rng(2);
    auto rho = random_density_matrix({{0, 3}}, 2, rng);
    Eigen::MatrixXcd u = random_unitary(3, rng);
    DensityMatrix rotated({{0, 3}}, u * rho.matrix() * u.adjoint());
    EXPECT_NEAR(von_neumann_entropy(rho), von_neumann_entropy(rotated), 1e-10);
}

TEST(QuantumInformation, ProductAndBell) {
    Rng rng(3);
    auto p = tensor_product(random_density_matrix({{0, 2}}, 2, rng), random_density_matrix({{1, 3}}, 3, rng));
    int x[] = {0}, y[] = {1};
    EXPECT_NEAR(quantum_mutual_information(p, x, y), 0, 1e-10);
    EXPECT_NEAR(quantum_conditional_entropy(bell(), x, y), -kLn2, 1e-10);
    EXPECT_NEAR(quantum_mutual_information(bell(), x, y), 2 * kLn2, 1e-10);
    int missing[] = {4};
    EXPECT_THROW(quantum_mutual_information(bell(), x, missing), ArgumentError);
}

TEST(QuantumInformation, StrongSubadditivity) {
    for (uint64_t s = 0; s < 50; ++s) {
        Rng rng(derive_seed(4, s));
        auto rho = random_density_matrix({{0, 2}, {1, 2}, {2, 2}}, 1 + static_cast<int>(s % 8), rng);
        int x[] = {0}, y[] = {1}, z[] = {2};
        EXPECT_GE(quantum_cmi(rho, x, y, z), -1e-9);
    }
}

TEST(PartialTrace, KeepsRelativeOrder) {
    Rng rng(5);
    auto a = random_density_matrix({{3, 2}}, 2, rng);
    auto b = random_density_matrix({{1, 3}}, 2, rng);
    auto ab = tensor_product(a, b);
    int keep_b[] = {1};
    int keep_a[] = {3};
    EXPECT_LT(entrywise_gap(partial_trace(ab, keep_b), b), 1e-12);
    EXPECT_LT(entrywise_gap(partial_trace(ab, keep_a), a), 1e-12);
}

TEST(ClassicalInformation, Examples) {
    ClassicalDistribution uniform(ProbabilityTable({{0, 2}}, {0.5, 0.5}));
    int x[] = {0}, y[] = {1};
    EXPECT_NEAR(classical_entropy(uniform, x), kLn2, 1e-12);
    ClassicalDistribution copy(ProbabilityTable({{0, 2}, {1, 2}}, {0.5, 0, 0, 0.5}));
    EXPECT_NEAR(classical_mutual_information(copy, x, y), kLn2, 1e-12);
    EXPECT_NEAR(classical_conditional_entropy(copy, x, y), 0, 1e-12);
    EXPECT_THROW(ClassicalDistribution(ProbabilityTable({{0, 2}}, {1.5, -0.5})), ArgumentError);
}

TEST(ClassicalInformation, CmiIsTheAverageOfConditionedMutualInformation) {
    Rng rng(6);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> p(12);
    double total = 0;
    for (auto &v : p) {
        v = u(rng);
        total += v;
    }
    for (auto &v : p) {
        v /= total;
    }
    // Labels 0 (x, 2 states), 1 (y, 2 states), 2 (λ, 3 states).
    ProbabilityTable table({{0, 2}, {1, 2}, {2, 3}}, p);
    ClassicalDistribution dist(table);
    int x[] = {0}, y[] = {1}, z[] = {2};
    double want = 0;
    for (int l = 0; l < 3; ++l) {
        auto slice_l = slice(table, 2, l);
        double pl = 0;
        for (double v : slice_l.data()) {
            pl += v;
        }
        ClassicalDistribution cond(scaled(slice_l, 1 / pl));
        want += pl * classical_mutual_information(cond, x, y);
    }
    double got = classical_cmi(dist, x, y, z);
    EXPECT_GE(got, 0);
    EXPECT_NEAR(got, want, 1e-12);
}

TEST(Dephase, Examples) {
    auto d = diag_state({{0, 2}, {1, 2}}, {0.1, 0.2, 0.3, 0.4});
    int both[] = {0, 1};
    EXPECT_LT(entrywise_gap(dephase(d, both), d), 1e-15);
    Eigen::MatrixXcd plus = Eigen::MatrixXcd::Constant(2, 2, 0.5);
    int own[] = {0};
    auto out = dephase(DensityMatrix({{0, 2}}, plus), own);
    EXPECT_LT(entrywise_gap(out, diag_state({{0, 2}}, {0.5, 0.5})), 1e-15);
}

TEST(Dephase, IdempotentAndEntropyNonDecreasing) {
    for (uint64_t s = 0; s < 20; ++s) {
        Rng rng(derive_seed(7, s));
        auto rho = random_density_matrix({{0, 2}, {1, 3}}, 3, rng);
        int z[] = {1};
        auto once = dephase(rho, z);
        EXPECT_LT(entrywise_gap(dephase(once, z), once), 1e-15);
        EXPECT_NEAR(once.matrix().trace().real(), 1, 1e-12);
        EXPECT_GE(von_neumann_entropy(once), von_neumann_entropy(rho) - 1e-10);
    }
}

TEST(CmiDiagonal, ProductComponentsGiveZero) {
    Rng rng(8);
    std::vector<DensityMatrix> comps;
    for (int l = 0; l < 3; ++l) {
        comps.push_back(
            tensor_product(random_density_matrix({{0, 2}}, 2, rng), random_density_matrix({{1, 3}}, 2, rng)));
    }
    DiagonalExtension ext({0.2, 0.3, 0.5}, comps);
    EXPECT_NEAR(cmi_diagonal(ext), 0, 1e-10);
}

TEST(CmiDiagonal, BellComponentGivesTwoLnTwo) {
    DiagonalExtension ext({1.0}, {bell()});
    EXPECT_NEAR(cmi_diagonal(ext), 2 * kLn2, 1e-10);
}

TEST(CmiDiagonal, MatchesQuantumCmiOfTheAssembledState) {
    for (uint64_t s = 0; s < 200; ++s) {
        Rng rng(derive_seed(9, s));
        std::uniform_int_distribution<int> dim(1, 3), lam(1, 3);
        auto ext = random_extension(dim(rng), dim(rng), lam(rng), rng);
        auto rho = ext.assemble(7);
        int x[] = {ext.x_axis().label}, y[] = {ext.y_axis().label}, z[] = {7};
        EXPECT_NEAR(cmi_diagonal(ext), quantum_cmi(rho, x, y, z), 1e-10);
    }
}

// Vanishing diagonal CMI forces every component to factorize.
TEST(CmiDiagonal, ZeroOnlyForProductComponents) {
    int x[] = {0}, y[] = {1};
    for (uint64_t s = 0; s < 100; ++s) {
        Rng rng(derive_seed(10, s));
        DensityMatrix comp = s % 2 == 0 ? tensor_product(random_density_matrix({{0, 2}}, 1, rng),
                                                         random_density_matrix({{1, 2}}, 2, rng))
                                        : random_density_matrix({{0, 2}, {1, 2}}, 2, rng);
        DiagonalExtension ext({1.0}, {comp});
        if (cmi_diagonal(ext) <= 1e-10) {
            auto fact = tensor_product(partial_trace(comp, x), partial_trace(comp, y));
            EXPECT_LE(entrywise_gap(comp, fact), 1e-5);
        }
    }
}

TEST(DiagonalExtension, Validation) {
    EXPECT_THROW(DiagonalExtension({0.5, 0.6}, {bell(), bell()}), ArgumentError);
    EXPECT_THROW(DiagonalExtension({1.0}, {}), ArgumentError);
    auto other = diag_state({{0, 3}, {1, 2}}, {0.2, 0.2, 0.2, 0.2, 0.1, 0.1});
    EXPECT_THROW(DiagonalExtension({0.5, 0.5}, {bell(), other}), ArgumentError);
}

TEST(NetToDensity, PureNetIsARankOneProjector) {
    Rng rng(11);
    auto net = random_qbnet(Dag::from_edges({2, 3}, {{0, 1}}), rng);
    auto rho = net_to_density(net, {0, 1}, {});
    EXPECT_NEAR(rho.matrix().trace().real(), 1, 1e-12);
    EXPECT_LT((rho.matrix() * rho.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(NetToDensity, IndependentRootsGiveAProductState) {
    Rng rng(12);
    auto net = random_qbnet(Dag::from_edges({2, 3}, {}), rng);
    auto rho = net_to_density(net, {0, 1}, {});
    int x[] = {0}, y[] = {1};
    EXPECT_LT(entrywise_gap(rho, tensor_product(partial_trace(rho, x), partial_trace(rho, y))), 1e-12);
}

TEST(NetToDensity, SeparatedExtensionHasZeroCmi) {
    Dag dag = extension_dag_separated(2, 2, 2);
    for (uint64_t s = 0; s < 20; ++s) {
        Rng rng(derive_seed(13, s));
        auto rho = net_to_density(random_qbnet(dag, rng), {kX, kY}, {kLambda});
        int x[] = {kX}, y[] = {kY}, z[] = {kLambda};
        EXPECT_LT(std::abs(quantum_cmi(rho, x, y, z)), 1e-9);
    }
}

TEST(NetToDensity, OverlapIsAnArgumentError) {
    Rng rng(14);
    auto net = random_qbnet(Dag::from_edges({2, 2}, {}), rng);
    EXPECT_THROW(net_to_density(net, {0}, {0}), ArgumentError);
}

}  // namespace
}  // namespace qbn
