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
#include <unsupported/Eigen/KroneckerProduct>

#include "qbnet/qinfo.h"
#include "qbnet/random.h"
#include "qbnet/squashed.h"

namespace qbn {
namespace {

const double kLn2 = std::log(2.0);

DensityMatrix bell() {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = psi(3) = 1 / std::sqrt(2.0);
    return DensityMatrix({{0, 2}, {1, 2}}, psi * psi.adjoint());
}

void expect_valid_witness(const DensityMatrix &rho, const SquashedResult &r) {
    EXPECT_LT((r.witness.marginal().matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(r.value, cmi_diagonal(r.witness) / 2, 1e-12);
}

TEST(Squashed, ProductStateIsZero) {
    Rng rng(41);
    auto rho = tensor_product(random_density_matrix({{0, 2}}, 2, rng), random_density_matrix({{1, 2}}, 2, rng));
    auto r = squashed_entanglement(rho, {.restarts = 2, .evaluations = 200});
    EXPECT_LE(r.value, 1e-6);
    expect_valid_witness(rho, r);
}

TEST(Squashed, BellIsLnTwo) {
    auto rho = bell();
    auto r = squashed_entanglement(rho, {.restarts = 2, .evaluations = 200});
    EXPECT_NEAR(r.value, kLn2, 1e-6);
    expect_valid_witness(rho, r);
}

TEST(Squashed, ClassicalMixtureIsNearZero) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(3, 3) = 0.5;
    DensityMatrix rho({{0, 2}, {1, 2}}, m);
    auto r = squashed_entanglement(rho);
    EXPECT_LE(r.value, 1e-3);
    expect_valid_witness(rho, r);
}

TEST(Squashed, NeverExceedsHalfTheMutualInformation) {
    int x[] = {0}, y[] = {1};
    for (uint64_t s = 0; s < 10; ++s) {
        Rng rng(derive_seed(42, s));
        auto rho = random_density_matrix({{0, 2}, {1, 3}}, 1 + static_cast<int>(s % 3), rng);
        auto r = squashed_entanglement(rho, {.restarts = 2, .evaluations = 200, .seed = s});
        EXPECT_LE(r.value, quantum_mutual_information(rho, x, y) / 2 + 1e-9);
        expect_valid_witness(rho, r);
    }
}

TEST(Squashed, LocalUnitaryInvarianceOnBell) {
    for (uint64_t s = 0; s < 20; ++s) {
        Rng rng(derive_seed(43, s));
        Eigen::MatrixXcd ux = random_unitary(2, rng), uy = random_unitary(2, rng);
        Eigen::MatrixXcd u = Eigen::kroneckerProduct(ux, uy);
        DensityMatrix rho({{0, 2}, {1, 2}}, u * bell().matrix() * u.adjoint());
        auto r = squashed_entanglement(rho, {.restarts = 1, .evaluations = 100});
        EXPECT_NEAR(r.value, kLn2, 1e-3);
    }
}

TEST(Squashed, SameSeedSameResult) {
    Rng rng(44);
    auto rho = random_density_matrix({{0, 2}, {1, 2}}, 3, rng);
    SquashedOptions opts{.restarts = 3, .evaluations = 150, .seed = 9};
    auto a = squashed_entanglement(rho, opts);
    auto b = squashed_entanglement(rho, opts);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(Squashed, RejectsOtherShapes) {
    DensityMatrix one({{0, 2}}, Eigen::MatrixXcd::Identity(2, 2) / 2.0);
    EXPECT_THROW(squashed_entanglement(one), ArgumentError);
    EXPECT_THROW(squashed_entanglement(bell(), {.restarts = 0}), ArgumentError);
}

}  // namespace
}  // namespace qbn
