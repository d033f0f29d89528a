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

#include "qbnet/squashed.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

namespace qbn {

namespace {

constexpr double kRankCutoff = 1e-12;
constexpr double kNegligibleWeight = 1e-14;
constexpr double kInitialStep = 0.4;
constexpr double kMinStep = 1e-8;

/// -Σ s ln s over the eigenvalues of an unnormalized PSD matrix.
double entropy_sum(const Eigen::MatrixXcd &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m, Eigen::EigenvaluesOnly);
    double h = 0;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        double s = eig.eigenvalues()(k);
        if (s > 0) {
            h -= s * std::log(s);
        }
    }
    return h;
}

class Objective {
   public:
    Objective(Eigen::MatrixXcd psi, int dx, int dy, int lambda_card)
        : psi_(std::move(psi)), dx_(dx), dy_(dy), k_(lambda_card), r_(static_cast<int>(psi_.cols())) {
    }

    int rows() const {
        return k_ * r_;
    }
    int rank() const {
        return r_;
    }
    int lambda_card() const {
        return k_;
    }

    /// Unnormalized component P(λ) ρ^λ for the isometry W.
    Eigen::MatrixXcd component(const Eigen::MatrixXcd &w, int lambda) const {
        Eigen::MatrixXcd phi = psi_ * w.block(lambda * r_, 0, r_, r_).transpose();
        return phi * phi.adjoint();
    }

    /// P(λ)[S(ρ^λ_x) + S(ρ^λ_y) - S(ρ^λ)].
    double block_cost(const Eigen::MatrixXcd &w, int lambda) const {
        Eigen::MatrixXcd sigma = component(w, lambda);
        const double p = sigma.trace().real();
        if (!(p > kNegligibleWeight)) {
            return 0.0;
        }
        Eigen::MatrixXcd sx = Eigen::MatrixXcd::Zero(dx_, dx_);
        Eigen::MatrixXcd sy = Eigen::MatrixXcd::Zero(dy_, dy_);
        for (int a = 0; a < dx_; ++a) {
            for (int b = 0; b < dx_; ++b) {
                for (int y = 0; y < dy_; ++y) {
                    sx(a, b) += sigma(a * dy_ + y, b * dy_ + y);
                }
            }
        }
        for (int a = 0; a < dy_; ++a) {
            for (int b = 0; b < dy_; ++b) {
                for (int x = 0; x < dx_; ++x) {
                    sy(a, b) += sigma(x * dy_ + a, x * dy_ + b);
                }
            }
        }
        return entropy_sum(sx) + entropy_sum(sy) - entropy_sum(sigma) + p * std::log(p);
    }

   private:
    Eigen::MatrixXcd psi_;
    int dx_, dy_, k_, r_;
};

void rotate_rows(Eigen::MatrixXcd &w, int j, int k, double theta, double phi) {
    const double c = std::cos(theta), s = std::sin(theta);
    const cplx e = std::polar(1.0, phi);
    Eigen::RowVectorXcd rj = w.row(j), rk = w.row(k);
    w.row(j) = c * rj - s * std::conj(e) * rk;
    w.row(k) = s * e * rj + c * rk;
}

struct SearchOutcome {
    double cost;
    Eigen::MatrixXcd w;
};

SearchOutcome local_search(const Objective &obj, Eigen::MatrixXcd w, int budget, Rng &rng) {
    const int r = obj.rank();
    const int n = obj.rows();
    std::vector<double> blocks(static_cast<size_t>(obj.lambda_card()));
    double cost = 0;
    for (int l = 0; l < obj.lambda_card(); ++l) {
        blocks[static_cast<size_t>(l)] = obj.block_cost(w, l);
        cost += blocks[static_cast<size_t>(l)];
    }
    int evals = 1;
    if (n < 2) {
        return {cost, w};
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    double step = kInitialStep;
    int failures = 0;
    const int patience = std::max(8, n);
    while (evals < budget && step > kMinStep && cost > 1e-14) {
        int j = pick(rng), k = pick(rng);
        if (j == k) {
            continue;
        }
        const double phi = phase(rng);
        bool accepted = false;
        for (double sign : {1.0, -1.0}) {
            if (evals >= budget) {
                break;
            }
            Eigen::MatrixXcd trial = w;
            rotate_rows(trial, j, k, sign * step, phi);
            const int lj = j / r, lk = k / r;
            double bj = obj.block_cost(trial, lj);
            double bk = lk == lj ? 0.0 : obj.block_cost(trial, lk);
            double trial_cost = cost - blocks[static_cast<size_t>(lj)] + bj;
            if (lk != lj) {
                trial_cost += bk - blocks[static_cast<size_t>(lk)];
            }
            ++evals;
            if (trial_cost < cost - 1e-15) {
                w = std::move(trial);
                blocks[static_cast<size_t>(lj)] = bj;
                if (lk != lj) {
                    blocks[static_cast<size_t>(lk)] = bk;
                }
                cost = trial_cost;
                accepted = true;
                break;
            }
        }
        if (accepted) {
            failures = 0;
        } else if (++failures >= patience) {
            step /= 2;
            failures = 0;
        }
    }
    return {cost, w};
}

}  // namespace

SquashedResult squashed_entanglement(const DensityMatrix &rho_xy, const SquashedOptions &options) {
    if (rho_xy.axes().size() != 2) {
        throw ArgumentError("squashed entanglement needs a state over exactly two axes");
    }
    if (options.restarts < 1 || options.evaluations < 1 || options.lambda_card < 0) {
        throw ArgumentError("squashed entanglement needs at least one restart and one evaluation");
    }
    const int dx = rho_xy.axes()[0].dim;
    const int dy = rho_xy.axes()[1].dim;

    spectrum(rho_xy);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho_xy.matrix());
    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k) {
        if (eig.eigenvalues()(k) > kRankCutoff) {
            kept.push_back(k);
        }
    }
    const int rank = static_cast<int>(kept.size());
    Eigen::MatrixXcd psi(rho_xy.dim(), rank);
    for (int e = 0; e < rank; ++e) {
        psi.col(e) = std::sqrt(eig.eigenvalues()(kept[static_cast<size_t>(e)])) *
                     eig.eigenvectors().col(kept[static_cast<size_t>(e)]);
    }
    // Rescale so the purification has unit norm after dropping the null space.
    psi /= std::sqrt((psi.adjoint() * psi).trace().real());

    const int lambda_card = options.lambda_card > 0 ? options.lambda_card : rank * rank;
    Objective obj(psi, dx, dy, lambda_card);
    const int n = obj.rows();

    SearchOutcome best{std::numeric_limits<double>::infinity(), {}};
    int best_restart = 0;
    for (int restart = 0; restart < options.restarts; ++restart) {
        Rng rng(derive_seed(options.seed, static_cast<uint64_t>(restart)));
        Eigen::MatrixXcd w;
        if (restart == 0) {
            w = Eigen::MatrixXcd::Zero(n, rank);
            w.topRows(rank) = Eigen::MatrixXcd::Identity(rank, rank);
        } else {
            w = random_unitary(n, rng).leftCols(rank);
        }
        auto outcome = local_search(obj, std::move(w), options.evaluations, rng);
        if (outcome.cost < best.cost) {
            best = std::move(outcome);
            best_restart = restart;
        }
        if (best.cost <= 1e-14) {
            break;
        }
    }

    std::vector<double> weights;
    std::vector<DensityMatrix> components;
    double total = 0;
    for (int l = 0; l < lambda_card; ++l) {
        Eigen::MatrixXcd sigma = obj.component(best.w, l);
        const double p = sigma.trace().real();
        if (!(p > kNegligibleWeight)) {
            continue;
        }
        Eigen::MatrixXcd c = (sigma + sigma.adjoint()) / (2.0 * p);
        weights.push_back(p);
        components.push_back(DensityMatrix::trusted(rho_xy.axes(), std::move(c)));
        total += p;
    }
    for (double &w : weights) {
        w /= total;
    }
    DiagonalExtension witness(std::move(weights), std::move(components));
    const double value = 0.5 * cmi_diagonal(witness);
    return {value, std::move(witness), best_restart};
}

}  // namespace qbn
