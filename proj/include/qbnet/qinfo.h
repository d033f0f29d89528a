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

#ifndef QBNET_QINFO_H
#define QBNET_QINFO_H

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qbnet/labeled_tensor.h"
#include "qbnet/qbnet.h"
#include "qbnet/random.h"

namespace qbn {

/// Eigenvalues below this are an error; between it and zero they are roundoff.
inline constexpr double kNegativeEigenvalueReject = -1e-8;
inline constexpr double kDensityTolerance = 1e-10;

/// Hermitian, positive semidefinite, unit-trace matrix over labeled subsystems.
///
/// Rows are indexed row-major over `axes` in the stored order (first axis slowest).
/// Unlike LabeledTensor the axis order is free; labels only need to be distinct.
class DensityMatrix {
   public:
    DensityMatrix(std::vector<Axis> axes, Eigen::MatrixXcd matrix);

    /// Skips the spectral checks; for matrices derived from states already known to be valid.
    static DensityMatrix trusted(std::vector<Axis> axes, Eigen::MatrixXcd matrix);
    /// |ψ⟩⟨ψ| / ⟨ψ|ψ⟩ with axes in the ket's (ascending) label order.
    static DensityMatrix pure(const LabeledAmplitude &ket);

    const std::vector<Axis> &axes() const {
        return axes_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }
    Eigen::Index dim() const {
        return matrix_.rows();
    }
    std::vector<int> labels() const;
    bool has_label(int label) const;

   private:
    struct Unchecked {};
    DensityMatrix(std::vector<Axis> axes, Eigen::MatrixXcd matrix, Unchecked);

    std::vector<Axis> axes_;
    Eigen::MatrixXcd matrix_;
};

/// Traces out every axis not in `keep`; surviving axes keep their relative order.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep);

/// ρ_a ⊗ ρ_b with a's axes first.
DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b);

/// Eigenvalues clamped into [0, 1]. Throws InvalidStateError below kNegativeEigenvalueReject.
std::vector<double> spectrum(const DensityMatrix &rho);

/// S(ρ) = -tr ρ ln ρ in nats.
double von_neumann_entropy(const DensityMatrix &rho);

/// Entropy of the reduced state on `labels` (0 for the empty set).
double entropy_of(const DensityMatrix &rho, std::span<const int> labels);

double quantum_conditional_entropy(const DensityMatrix &rho, std::span<const int> x, std::span<const int> y);
double quantum_mutual_information(const DensityMatrix &rho, std::span<const int> x, std::span<const int> y);
/// S(x|z) + S(y|z) - S(x,y|z).
double quantum_cmi(const DensityMatrix &rho, std::span<const int> x, std::span<const int> y,
                   std::span<const int> z);

/// Zeroes every entry whose row and column differ on any of `labels`.
DensityMatrix dephase(const DensityMatrix &rho, std::span<const int> labels);

/// Normalized nonnegative table over labeled variables.
class ClassicalDistribution {
   public:
    explicit ClassicalDistribution(ProbabilityTable table);
    const ProbabilityTable &table() const {
        return table_;
    }

   private:
    ProbabilityTable table_;
};

double classical_entropy(const ClassicalDistribution &dist, std::span<const int> x);
double classical_conditional_entropy(const ClassicalDistribution &dist, std::span<const int> x,
                                     std::span<const int> y);
double classical_mutual_information(const ClassicalDistribution &dist, std::span<const int> x,
                                    std::span<const int> y);
double classical_cmi(const ClassicalDistribution &dist, std::span<const int> x, std::span<const int> y,
                     std::span<const int> z);

/// Weights P(λ) together with one state ρ^λ over (x, y) per value of λ.
///
/// Each component has exactly two axes; the first is x and the second y.
class DiagonalExtension {
   public:
    DiagonalExtension(std::vector<double> weights, std::vector<DensityMatrix> components);

    const std::vector<double> &weights() const {
        return weights_;
    }
    const std::vector<DensityMatrix> &components() const {
        return components_;
    }
    int lambda_card() const {
        return static_cast<int>(weights_.size());
    }
    const Axis &x_axis() const {
        return components_.front().axes()[0];
    }
    const Axis &y_axis() const {
        return components_.front().axes()[1];
    }

    /// Σ_λ P(λ) |λ⟩⟨λ| ⊗ ρ^λ with axes (λ, x, y); λ is the slowest index.
    DensityMatrix assemble(int lambda_label) const;
    /// Σ_λ P(λ) ρ^λ.
    DensityMatrix marginal() const;

   private:
    std::vector<double> weights_;
    std::vector<DensityMatrix> components_;
};

/// Σ_λ P(λ) [S(ρ^λ_x) + S(ρ^λ_y) - S(ρ^λ_{x,y})].
double cmi_diagonal(const DiagonalExtension &ext);

/// Reduced state of the net's pure state on keep ∪ diag, dephased on diag.
DensityMatrix net_to_density(const QBNet &net, const Multinode &keep, const Multinode &diag,
                             size_t cap = kDefaultDimensionCap);

/// Same as net_to_density for an amplitude tensor that is already built.
DensityMatrix density_from_amplitude(const LabeledAmplitude &psi, const Multinode &keep, const Multinode &diag,
                                     size_t cap = kDefaultDimensionCap);

/// Haar-random unitary via QR of a complex Gaussian matrix.
Eigen::MatrixXcd random_unitary(int n, Rng &rng);

/// G G† / tr(G G†) for a complex Gaussian G with `rank` columns.
DensityMatrix random_density_matrix(std::vector<Axis> axes, int rank, Rng &rng);

/// Random weights (uniform on the simplex) with random components of random rank.
DiagonalExtension random_extension(int x_dim, int y_dim, int lambda_card, Rng &rng);

}  // namespace qbn

#endif
