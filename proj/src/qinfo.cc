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

#include "qbnet/qinfo.h"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <set>

namespace qbn {

namespace {

void require_distinct(std::span<const Axis> axes) {
    std::set<int> seen;
    for (const auto &a : axes) {
        if (!seen.insert(a.label).second) {
            throw ArgumentError("duplicate label " + std::to_string(a.label));
        }
    }
}

std::vector<Axis> select_axes(const std::vector<Axis> &axes, std::span<const int> labels) {
    std::vector<Axis> out;
    for (int l : labels) {
        auto it = std::find_if(axes.begin(), axes.end(), [&](const Axis &a) { return a.label == l; });
        if (it == axes.end()) {
            throw ArgumentError("unknown label " + std::to_string(l));
        }
        out.push_back(*it);
    }
    require_distinct(out);
    return out;
}

/// For each basis index over `axes`, its index within the subsystem `sub` (row-major in sub's order).
std::vector<size_t> sub_indices(const std::vector<Axis> &axes, const std::vector<Axis> &sub) {
    auto sub_strides = detail::row_major_strides(sub);
    std::array<std::vector<size_t>, 1> strides;
    for (const auto &a : axes) {
        size_t s = 0;
        for (size_t p = 0; p < sub.size(); ++p) {
            if (sub[p].label == a.label) {
                s = sub_strides[p];
            }
        }
        strides[0].push_back(s);
    }
    size_t total = volume(axes);
    std::vector<size_t> out(total);
    auto dims = detail::dims_of(axes);
    detail::walk(dims, strides, total, [&](size_t n, const std::array<size_t, 1> &off) { out[n] = off[0]; });
    return out;
}

double shannon(std::span<const double> p) {
    double h = 0;
    for (double v : p) {
        if (v > 0) {
            h -= v * std::log(v);
        }
    }
    return h;
}

std::vector<int> joined(std::span<const int> a, std::span<const int> b) {
    std::vector<int> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

DensityMatrix::DensityMatrix(std::vector<Axis> axes, Eigen::MatrixXcd matrix, Unchecked)
    : axes_(std::move(axes)), matrix_(std::move(matrix)) {
    require_distinct(axes_);
    auto n = static_cast<Eigen::Index>(volume(axes_));
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw ArgumentError("density matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", axes require " + std::to_string(n));
    }
}

DensityMatrix::DensityMatrix(std::vector<Axis> axes, Eigen::MatrixXcd matrix)
    : DensityMatrix(std::move(axes), std::move(matrix), Unchecked{}) {
    const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= kDensityTolerance)) {
        throw InvalidStateError("density matrix is not Hermitian (deviation " + std::to_string(asym) + ")");
    }
    const double tr = matrix_.trace().real();
    if (!(std::abs(tr - 1.0) <= kDensityTolerance)) {
        throw InvalidStateError("density matrix trace is " + std::to_string(tr));
    }
    spectrum(*this);
}

DensityMatrix DensityMatrix::trusted(std::vector<Axis> axes, Eigen::MatrixXcd matrix) {
    return DensityMatrix(std::move(axes), std::move(matrix), Unchecked{});
}

DensityMatrix DensityMatrix::pure(const LabeledAmplitude &ket) {
    const double n2 = squared_norm(ket);
    if (!(n2 > 0)) {
        throw ZeroAmplitudeError("cannot form a state from a zero ket");
    }
    Eigen::Map<const Eigen::VectorXcd> v(ket.data().data(), static_cast<Eigen::Index>(ket.size()));
    Eigen::MatrixXcd m = v * v.adjoint() / n2;
    return trusted(ket.axes(), std::move(m));
}

std::vector<int> DensityMatrix::labels() const {
    std::vector<int> out;
    for (const auto &a : axes_) {
        out.push_back(a.label);
    }
    return out;
}

bool DensityMatrix::has_label(int label) const {
    return std::any_of(axes_.begin(), axes_.end(), [&](const Axis &a) { return a.label == label; });
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep) {
    select_axes(rho.axes(), keep);
    std::vector<Axis> kept, traced;
    for (const auto &a : rho.axes()) {
        if (std::find(keep.begin(), keep.end(), a.label) != keep.end()) {
            kept.push_back(a);
        } else {
            traced.push_back(a);
        }
    }
    if (traced.empty()) {
        return rho;
    }
    const auto dk = volume(kept);
    const auto dt = volume(traced);
    auto ki = sub_indices(rho.axes(), kept);
    auto ti = sub_indices(rho.axes(), traced);
    std::vector<Eigen::Index> full(dk * dt);
    for (size_t i = 0; i < ki.size(); ++i) {
        full[ki[i] * dt + ti[i]] = static_cast<Eigen::Index>(i);
    }
    const auto &m = rho.matrix();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (size_t r = 0; r < dk; ++r) {
        for (size_t c = 0; c < dk; ++c) {
            cplx s = 0;
            for (size_t t = 0; t < dt; ++t) {
                s += m(full[r * dt + t], full[c * dt + t]);
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s;
        }
    }
    return DensityMatrix::trusted(std::move(kept), std::move(out));
}

DensityMatrix tensor_product(const DensityMatrix &a, const DensityMatrix &b) {
    std::vector<Axis> axes = a.axes();
    axes.insert(axes.end(), b.axes().begin(), b.axes().end());
    const auto &ma = a.matrix();
    const auto &mb = b.matrix();
    Eigen::MatrixXcd out(ma.rows() * mb.rows(), ma.cols() * mb.cols());
    for (Eigen::Index i = 0; i < ma.rows(); ++i) {
        for (Eigen::Index j = 0; j < ma.cols(); ++j) {
            out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
        }
    }
    return DensityMatrix::trusted(std::move(axes), std::move(out));
}

std::vector<double> spectrum(const DensityMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw InvalidStateError("eigenvalue decomposition failed");
    }
    std::vector<double> ev;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        double v = solver.eigenvalues()(k);
        if (v < kNegativeEigenvalueReject) {
            throw InvalidStateError("density matrix has eigenvalue " + std::to_string(v));
        }
        ev.push_back(std::clamp(v, 0.0, 1.0));
    }
    return ev;
}

double von_neumann_entropy(const DensityMatrix &rho) {
    auto ev = spectrum(rho);
    return shannon(ev);
}

double entropy_of(const DensityMatrix &rho, std::span<const int> labels) {
    if (labels.empty()) {
        return 0.0;
    }
    return von_neumann_entropy(partial_trace(rho, labels));
}

double quantum_conditional_entropy(const DensityMatrix &rho, std::span<const int> x, std::span<const int> y) {
    auto xy = joined(x, y);
    select_axes(rho.axes(), xy);
    return entropy_of(rho, xy) - entropy_of(rho, y);
}

double quantum_mutual_information(const DensityMatrix &rho, std::span<const int> x, std::span<const int> y) {
    auto xy = joined(x, y);
    select_axes(rho.axes(), xy);
    return entropy_of(rho, x) + entropy_of(rho, y) - entropy_of(rho, xy);
}

double quantum_cmi(const DensityMatrix &rho, std::span<const int> x, std::span<const int> y,
                   std::span<const int> z) {
    auto xz = joined(x, z);
    auto yz = joined(y, z);
    auto xyz = joined(x, yz);
    select_axes(rho.axes(), xyz);
    auto reduced = partial_trace(rho, xyz);
    return entropy_of(reduced, xz) + entropy_of(reduced, yz) - entropy_of(reduced, z) -
           von_neumann_entropy(reduced);
}

DensityMatrix dephase(const DensityMatrix &rho, std::span<const int> labels) {
    auto sub = select_axes(rho.axes(), labels);
    if (sub.empty()) {
        return rho;
    }
    auto zi = sub_indices(rho.axes(), sub);
    Eigen::MatrixXcd m = rho.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (zi[static_cast<size_t>(r)] != zi[static_cast<size_t>(c)]) {
                m(r, c) = 0;
            }
        }
    }
    return DensityMatrix::trusted(rho.axes(), std::move(m));
}

ClassicalDistribution::ClassicalDistribution(ProbabilityTable table) : table_(std::move(table)) {
    double total = 0;
    for (double p : table_.data()) {
        if (p < 0) {
            throw ArgumentError("probability table has negative mass");
        }
        total += p;
    }
    if (!(std::abs(total - 1.0) <= kDensityTolerance)) {
        throw ArgumentError("probability table sums to " + std::to_string(total));
    }
}

namespace {

ProbabilityTable classical_marginal(const ClassicalDistribution &dist, std::span<const int> keep) {
    const auto &t = dist.table();
    select_axes(t.axes(), keep);
    std::vector<int> drop;
    for (const auto &a : t.axes()) {
        if (std::find(keep.begin(), keep.end(), a.label) == keep.end()) {
            drop.push_back(a.label);
        }
    }
    return sum_over(t, drop);
}

double classical_h(const ClassicalDistribution &dist, std::span<const int> labels) {
    auto m = classical_marginal(dist, labels);
    return shannon(m.data());
}

}  // namespace

double classical_entropy(const ClassicalDistribution &dist, std::span<const int> x) {
    return classical_h(dist, x);
}

double classical_conditional_entropy(const ClassicalDistribution &dist, std::span<const int> x,
                                     std::span<const int> y) {
    return classical_h(dist, joined(x, y)) - classical_h(dist, y);
}

double classical_mutual_information(const ClassicalDistribution &dist, std::span<const int> x,
                                    std::span<const int> y) {
    return classical_h(dist, x) + classical_h(dist, y) - classical_h(dist, joined(x, y));
}

double classical_cmi(const ClassicalDistribution &dist, std::span<const int> x, std::span<const int> y,
                     std::span<const int> z) {
    auto xz = joined(x, z);
    auto yz = joined(y, z);
    return classical_h(dist, xz) + classical_h(dist, yz) - classical_h(dist, z) - classical_h(dist, joined(x, yz));
}

DiagonalExtension::DiagonalExtension(std::vector<double> weights, std::vector<DensityMatrix> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
    if (weights_.empty() || weights_.size() != components_.size()) {
        throw ArgumentError("extension needs one component per weight and at least one weight");
    }
    double total = 0;
    for (double w : weights_) {
        if (!(w >= 0)) {
            throw ArgumentError("extension weights must be nonnegative");
        }
        total += w;
    }
    if (!(std::abs(total - 1.0) <= kDensityTolerance)) {
        throw ArgumentError("extension weights sum to " + std::to_string(total));
    }
    if (components_.front().axes().size() != 2) {
        throw ArgumentError("extension components must have exactly two axes (x, y)");
    }
    for (const auto &c : components_) {
        if (c.axes() != components_.front().axes()) {
            throw ArgumentError("extension components must share axes");
        }
    }
}

DensityMatrix DiagonalExtension::assemble(int lambda_label) const {
    std::vector<Axis> axes{{lambda_label, lambda_card()}};
    const auto &ca = components_.front().axes();
    axes.insert(axes.end(), ca.begin(), ca.end());
    const Eigen::Index d = components_.front().dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d * lambda_card(), d * lambda_card());
    for (int l = 0; l < lambda_card(); ++l) {
        m.block(l * d, l * d, d, d) = weights_[static_cast<size_t>(l)] * components_[static_cast<size_t>(l)].matrix();
    }
    return DensityMatrix::trusted(std::move(axes), std::move(m));
}

DensityMatrix DiagonalExtension::marginal() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(components_.front().dim(), components_.front().dim());
    for (size_t l = 0; l < weights_.size(); ++l) {
        m += weights_[l] * components_[l].matrix();
    }
    return DensityMatrix::trusted(components_.front().axes(), std::move(m));
}

double cmi_diagonal(const DiagonalExtension &ext) {
    const int x = ext.x_axis().label;
    const int y = ext.y_axis().label;
    double total = 0;
    for (int l = 0; l < ext.lambda_card(); ++l) {
        const double w = ext.weights()[static_cast<size_t>(l)];
        if (w == 0) {
            continue;
        }
        const auto &rho = ext.components()[static_cast<size_t>(l)];
        total += w * (entropy_of(rho, std::span<const int>(&x, 1)) + entropy_of(rho, std::span<const int>(&y, 1)) -
                      von_neumann_entropy(rho));
    }
    return total;
}

DensityMatrix net_to_density(const QBNet &net, const Multinode &keep, const Multinode &diag, size_t cap) {
    net.dag().check(keep);
    net.dag().check(diag);
    if (keep.intersects(diag)) {
        throw ArgumentError("kept and dephased multinodes must be disjoint");
    }
    return density_from_amplitude(amplitude_tensor(net, cap), keep, diag, cap);
}

DensityMatrix density_from_amplitude(const LabeledAmplitude &psi, const Multinode &keep, const Multinode &diag,
                                     size_t cap) {
    if (keep.intersects(diag)) {
        throw ArgumentError("kept and dephased multinodes must be disjoint");
    }
    for (int label : keep.united(diag)) {
        if (!psi.has_label(label)) {
            throw ArgumentError("label " + std::to_string(label) + " is not an axis of the amplitude");
        }
    }
    auto system = keep.united(diag);
    std::vector<Axis> sys_axes, env_axes;
    for (const auto &a : psi.axes()) {
        (system.contains(a.label) ? sys_axes : env_axes).push_back(a);
    }
    const auto ds = static_cast<Eigen::Index>(volume(sys_axes));
    const auto de = static_cast<Eigen::Index>(volume(env_axes));
    if (static_cast<size_t>(ds) > cap / static_cast<size_t>(ds)) {
        throw CapacityError("density matrix would exceed the dimension cap");
    }
    auto si = sub_indices(psi.axes(), sys_axes);
    auto ei = sub_indices(psi.axes(), env_axes);
    Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(ds, de);
    for (size_t i = 0; i < psi.size(); ++i) {
        amp(static_cast<Eigen::Index>(si[i]), static_cast<Eigen::Index>(ei[i])) = psi.data()[i];
    }
    Eigen::MatrixXcd rho = amp * amp.adjoint();
    auto out = DensityMatrix::trusted(std::move(sys_axes), std::move(rho));
    return dephase(out, diag.members());
}

Eigen::MatrixXcd random_unitary(int n, Rng &rng) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = cplx(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is Haar.
    for (Eigen::Index k = 0; k < n; ++k) {
        cplx d = r(k, k);
        double m = std::abs(d);
        if (m > 0) {
            q.col(k) *= d / m;
        }
    }
    return q;
}

DensityMatrix random_density_matrix(std::vector<Axis> axes, int rank, Rng &rng) {
    const auto n = static_cast<Eigen::Index>(volume(axes));
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd g(n, rank);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < rank; ++j) {
            g(i, j) = cplx(gauss(rng), gauss(rng));
        }
    }
    Eigen::MatrixXcd m = g * g.adjoint();
    m /= m.trace().real();
    m = (m + m.adjoint()).eval() / 2.0;
    return DensityMatrix(std::move(axes), std::move(m));
}

DiagonalExtension random_extension(int x_dim, int y_dim, int lambda_card, Rng &rng) {
    std::exponential_distribution<double> expo;
    std::vector<double> weights;
    double total = 0;
    for (int l = 0; l < lambda_card; ++l) {
        weights.push_back(expo(rng));
        total += weights.back();
    }
    for (double &w : weights) {
        w /= total;
    }
    std::uniform_int_distribution<int> rank(1, x_dim * y_dim);
    std::vector<DensityMatrix> components;
    for (int l = 0; l < lambda_card; ++l) {
        components.push_back(random_density_matrix({{0, x_dim}, {1, y_dim}}, rank(rng), rng));
    }
    return DiagonalExtension(std::move(weights), std::move(components));
}

}  // namespace qbn
