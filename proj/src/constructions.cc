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

#include "qbnet/constructions.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>

namespace qbn {

namespace {

// A(y|x,R0,λ) falls back to |0⟩ when A(x|R0,λ)² is below this.
constexpr double kNegligibleMass = 1e-28;
constexpr double kReduceTolerance = 1e-10;

const std::array<std::vector<int>, 5> &full_parents() {
    static const std::array<std::vector<int>, 5> p{{
        {},
        {kLambda},
        {kX0, kLambda},
        {kX0, kY0, kLambda},
        {kX, kX0, kY0, kLambda},
    }};
    return p;
}

Dag extension_dag(int lambda_card, int x_card, int y_card, const std::array<std::vector<int>, 5> &parents) {
    return Dag({
        {"lambda", lambda_card, parents[kLambda]},
        {"x0", x_card, parents[kX0]},
        {"y0", y_card, parents[kY0]},
        {"x", x_card, parents[kX]},
        {"y", y_card, parents[kY]},
    });
}

/// Table entry of `node` at a full five-node assignment.
cplx value_at(const QBNet &net, int node, const std::array<int, 5> &assignment) {
    std::vector<int> pv;
    for (int p : net.dag().parents(node)) {
        pv.push_back(assignment[static_cast<size_t>(p)]);
    }
    return net.tpm(node).at(net.dag(), assignment[static_cast<size_t>(node)], pv);
}

bool parents_within(const Dag &dag, int node, std::initializer_list<int> allowed) {
    return std::all_of(dag.parents(node).begin(), dag.parents(node).end(), [&](int p) {
        return std::find(allowed.begin(), allowed.end(), p) != allowed.end();
    });
}

}  // namespace

Dag extension_dag_full(int lambda_card, int x_card, int y_card) {
    return extension_dag(lambda_card, x_card, y_card, full_parents());
}

Dag extension_dag_separated(int lambda_card, int x_card, int y_card) {
    return extension_dag(lambda_card, x_card, y_card, {{{}, {kLambda}, {kLambda}, {kX0, kLambda}, {kY0, kLambda}}});
}

QBNet density_to_qbnet(const DiagonalExtension &ext) {
    const int nl = ext.lambda_card();
    const int dx = ext.x_axis().dim;
    const int dy = ext.y_axis().dim;
    const auto ul = static_cast<size_t>(nl), ux = static_cast<size_t>(dx), uy = static_cast<size_t>(dy);
    auto dag = extension_dag_full(nl, dx, dy);

    std::vector<cplx> t_lambda(ul), t_x0(ux * ul), t_y0(uy * ux * ul);
    std::vector<cplx> t_x(ux * ux * uy * ul), t_y(uy * ux * ux * uy * ul);

    for (size_t l = 0; l < ul; ++l) {
        t_lambda[l] = std::sqrt(ext.weights()[l]);

        const auto &rho = ext.components()[l];
        spectrum(rho);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho.matrix());
        if (eig.info() != Eigen::Success) {
            throw InvalidStateError("eigendecomposition of an extension component failed");
        }
        Eigen::VectorXd d = eig.eigenvalues().cwiseMax(0.0);
        d /= d.sum();
        const Eigen::MatrixXcd &u = eig.eigenvectors();

        for (size_t x0 = 0; x0 < ux; ++x0) {
            double px0 = 0;
            for (size_t y0 = 0; y0 < uy; ++y0) {
                px0 += d(static_cast<Eigen::Index>(x0 * uy + y0));
            }
            t_x0[x0 + ux * l] = std::sqrt(px0);
            for (size_t y0 = 0; y0 < uy; ++y0) {
                const double p = px0 > 0 ? d(static_cast<Eigen::Index>(x0 * uy + y0)) / px0 : 1.0 / dy;
                t_y0[y0 + uy * (x0 + ux * l)] = std::sqrt(p);
            }

            for (size_t y0 = 0; y0 < uy; ++y0) {
                const auto k = static_cast<Eigen::Index>(x0 * uy + y0);
                const size_t r0 = x0 + ux * (y0 + uy * l);  // parent block (x0, y0, λ)
                for (size_t x = 0; x < ux; ++x) {
                    double mass = 0;
                    for (size_t y = 0; y < uy; ++y) {
                        mass += std::norm(u(static_cast<Eigen::Index>(x * uy + y), k));
                    }
                    const double ax = std::sqrt(mass);
                    t_x[x + ux * r0] = ax;
                    for (size_t y = 0; y < uy; ++y) {
                        cplx ay;
                        if (mass > kNegligibleMass) {
                            ay = u(static_cast<Eigen::Index>(x * uy + y), k) / ax;
                        } else {
                            ay = y == 0 ? 1.0 : 0.0;
                        }
                        t_y[y + uy * (x + ux * r0)] = ay;
                    }
                }
            }
        }
    }

    std::vector<NodeTpm> tpms{
        {kLambda, dag.parents(kLambda), std::move(t_lambda)},
        {kX0, dag.parents(kX0), std::move(t_x0)},
        {kY0, dag.parents(kY0), std::move(t_y0)},
        {kX, dag.parents(kX), std::move(t_x)},
        {kY, dag.parents(kY), std::move(t_y)},
    };
    return QBNet(std::move(dag), std::move(tpms), 1e-9);
}

QBNet reduce_qbnet(const QBNet &net) {
    const auto &dag = net.dag();
    if (dag.size() != 5) {
        throw ArgumentError("reduction expects a five-node extension net");
    }
    for (int j = 0; j < 5; ++j) {
        for (int p : dag.parents(j)) {
            const auto &allowed = full_parents()[static_cast<size_t>(j)];
            if (std::find(allowed.begin(), allowed.end(), p) == allowed.end()) {
                throw ArgumentError("node '" + dag.node(j).name + "' has a parent outside the extension layout");
            }
        }
    }
    const int nl = dag.card(kLambda);
    const int dx0 = dag.card(kX0), dy0 = dag.card(kY0), dx = dag.card(kX), dy = dag.card(kY);

    std::array<int, 5> a{};
    for (a[kLambda] = 0; a[kLambda] < nl; ++a[kLambda]) {
        for (a[kX0] = 0; a[kX0] < dx0; ++a[kX0]) {
            for (a[kX] = 0; a[kX] < dx; ++a[kX]) {
                auto ref = a;
                ref[kY0] = 0;
                const cplx base = value_at(net, kX, ref);
                for (a[kY0] = 1; a[kY0] < dy0; ++a[kY0]) {
                    if (std::abs(value_at(net, kX, a) - base) > kReduceTolerance) {
                        throw NotReducibleError("A(x|x0,y0,lambda) depends on y0");
                    }
                }
                a[kY0] = 0;
            }
        }
    }

    const bool separated = parents_within(dag, kY, {kY0, kLambda}) && parents_within(dag, kY0, {kLambda});
    const int cx = dx * dx0, cy = dy * dy0;
    const auto ucx = static_cast<size_t>(cx), ucy = static_cast<size_t>(cy);

    std::vector<Dag::Node> nodes{
        {dag.node(kLambda).name, nl, {}},
        {"X", cx, {0}},
        {"Y", cy, separated ? std::vector<int>{0} : std::vector<int>{1, 0}},
    };
    Dag out_dag(std::move(nodes));

    std::vector<cplx> t_lambda(static_cast<size_t>(nl));
    std::vector<cplx> t_big_x(ucx * static_cast<size_t>(nl));
    std::vector<cplx> t_big_y(ucy * (separated ? 1 : ucx) * static_cast<size_t>(nl));
    for (int l = 0; l < nl; ++l) {
        std::array<int, 5> s{};
        s[kLambda] = l;
        t_lambda[static_cast<size_t>(l)] = value_at(net, kLambda, s);
        for (s[kX] = 0; s[kX] < dx; ++s[kX]) {
            for (s[kX0] = 0; s[kX0] < dx0; ++s[kX0]) {
                s[kY0] = 0;
                const auto big_x = static_cast<size_t>(s[kX] * dx0 + s[kX0]);
                t_big_x[big_x + ucx * static_cast<size_t>(l)] = value_at(net, kX, s) * value_at(net, kX0, s);
                if (separated && big_x != 0) {
                    continue;
                }
                for (s[kY] = 0; s[kY] < dy; ++s[kY]) {
                    for (s[kY0] = 0; s[kY0] < dy0; ++s[kY0]) {
                        const auto big_y = static_cast<size_t>(s[kY] * dy0 + s[kY0]);
                        const size_t column = separated ? static_cast<size_t>(l) : big_x + ucx * static_cast<size_t>(l);
                        t_big_y[big_y + ucy * column] = value_at(net, kY, s) * value_at(net, kY0, s);
                    }
                }
            }
        }
    }

    std::vector<NodeTpm> tpms{
        {0, out_dag.parents(0), std::move(t_lambda)},
        {1, out_dag.parents(1), std::move(t_big_x)},
        {2, out_dag.parents(2), std::move(t_big_y)},
    };
    return QBNet(std::move(out_dag), std::move(tpms), 1e-9);
}

}  // namespace qbn
