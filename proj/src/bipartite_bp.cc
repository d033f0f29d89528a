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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "message_algebra.h"
#include "qbnet/qbp.h"

namespace qbn {

namespace {

constexpr double kFixedPointTolerance = 1e-12;

bool adjacent(const FactorGraphNet &net, int alpha, int i) {
    const auto &nb = net.root_neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), alpha);
}

LabeledAmplitude ones_over(const FactorGraphNet &net, int i) {
    return LabeledAmplitude::filled({{i, net.roots()[static_cast<size_t>(i)].states}}, cplx(1.0));
}

ProbabilityTable normalized_squares(const LabeledAmplitude &t, std::vector<int> keep) {
    std::sort(keep.begin(), keep.end());
    auto table = squared_marginal(t, keep);
    double total = std::accumulate(table.data().begin(), table.data().end(), 0.0);
    for (double &p : table.data()) {
        p /= total;
    }
    return table;
}

}  // namespace

FactorGraphNet::FactorGraphNet(std::vector<Root> roots, std::vector<Factor> factors)
    : roots_(std::move(roots)), factors_(std::move(factors)) {
    const int nx = root_count();
    std::set<std::string> names;
    for (const auto &r : roots_) {
        if (r.states < 1) {
            throw ArgumentError("root '" + r.name + "' needs at least one state");
        }
        if (!names.insert(r.name).second) {
            throw ArgumentError("duplicate name '" + r.name + "'");
        }
    }
    root_nb_.assign(roots_.size(), {});

    // Union-find over roots [0, nx) and factors [nx, nx + nf).
    std::vector<int> link(roots_.size() + factors_.size());
    std::iota(link.begin(), link.end(), 0);
    auto find = [&](int v) {
        while (link[static_cast<size_t>(v)] != v) {
            v = link[static_cast<size_t>(v)] = link[static_cast<size_t>(link[static_cast<size_t>(v)])];
        }
        return v;
    };

    for (int alpha = 0; alpha < factor_count(); ++alpha) {
        const auto &f = factors_[static_cast<size_t>(alpha)];
        if (!names.insert(f.name).second) {
            throw ArgumentError("duplicate name '" + f.name + "'");
        }
        std::vector<Axis> axes;
        std::set<int> seen;
        for (size_t k = f.nb.size(); k-- > 0;) {
            int i = f.nb[k];
            if (i < 0 || i >= nx) {
                throw ArgumentError("factor '" + f.name + "' has an unknown neighbour");
            }
            if (!seen.insert(i).second) {
                throw ArgumentError("factor '" + f.name + "' lists a neighbour twice");
            }
            axes.push_back({i, roots_[static_cast<size_t>(i)].states});
            root_nb_[static_cast<size_t>(i)].push_back(alpha);
            int a = find(i), b = find(nx + alpha);
            if (a == b) {
                throw StructureError("factor graph has a cycle through factor '" + f.name + "'");
            }
            link[static_cast<size_t>(a)] = b;
        }
        if (f.table.size() != volume(axes)) {
            throw ArgumentError("factor '" + f.name + "' table has the wrong size");
        }
        tensors_.push_back(LabeledAmplitude::from_axis_order(std::move(axes), f.table));
    }
    for (auto &nb : root_nb_) {
        std::sort(nb.begin(), nb.end());
    }
}

BipartiteMessages bipartite_initial(const FactorGraphNet &net) {
    BipartiteMessages m;
    for (int alpha = 0; alpha < net.factor_count(); ++alpha) {
        m.to_root.emplace_back();
        m.to_factor.emplace_back();
        for (int i = 0; i < net.root_count(); ++i) {
            m.to_root.back().push_back(ones_over(net, i));
            m.to_factor.back().push_back(ones_over(net, i));
        }
    }
    return m;
}

BipartiteMessages bipartite_iterate(const FactorGraphNet &net, const BipartiteMessages &previous) {
    BipartiteMessages next = previous;
    for (int alpha = 0; alpha < net.factor_count(); ++alpha) {
        const auto &nb = net.factors()[static_cast<size_t>(alpha)].nb;
        for (int i = 0; i < net.root_count(); ++i) {
            if (!adjacent(net, alpha, i)) {
                continue;
            }
            const auto a = static_cast<size_t>(alpha), ui = static_cast<size_t>(i);

            // Root traversal: product of the other factors' messages into i.
            auto base = ones_over(net, i);
            std::vector<const LabeledAmplitude *> root_terms{&base};
            for (int beta : net.root_neighbors(i)) {
                if (beta != alpha) {
                    root_terms.push_back(&previous.to_root[static_cast<size_t>(beta)][ui]);
                }
            }
            next.to_factor[a][ui] = detail::unit_normalized(detail::combine(root_terms, {i}));

            // Factor traversal: f_α times the messages from its other roots.
            std::vector<const LabeledAmplitude *> factor_terms{&net.factor_tensor(alpha)};
            for (int k : nb) {
                if (k != i) {
                    factor_terms.push_back(&previous.to_factor[a][static_cast<size_t>(k)]);
                }
            }
            next.to_root[a][ui] = detail::unit_normalized(detail::combine(factor_terms, nb));
        }
    }
    return next;
}

double message_change(const BipartiteMessages &a, const BipartiteMessages &b) {
    double worst = 0;
    auto compare = [&](const std::vector<std::vector<LabeledAmplitude>> &x,
                       const std::vector<std::vector<LabeledAmplitude>> &y) {
        if (x.size() != y.size()) {
            worst = std::numeric_limits<double>::infinity();
            return;
        }
        for (size_t r = 0; r < x.size(); ++r) {
            if (x[r].size() != y[r].size()) {
                worst = std::numeric_limits<double>::infinity();
                return;
            }
            for (size_t c = 0; c < x[r].size(); ++c) {
                if (x[r][c].axes() != y[r][c].axes()) {
                    worst = std::numeric_limits<double>::infinity();
                    return;
                }
                worst = std::max(worst, max_abs_difference(x[r][c], y[r][c]));
            }
        }
    };
    compare(a.to_root, b.to_root);
    compare(a.to_factor, b.to_factor);
    return worst;
}

BipartiteRun bipartite_converge(const FactorGraphNet &net, int max_iterations) {
    if (max_iterations <= 0) {
        max_iterations = 2 * (net.root_count() + net.factor_count()) + 2;
    }
    BipartiteMessages state = bipartite_initial(net);
    for (int t = 0; t <= max_iterations; ++t) {
        BipartiteMessages next = bipartite_iterate(net, state);
        if (message_change(next, state) <= kFixedPointTolerance) {
            return {std::move(state), t};
        }
        state = std::move(next);
    }
    throw ConvergenceError("bipartite messages did not settle within " + std::to_string(max_iterations) +
                           " iterations");
}

BipartiteBeliefs bipartite_beliefs(const FactorGraphNet &net, const BipartiteMessages &messages) {
    if (!(message_change(bipartite_iterate(net, messages), messages) <= kFixedPointTolerance)) {
        throw ConvergenceError("message state is not a fixed point");
    }
    BipartiteBeliefs out;
    for (int i = 0; i < net.root_count(); ++i) {
        auto base = ones_over(net, i);
        std::vector<const LabeledAmplitude *> terms{&base};
        for (int alpha : net.root_neighbors(i)) {
            terms.push_back(&messages.to_root[static_cast<size_t>(alpha)][static_cast<size_t>(i)]);
        }
        auto bel = detail::unit_normalized(detail::combine(terms, {i}));
        out.roots.push_back(normalized_squares(bel, {i}));
    }
    for (int alpha = 0; alpha < net.factor_count(); ++alpha) {
        const auto &nb = net.factors()[static_cast<size_t>(alpha)].nb;
        std::vector<const LabeledAmplitude *> terms{&net.factor_tensor(alpha)};
        for (int k : nb) {
            terms.push_back(&messages.to_factor[static_cast<size_t>(alpha)][static_cast<size_t>(k)]);
        }
        auto bel = detail::unit_normalized(detail::combine(terms, nb));
        out.factors.push_back(normalized_squares(bel, nb));
    }
    return out;
}

std::pair<QBNet, Evidence> to_qbnet(const FactorGraphNet &net) {
    std::vector<Dag::Node> nodes;
    std::vector<NodeTpm> tpms;
    const int nx = net.root_count();
    for (int i = 0; i < nx; ++i) {
        const auto &r = net.roots()[static_cast<size_t>(i)];
        nodes.push_back({r.name, r.states, {}});
        tpms.push_back({i, {}, std::vector<cplx>(static_cast<size_t>(r.states), cplx(1.0 / std::sqrt(r.states)))});
    }
    std::map<int, int> evidence;
    for (int alpha = 0; alpha < net.factor_count(); ++alpha) {
        const auto &f = net.factors()[static_cast<size_t>(alpha)];
        const int node = nx + alpha;
        nodes.push_back({f.name, 2, f.nb});
        double scale = 0;
        for (const auto &v : f.table) {
            scale = std::max(scale, std::abs(v));
        }
        if (!(scale > 0)) {
            scale = 1;
        }
        NodeTpm t{node, f.nb, {}};
        for (const auto &v : f.table) {
            const cplx on = v / scale;
            t.table.push_back(std::sqrt(std::max(0.0, 1.0 - std::norm(on))));
            t.table.push_back(on);
        }
        tpms.push_back(std::move(t));
        evidence[node] = 1;
    }
    return {QBNet(Dag(std::move(nodes)), std::move(tpms), 1e-9), Evidence(std::move(evidence))};
}

}  // namespace qbn
