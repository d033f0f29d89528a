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
#include <deque>
#include <stdexcept>

#include "message_algebra.h"
#include "qbnet/qbp.h"

namespace qbn {

namespace {

const AmplitudeMessage &find_from(std::span<const AmplitudeMessage> messages, int from, int to, MessageKind kind) {
    for (const auto &m : messages) {
        if (m.from == from && m.to == to && m.kind == kind) {
            return m;
        }
    }
    throw SchedulingError("missing " + std::string(kind == MessageKind::kPi ? "pi" : "lambda") + " message " +
                          std::to_string(from) + " -> " + std::to_string(to));
}

void expect_count(std::span<const AmplitudeMessage> messages, size_t expected, int x) {
    if (messages.size() != expected) {
        throw SchedulingError("node " + std::to_string(x) + " expected " + std::to_string(expected) +
                              " incoming messages, got " + std::to_string(messages.size()));
    }
}

/// Ones over x when x is unobserved, the scalar 1 otherwise.
LabeledAmplitude unit_over(const ClampedNet &net, int node) {
    if (net.evidence().observed(node)) {
        return LabeledAmplitude();
    }
    return LabeledAmplitude::filled({{node, net.dag().card(node)}}, cplx(1.0));
}

std::vector<int> with_parents(const Dag &dag, int x) {
    std::vector<int> out = dag.parents(x);
    out.push_back(x);
    return out;
}

}  // namespace

std::vector<int> AmplitudeMessage::hidden_labels() const {
    std::vector<int> out;
    for (const auto &a : data.axes()) {
        if (a.label != carrier) {
            out.push_back(a.label);
        }
    }
    return out;
}

ClampedNet::ClampedNet(const QBNet &net, Evidence evidence) : net_(&net), evidence_(std::move(evidence)) {
    evidence_.check(net.dag());
    for (int j = 0; j < net.size(); ++j) {
        factors_.push_back(restrict_to(net.tpm(j).as_tensor(net.dag()), evidence_.values()));
    }
}

AmplitudeMessage compute_pi(const ClampedNet &net, int x, std::span<const AmplitudeMessage> parent_messages) {
    const auto &parents = net.dag().parents(x);
    expect_count(parent_messages, parents.size(), x);
    std::vector<const LabeledAmplitude *> terms{&net.factor(x)};
    for (int p : parents) {
        terms.push_back(&find_from(parent_messages, p, x, MessageKind::kPi).data);
    }
    auto data = detail::combine(terms, with_parents(net.dag(), x));
    return {x, x, MessageKind::kPi, x, detail::unit_normalized(std::move(data))};
}

AmplitudeMessage compute_lambda(const ClampedNet &net, int x, std::span<const AmplitudeMessage> child_messages) {
    const auto &children = net.dag().children(x);
    expect_count(child_messages, children.size(), x);
    LabeledAmplitude base = unit_over(net, x);
    std::vector<const LabeledAmplitude *> terms{&base};
    for (int c : children) {
        terms.push_back(&find_from(child_messages, c, x, MessageKind::kLambda).data);
    }
    auto data = detail::combine(terms, {x});
    return {x, x, MessageKind::kLambda, x, detail::unit_normalized(std::move(data))};
}

AmplitudeMessage rule1_lambda_to_parent(const ClampedNet &net, int x, int parent, const AmplitudeMessage &lambda_x,
                                        std::span<const AmplitudeMessage> other_parent_messages) {
    const auto &dag = net.dag();
    const auto &parents = dag.parents(x);
    if (std::find(parents.begin(), parents.end(), parent) == parents.end()) {
        if (parents.empty() && parent >= 0 && parent < dag.size()) {
            // A root has nobody to report to; the message is constant in the target.
            return {x, parent, MessageKind::kLambda, parent, detail::unit_normalized(unit_over(net, parent))};
        }
        throw SchedulingError("node " + std::to_string(parent) + " is not a parent of " + std::to_string(x));
    }
    expect_count(other_parent_messages, parents.size() - 1, x);
    std::vector<const LabeledAmplitude *> terms{&lambda_x.data, &net.factor(x)};
    for (int p : parents) {
        if (p != parent) {
            terms.push_back(&find_from(other_parent_messages, p, x, MessageKind::kPi).data);
        }
    }
    auto data = detail::combine(terms, with_parents(dag, x));
    return {x, parent, MessageKind::kLambda, parent, detail::unit_normalized(std::move(data))};
}

AmplitudeMessage rule2_pi_to_child(const ClampedNet &net, int x, int child, const AmplitudeMessage &pi_x,
                                   std::span<const AmplitudeMessage> other_child_messages) {
    const auto &children = net.dag().children(x);
    if (!std::binary_search(children.begin(), children.end(), child)) {
        throw SchedulingError("node " + std::to_string(child) + " is not a child of " + std::to_string(x));
    }
    expect_count(other_child_messages, children.size() - 1, x);
    std::vector<const LabeledAmplitude *> terms{&pi_x.data};
    for (int c : children) {
        if (c != child) {
            terms.push_back(&find_from(other_child_messages, c, x, MessageKind::kLambda).data);
        }
    }
    auto data = detail::combine(terms, {x});
    return {x, child, MessageKind::kPi, x, detail::unit_normalized(std::move(data))};
}

PolytreeSession::PolytreeSession(const QBNet &net, Evidence evidence) : net_(net, std::move(evidence)) {
    const auto &dag = net.dag();
    if (!is_polytree(dag)) {
        throw StructureError("belief propagation needs a polytree; the skeleton has a cycle");
    }
    const auto n = static_cast<size_t>(dag.size());
    tree_parent_.assign(n, -1);
    std::vector<char> seen(n, 0);
    for (int start = 0; start < dag.size(); ++start) {
        if (seen[static_cast<size_t>(start)]) {
            continue;
        }
        std::deque<int> queue{start};
        seen[static_cast<size_t>(start)] = 1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            bfs_order_.push_back(u);
            std::vector<int> nbrs = dag.parents(u);
            nbrs.insert(nbrs.end(), dag.children(u).begin(), dag.children(u).end());
            std::sort(nbrs.begin(), nbrs.end());
            for (int v : nbrs) {
                if (!seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = 1;
                    tree_parent_[static_cast<size_t>(v)] = u;
                    queue.push_back(v);
                }
            }
        }
    }
}

const AmplitudeMessage &PolytreeSession::incoming(int from, int to) const {
    auto it = messages_.find({from, to});
    if (it == messages_.end()) {
        throw SchedulingError("message " + std::to_string(from) + " -> " + std::to_string(to) + " not computed yet");
    }
    return it->second;
}

AmplitudeMessage PolytreeSession::pi_of(int x) const {
    std::vector<AmplitudeMessage> in;
    for (int p : net_.dag().parents(x)) {
        in.push_back(incoming(p, x));
    }
    return compute_pi(net_, x, in);
}

AmplitudeMessage PolytreeSession::lambda_of(int x) const {
    std::vector<AmplitudeMessage> in;
    for (int c : net_.dag().children(x)) {
        in.push_back(incoming(c, x));
    }
    return compute_lambda(net_, x, in);
}

AmplitudeMessage PolytreeSession::send(int from, int to) const {
    const auto &dag = net_.dag();
    const auto &pa = dag.parents(to);
    std::vector<AmplitudeMessage> others;
    if (std::find(pa.begin(), pa.end(), from) != pa.end()) {
        for (int c : dag.children(from)) {
            if (c != to) {
                others.push_back(incoming(c, from));
            }
        }
        return rule2_pi_to_child(net_, from, to, pi_of(from), others);
    }
    for (int p : dag.parents(from)) {
        if (p != to) {
            others.push_back(incoming(p, from));
        }
    }
    return rule1_lambda_to_parent(net_, from, to, lambda_of(from), others);
}

void PolytreeSession::collect() {
    for (auto it = bfs_order_.rbegin(); it != bfs_order_.rend(); ++it) {
        int p = tree_parent_[static_cast<size_t>(*it)];
        if (p >= 0) {
            messages_.insert_or_assign({*it, p}, send(*it, p));
        }
    }
}

void PolytreeSession::distribute() {
    for (int u : bfs_order_) {
        int p = tree_parent_[static_cast<size_t>(u)];
        if (p >= 0) {
            messages_.insert_or_assign({p, u}, send(p, u));
        }
    }
}

std::vector<Belief> PolytreeSession::beliefs() const {
    std::vector<Belief> out;
    const auto &dag = net_.dag();
    for (int x = 0; x < dag.size(); ++x) {
        auto pi = pi_of(x);
        auto lambda = lambda_of(x);
        auto bel = detail::unit_normalized(detail::combine({&pi.data, &lambda.data}, {x}));
        std::vector<double> probs(static_cast<size_t>(dag.card(x)), 0.0);
        if (net_.evidence().observed(x)) {
            probs[static_cast<size_t>(net_.evidence().value(x))] = 1.0;
        } else {
            int keep = x;
            auto table = squared_marginal(bel, std::span<const int>(&keep, 1));
            double total = 0;
            for (double p : table.data()) {
                total += p;
            }
            for (size_t k = 0; k < probs.size(); ++k) {
                probs[k] = table.data()[k] / total;
            }
        }
        out.push_back({x, std::move(bel), std::move(probs)});
    }
    return out;
}

std::vector<Belief> propagate_polytree(const QBNet &net, const Evidence &evidence) {
    PolytreeSession session(net, evidence);
    session.collect();
    session.distribute();
    return session.beliefs();
}

}  // namespace qbn
