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

#include "qbnet/qbnet.h"

#include <cmath>
#include <limits>

namespace qbn {

namespace {

std::vector<int> member_vector(const Multinode &m) {
    return m.members();
}

std::map<int, int> zip_values(const Multinode &m, std::span<const int> values) {
    if (values.size() != m.size()) {
        throw ArgumentError("expected " + std::to_string(m.size()) + " values, got " + std::to_string(values.size()));
    }
    std::map<int, int> out;
    size_t k = 0;
    for (int v : m) {
        out[v] = values[k++];
    }
    return out;
}

}  // namespace

cplx NodeTpm::at(const Dag &dag, int value, std::span<const int> parent_values) const {
    if (parent_values.size() != parents.size()) {
        throw ArgumentError("wrong number of parent values");
    }
    const int own = dag.card(node);
    if (value < 0 || value >= own) {
        throw ArgumentError("state out of range for node '" + dag.node(node).name + "'");
    }
    size_t idx = 0;
    for (size_t k = parents.size(); k-- > 0;) {
        int c = dag.card(parents[k]);
        if (parent_values[k] < 0 || parent_values[k] >= c) {
            throw ArgumentError("parent state out of range for node '" + dag.node(node).name + "'");
        }
        idx = idx * static_cast<size_t>(c) + static_cast<size_t>(parent_values[k]);
    }
    return table.at(idx * static_cast<size_t>(own) + static_cast<size_t>(value));
}

LabeledAmplitude NodeTpm::as_tensor(const Dag &dag) const {
    // Row-major order from slowest to fastest: last parent, ..., first parent, node.
    std::vector<Axis> axes;
    for (size_t k = parents.size(); k-- > 0;) {
        axes.push_back({parents[k], dag.card(parents[k])});
    }
    axes.push_back({node, dag.card(node)});
    return LabeledAmplitude::from_axis_order(std::move(axes), table);
}

QBNet::QBNet(Dag dag, std::vector<NodeTpm> tpms, double norm_tolerance) : dag_(std::move(dag)), tpms_(std::move(tpms)) {
    if (static_cast<int>(tpms_.size()) != dag_.size()) {
        throw ArgumentError("need exactly one table per node");
    }
    for (int j = 0; j < dag_.size(); ++j) {
        auto &t = tpms_[static_cast<size_t>(j)];
        const auto &name = dag_.node(j).name;
        if (t.node != j) {
            throw ArgumentError("table for node '" + name + "' is out of order");
        }
        if (t.parents != dag_.parents(j)) {
            throw ArgumentError("table parents of '" + name + "' do not match the graph");
        }
        size_t columns = 1;
        for (int p : t.parents) {
            columns *= static_cast<size_t>(dag_.card(p));
        }
        const auto own = static_cast<size_t>(dag_.card(j));
        if (t.table.size() != columns * own) {
            throw ArgumentError("table of '" + name + "' has " + std::to_string(t.table.size()) +
                                " entries, expected " + std::to_string(columns * own));
        }
        for (size_t c = 0; c < columns; ++c) {
            double s = 0;
            for (size_t x = 0; x < own; ++x) {
                s += std::norm(t.table[c * own + x]);
            }
            if (!(std::abs(s - 1.0) <= norm_tolerance)) {
                throw ArgumentError("table of '" + name + "' column " + std::to_string(c) +
                                    " has squared norm " + std::to_string(s) + ", expected 1");
            }
        }
    }
}

size_t QBNet::joint_dimension() const {
    size_t v = 1;
    for (const auto &n : dag_.nodes()) {
        if (v > std::numeric_limits<size_t>::max() / static_cast<size_t>(n.card)) {
            return std::numeric_limits<size_t>::max();
        }
        v *= static_cast<size_t>(n.card);
    }
    return v;
}

Multinode Evidence::nodes() const {
    std::vector<int> out;
    for (const auto &[k, v] : values_) {
        out.push_back(k);
    }
    return Multinode(std::move(out));
}

void Evidence::check(const Dag &dag) const {
    for (const auto &[k, v] : values_) {
        if (k < 0 || k >= dag.size()) {
            throw ArgumentError("evidence on unknown node " + std::to_string(k));
        }
        if (v < 0 || v >= dag.card(k)) {
            throw ArgumentError("evidence value out of range for node '" + dag.node(k).name + "'");
        }
    }
}

double ConditionalAmplitude::probability() const {
    return squared_norm(numerator) / squared_norm(denominator);
}

cplx joint_amplitude(const QBNet &net, std::span<const int> assignment) {
    const auto &dag = net.dag();
    if (static_cast<int>(assignment.size()) != dag.size()) {
        throw ArgumentError("assignment must cover every node");
    }
    cplx amp = 1.0;
    std::vector<int> pv;
    for (int j = 0; j < dag.size(); ++j) {
        pv.clear();
        for (int p : dag.parents(j)) {
            pv.push_back(assignment[static_cast<size_t>(p)]);
        }
        amp *= net.tpm(j).at(dag, assignment[static_cast<size_t>(j)], pv);
    }
    return amp;
}

LabeledAmplitude amplitude_tensor(const QBNet &net, size_t cap) {
    const auto &dag = net.dag();
    const auto n = static_cast<size_t>(dag.size());
    std::vector<Axis> axes;
    for (int j = 0; j < dag.size(); ++j) {
        axes.push_back({j, dag.card(j)});
    }
    const size_t total = volume(axes, cap);

    // Table offset of node j is Σ_k x_k * mult[j][k] over j and its parents.
    std::vector<std::vector<std::pair<int, size_t>>> mult(n);
    for (int j = 0; j < dag.size(); ++j) {
        size_t m = 1;
        mult[static_cast<size_t>(j)].emplace_back(j, m);
        m *= static_cast<size_t>(dag.card(j));
        for (int p : dag.parents(j)) {
            mult[static_cast<size_t>(j)].emplace_back(p, m);
            m *= static_cast<size_t>(dag.card(p));
        }
    }

    std::vector<cplx> data(total);
    std::vector<int> x(n, 0);
    for (size_t i = 0; i < total; ++i) {
        cplx amp = 1.0;
        for (size_t j = 0; j < n; ++j) {
            size_t off = 0;
            for (const auto &[k, m] : mult[j]) {
                off += static_cast<size_t>(x[static_cast<size_t>(k)]) * m;
            }
            amp *= net.tpm(static_cast<int>(j)).table[off];
        }
        data[i] = amp;
        for (size_t k = n; k-- > 0;) {
            if (++x[k] < dag.card(static_cast<int>(k))) {
                break;
            }
            x[k] = 0;
        }
    }
    return LabeledAmplitude(std::move(axes), std::move(data));
}

LabeledAmplitude vector_amplitude(const QBNet &net, const Multinode &a, std::span<const int> a_values, size_t cap) {
    net.dag().check(a);
    auto values = zip_values(a, a_values);
    Evidence(values).check(net.dag());
    return restrict_to(amplitude_tensor(net, cap), values);
}

ProbabilityTable marginal_probability(const QBNet &net, const Multinode &a, size_t cap) {
    net.dag().check(a);
    auto keep = member_vector(a);
    return squared_marginal(amplitude_tensor(net, cap), keep);
}

ConditionalAmplitude conditional_amplitude(const QBNet &net, const Multinode &b, const Multinode &a,
                                           std::span<const int> b_values, std::span<const int> a_values,
                                           size_t cap) {
    if (a.intersects(b)) {
        throw ArgumentError("conditional amplitude needs disjoint multinodes");
    }
    auto joint_values = zip_values(a, a_values);
    for (const auto &[k, v] : zip_values(b, b_values)) {
        joint_values[k] = v;
    }
    Evidence(joint_values).check(net.dag());
    auto full = amplitude_tensor(net, cap);
    ConditionalAmplitude out{restrict_to(full, joint_values), restrict_to(full, zip_values(a, a_values))};
    if (!(squared_norm(out.denominator) > 0)) {
        throw ZeroAmplitudeError("cannot condition on a zero-norm vector amplitude");
    }
    return out;
}

LabeledAmplitude marginalize(const LabeledAmplitude &amp, const Multinode &over) {
    auto labels = member_vector(over);
    return sum_over(amp, labels);
}

ProbabilityTable posterior_oracle(const QBNet &net, const Multinode &query, const Evidence &evidence, size_t cap) {
    net.dag().check(query);
    evidence.check(net.dag());
    if (query.intersects(evidence.nodes())) {
        throw ArgumentError("query nodes must not be observed");
    }
    auto sliced = restrict_to(amplitude_tensor(net, cap), evidence.values());
    auto keep = member_vector(query);
    auto table = squared_marginal(sliced, keep);
    double total = 0;
    for (double p : table.data()) {
        total += p;
    }
    if (!(total > 0)) {
        throw ImpossibleEvidenceError();
    }
    for (double &p : table.data()) {
        p /= total;
    }
    return table;
}

Multinode SubNet::map(const Multinode &m) const {
    std::vector<int> out;
    for (int v : m) {
        int w = old_to_new.at(static_cast<size_t>(v));
        if (w < 0) {
            throw ArgumentError("node " + std::to_string(v) + " is not part of the sub-net");
        }
        out.push_back(w);
    }
    return Multinode(std::move(out));
}

SubNet ancestral_subnet(const QBNet &net, const Multinode &keep) {
    const Dag &dag = net.dag();
    dag.check(keep);
    std::vector<int> old_to_new(static_cast<size_t>(dag.size()), -1);
    int next = 0;
    for (int v : keep) {
        old_to_new[static_cast<size_t>(v)] = next++;
    }
    std::vector<Dag::Node> nodes;
    std::vector<NodeTpm> tpms;
    for (int v : keep) {
        Dag::Node node = dag.node(v);
        for (int &p : node.parents) {
            p = old_to_new[static_cast<size_t>(p)];
            if (p < 0) {
                throw ArgumentError("node set is not closed under taking parents");
            }
        }
        tpms.push_back({old_to_new[static_cast<size_t>(v)], node.parents, net.tpm(v).table});
        nodes.push_back(std::move(node));
    }
    // The tables were validated when `net` was built.
    return {QBNet(Dag(std::move(nodes)), std::move(tpms), std::numeric_limits<double>::infinity()),
            std::move(old_to_new)};
}

}  // namespace qbn
