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

#include "qbnet/graph.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "qbnet/errors.h"

namespace qbn {

Multinode::Multinode(std::initializer_list<int> members) : Multinode(std::vector<int>(members)) {
}

Multinode::Multinode(std::vector<int> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
        throw ArgumentError("multinode has duplicate members");
    }
}

bool Multinode::contains(int node) const {
    return std::binary_search(members_.begin(), members_.end(), node);
}

bool Multinode::intersects(const Multinode &other) const {
    for (int m : members_) {
        if (other.contains(m)) {
            return true;
        }
    }
    return false;
}

Multinode Multinode::united(const Multinode &other) const {
    std::vector<int> out;
    std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                   std::back_inserter(out));
    return Multinode(std::move(out));
}

Multinode Multinode::minus(const Multinode &other) const {
    std::vector<int> out;
    std::set_difference(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                        std::back_inserter(out));
    return Multinode(std::move(out));
}

Dag::Dag(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    const int n = size();
    children_.assign(nodes_.size(), {});
    std::set<std::string> names;
    for (int i = 0; i < n; ++i) {
        const auto &nd = nodes_[static_cast<size_t>(i)];
        if (nd.card < 1) {
            throw ArgumentError("node '" + nd.name + "' must have at least one state");
        }
        if (!names.insert(nd.name).second) {
            throw ArgumentError("duplicate node name '" + nd.name + "'");
        }
        std::set<int> seen;
        for (int p : nd.parents) {
            if (p < 0 || p >= n) {
                throw ArgumentError("node '" + nd.name + "' has an out-of-range parent");
            }
            if (p == i) {
                throw StructureError("self loop on node '" + nd.name + "'");
            }
            if (!seen.insert(p).second) {
                throw StructureError("duplicate edge into node '" + nd.name + "'");
            }
            children_[static_cast<size_t>(p)].push_back(i);
        }
    }
    for (auto &c : children_) {
        std::sort(c.begin(), c.end());
    }

    // Kahn with a min-heap gives the deterministic tie break.
    std::vector<int> indegree(nodes_.size());
    for (int i = 0; i < n; ++i) {
        indegree[static_cast<size_t>(i)] = static_cast<int>(nodes_[static_cast<size_t>(i)].parents.size());
    }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int i = 0; i < n; ++i) {
        if (indegree[static_cast<size_t>(i)] == 0) {
            ready.push(i);
        }
    }
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        topo_.push_back(v);
        for (int c : children_[static_cast<size_t>(v)]) {
            if (--indegree[static_cast<size_t>(c)] == 0) {
                ready.push(c);
            }
        }
    }
    if (static_cast<int>(topo_.size()) != n) {
        throw StructureError("graph contains a directed cycle");
    }
}

Dag Dag::from_edges(std::vector<int> cards, const std::vector<std::pair<int, int>> &edges) {
    std::vector<Node> nodes;
    for (size_t i = 0; i < cards.size(); ++i) {
        nodes.push_back({std::to_string(i), cards[i], {}});
    }
    for (const auto &[p, c] : edges) {
        if (c < 0 || c >= static_cast<int>(nodes.size())) {
            throw ArgumentError("edge endpoint out of range");
        }
        nodes[static_cast<size_t>(c)].parents.push_back(p);
    }
    return Dag(std::move(nodes));
}

int Dag::index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i) {
        if (nodes_[static_cast<size_t>(i)].name == name) {
            return i;
        }
    }
    throw ArgumentError("unknown node '" + std::string(name) + "'");
}

std::vector<std::pair<int, int>> Dag::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i) {
        for (int p : parents(i)) {
            out.emplace_back(p, i);
        }
    }
    return out;
}

Multinode Dag::all_nodes() const {
    std::vector<int> all(nodes_.size());
    for (size_t i = 0; i < all.size(); ++i) {
        all[i] = static_cast<int>(i);
    }
    return Multinode(std::move(all));
}

Multinode Dag::complement(const Multinode &a) const {
    check(a);
    return all_nodes().minus(a);
}

void Dag::check(const Multinode &a) const {
    for (int m : a) {
        if (m < 0 || m >= size()) {
            throw ArgumentError("multinode member " + std::to_string(m) + " is not a node");
        }
    }
}

std::vector<int> topological_order(const Dag &dag) {
    return dag.topological_order();
}

bool is_polytree(const Dag &dag) {
    // Union-find over the skeleton: a repeated connection means an undirected cycle.
    std::vector<int> root(static_cast<size_t>(dag.size()));
    for (size_t i = 0; i < root.size(); ++i) {
        root[i] = static_cast<int>(i);
    }
    std::function<int(int)> find = [&](int v) {
        while (root[static_cast<size_t>(v)] != v) {
            root[static_cast<size_t>(v)] = root[static_cast<size_t>(root[static_cast<size_t>(v)])];
            v = root[static_cast<size_t>(v)];
        }
        return v;
    };
    for (const auto &[p, c] : dag.edges()) {
        int rp = find(p), rc = find(c);
        if (rp == rc) {
            return false;
        }
        root[static_cast<size_t>(rp)] = rc;
    }
    return true;
}

Multinode ancestral_set(const Dag &dag, const Multinode &m) {
    dag.check(m);
    std::vector<char> in(static_cast<size_t>(dag.size()), 0);
    std::vector<int> stack(m.begin(), m.end());
    for (int v : m) {
        in[static_cast<size_t>(v)] = 1;
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int p : dag.parents(v)) {
            if (!in[static_cast<size_t>(p)]) {
                in[static_cast<size_t>(p)] = 1;
                stack.push_back(p);
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < dag.size(); ++v) {
        if (in[static_cast<size_t>(v)]) {
            out.push_back(v);
        }
    }
    return Multinode(std::move(out));
}

bool d_separated(const Dag &dag, const Multinode &a, const Multinode &b, const Multinode &z) {
    dag.check(a);
    dag.check(b);
    dag.check(z);
    if (a.intersects(b) || a.intersects(z) || b.intersects(z)) {
        throw ArgumentError("d-separation requires pairwise disjoint multinodes");
    }
    if (a.empty() || b.empty()) {
        return true;
    }
    const auto n = static_cast<size_t>(dag.size());

    std::vector<char> ancestral(n, 0);
    for (int v : ancestral_set(dag, a.united(b).united(z))) {
        ancestral[static_cast<size_t>(v)] = 1;
    }
    std::vector<int> stack;

    std::vector<std::vector<int>> adj(n);
    auto link = [&](int u, int v) {
        adj[static_cast<size_t>(u)].push_back(v);
        adj[static_cast<size_t>(v)].push_back(u);
    };
    for (int v = 0; v < dag.size(); ++v) {
        if (!ancestral[static_cast<size_t>(v)]) {
            continue;
        }
        const auto &ps = dag.parents(v);
        for (size_t i = 0; i < ps.size(); ++i) {
            link(ps[i], v);
            for (size_t j = i + 1; j < ps.size(); ++j) {
                link(ps[i], ps[j]);
            }
        }
    }

    std::vector<char> seen(n, 0);
    for (int v : z) {
        seen[static_cast<size_t>(v)] = 1;
    }
    for (int v : a) {
        seen[static_cast<size_t>(v)] = 1;
        stack.push_back(v);
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (b.contains(v)) {
            return false;
        }
        for (int u : adj[static_cast<size_t>(v)]) {
            if (!seen[static_cast<size_t>(u)]) {
                seen[static_cast<size_t>(u)] = 1;
                stack.push_back(u);
            }
        }
    }
    return true;
}

}  // namespace qbn
