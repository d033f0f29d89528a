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

#ifndef QBNET_GRAPH_H
#define QBNET_GRAPH_H

#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qbn {

/// A set of node indices, kept sorted so equal sets compare equal.
class Multinode {
   public:
    Multinode() = default;
    Multinode(std::initializer_list<int> members);
    explicit Multinode(std::vector<int> members);

    const std::vector<int> &members() const {
        return members_;
    }
    size_t size() const {
        return members_.size();
    }
    bool empty() const {
        return members_.empty();
    }
    bool contains(int node) const;
    bool intersects(const Multinode &other) const;
    Multinode united(const Multinode &other) const;
    Multinode minus(const Multinode &other) const;

    auto begin() const {
        return members_.begin();
    }
    auto end() const {
        return members_.end();
    }
    bool operator==(const Multinode &) const = default;

   private:
    std::vector<int> members_;
};

/// Directed acyclic graph with named nodes of finite cardinality.
///
/// Parent lists keep their declared order since node tables are laid out by it.
/// Construction rejects cycles, self loops, duplicate edges and duplicate names.
class Dag {
   public:
    struct Node {
        std::string name;
        int card = 2;
        std::vector<int> parents;
    };

    Dag() = default;
    explicit Dag(std::vector<Node> nodes);

    /// Convenience: nodes named "0", "1", ... with the given cardinalities.
    static Dag from_edges(std::vector<int> cards, const std::vector<std::pair<int, int>> &edges);

    int size() const {
        return static_cast<int>(nodes_.size());
    }
    const Node &node(int i) const {
        return nodes_.at(static_cast<size_t>(i));
    }
    const std::vector<Node> &nodes() const {
        return nodes_;
    }
    int card(int i) const {
        return node(i).card;
    }
    const std::vector<int> &parents(int i) const {
        return node(i).parents;
    }
    const std::vector<int> &children(int i) const {
        return children_.at(static_cast<size_t>(i));
    }
    /// Throws ArgumentError for unknown names.
    int index_of(std::string_view name) const;
    std::vector<std::pair<int, int>> edges() const;

    /// Parents before children; ties broken by smaller index first.
    const std::vector<int> &topological_order() const {
        return topo_;
    }

    Multinode all_nodes() const;
    Multinode complement(const Multinode &a) const;
    /// Throws ArgumentError if any member is out of range.
    void check(const Multinode &a) const;

   private:
    std::vector<Node> nodes_;
    std::vector<std::vector<int>> children_;
    std::vector<int> topo_;
};

std::vector<int> topological_order(const Dag &dag);

/// True iff the undirected skeleton is a forest.
bool is_polytree(const Dag &dag);

/// `m` together with every ancestor of its members.
Multinode ancestral_set(const Dag &dag, const Multinode &m);

/// True iff every undirected path between A and B is blocked by Z.
///
/// Computed by reachability in the moral graph of the ancestral set of A ∪ B ∪ Z with Z
/// removed. Empty A or B is vacuously separated. Throws ArgumentError when the multinodes
/// overlap.
bool d_separated(const Dag &dag, const Multinode &a, const Multinode &b, const Multinode &z);

}  // namespace qbn

#endif
