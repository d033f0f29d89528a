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

#include "qbnet/io.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace qbn {

namespace {

using json = nlohmann::json;

json parse_text(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        size_t line = 1, column = 1;
        const size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string context;
        if (line >= 1) {
            std::istringstream in(text);
            for (size_t k = 0; k < line && std::getline(in, context); ++k) {
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": malformed JSON near '" + context + "'");
    }
}

/// Runs `f`, turning shape errors from the JSON library into ParseError.
template <class F>
auto shaped(const char *what, F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw ParseError(std::string("bad ") + what + " document: " + e.what());
    }
}

const json &field(const json &obj, const char *key) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    return obj.at(key);
}

cplx read_complex(const json &v) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ParseError("expected a number or an [re, im] pair, got " + v.dump());
}

std::vector<cplx> read_complex_list(const json &v) {
    if (!v.is_array()) {
        throw ParseError("expected a list of complex numbers");
    }
    std::vector<cplx> out;
    for (const auto &e : v) {
        out.push_back(read_complex(e));
    }
    return out;
}

json complex_json(cplx c) {
    return json::array({c.real(), c.imag()});
}

Eigen::MatrixXcd read_matrix(const json &v) {
    if (!v.is_array() || v.empty()) {
        throw ParseError("matrix must be a nonempty list of rows");
    }
    const auto n = static_cast<Eigen::Index>(v.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto &row = v[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw ParseError("matrix must be square");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = read_complex(row[static_cast<size_t>(c)]);
        }
    }
    return m;
}

json matrix_json(const Eigen::MatrixXcd &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::pair<std::vector<Axis>, std::vector<std::string>> read_labels(const json &v) {
    if (!v.is_array()) {
        throw ParseError("'labels' must be a list");
    }
    std::vector<Axis> axes;
    std::vector<std::string> names;
    for (const auto &l : v) {
        names.push_back(field(l, "name").get<std::string>());
        axes.push_back({static_cast<int>(axes.size()), field(l, "dim").get<int>()});
        if (axes.back().dim < 1) {
            throw ParseError("label '" + names.back() + "' needs a positive dimension");
        }
    }
    return {axes, names};
}

json labels_json(const std::vector<Axis> &axes, const std::vector<std::string> &names) {
    if (names.size() != axes.size()) {
        throw ArgumentError("need one name per axis");
    }
    json out = json::array();
    for (size_t k = 0; k < axes.size(); ++k) {
        out.push_back({{"name", names[k]}, {"dim", axes[k].dim}});
    }
    return out;
}

Dag read_dag(const json &doc) {
    const auto &nodes = field(doc, "nodes");
    if (!nodes.is_array()) {
        throw ParseError("'nodes' must be a list");
    }
    std::map<std::string, int> index;
    for (const auto &n : nodes) {
        auto name = field(n, "name").get<std::string>();
        if (!index.emplace(name, static_cast<int>(index.size())).second) {
            throw ParseError("duplicate node name '" + name + "'");
        }
    }
    std::vector<Dag::Node> out;
    for (const auto &n : nodes) {
        Dag::Node node;
        node.name = n.at("name").get<std::string>();
        node.card = n.contains("states") ? n.at("states").get<int>() : 2;
        if (n.contains("parents")) {
            for (const auto &p : n.at("parents")) {
                auto it = index.find(p.get<std::string>());
                if (it == index.end()) {
                    throw ParseError("node '" + node.name + "' names unknown parent '" + p.get<std::string>() + "'");
                }
                node.parents.push_back(it->second);
            }
        }
        out.push_back(std::move(node));
    }
    return Dag(std::move(out));
}

json dag_nodes_json(const Dag &dag) {
    json nodes = json::array();
    for (const auto &n : dag.nodes()) {
        json parents = json::array();
        for (int p : n.parents) {
            parents.push_back(dag.node(p).name);
        }
        nodes.push_back({{"name", n.name}, {"states", n.card}, {"parents", parents}});
    }
    return nodes;
}

}  // namespace

QBNet parse_qbnet(const std::string &text) {
    auto doc = parse_text(text);
    return shaped("qbnet", [&] {
        Dag dag = read_dag(doc);
        const auto &tables = field(doc, "tpms");
        std::vector<NodeTpm> tpms;
        for (int j = 0; j < dag.size(); ++j) {
            const auto &name = dag.node(j).name;
            if (!tables.contains(name)) {
                throw ParseError("no table for node '" + name + "'");
            }
            tpms.push_back({j, dag.parents(j), read_complex_list(tables.at(name))});
        }
        if (tables.size() != static_cast<size_t>(dag.size())) {
            throw ParseError("'tpms' names a node that does not exist");
        }
        return QBNet(std::move(dag), std::move(tpms), kParsedNormTolerance);
    });
}

Dag parse_dag(const std::string &text) {
    auto doc = parse_text(text);
    return shaped("dag", [&] { return read_dag(doc); });
}

std::string write_qbnet(const QBNet &net) {
    json tpms = json::object();
    for (const auto &t : net.tpms()) {
        json table = json::array();
        for (cplx c : t.table) {
            table.push_back(complex_json(c));
        }
        tpms[net.dag().node(t.node).name] = std::move(table);
    }
    json doc = json::object();
    doc["nodes"] = dag_nodes_json(net.dag());
    doc["tpms"] = std::move(tpms);
    return doc.dump(2) + "\n";
}

NamedDensity parse_density(const std::string &text) {
    auto doc = parse_text(text);
    return shaped("density", [&] {
        auto [axes, names] = read_labels(field(doc, "labels"));
        auto m = read_matrix(field(doc, "matrix"));
        if (static_cast<size_t>(m.rows()) != volume(axes)) {
            throw ParseError("matrix size does not match the label dimensions");
        }
        return NamedDensity{DensityMatrix(std::move(axes), std::move(m)), std::move(names)};
    });
}

std::string write_density(const DensityMatrix &rho, const std::vector<std::string> &names) {
    json doc;
    doc["labels"] = labels_json(rho.axes(), names);
    doc["matrix"] = matrix_json(rho.matrix());
    return doc.dump(2) + "\n";
}

NamedExtension parse_extension(const std::string &text) {
    auto doc = parse_text(text);
    return shaped("extension", [&] {
        std::vector<double> weights = field(doc, "weights").get<std::vector<double>>();
        const auto &comps = field(doc, "components");
        if (!comps.is_array() || comps.empty()) {
            throw ParseError("'components' must be a nonempty list");
        }
        std::vector<Eigen::MatrixXcd> matrices;
        for (const auto &c : comps) {
            matrices.push_back(read_matrix(c));
        }
        std::vector<Axis> axes;
        std::vector<std::string> names;
        if (doc.contains("labels")) {
            std::tie(axes, names) = read_labels(doc.at("labels"));
            if (axes.size() != 2) {
                throw ParseError("an extension needs exactly two labels");
            }
        } else {
            const auto d = matrices.front().rows();
            const auto s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(d))));
            if (static_cast<Eigen::Index>(s) * s != d) {
                throw ParseError("component dimension " + std::to_string(d) +
                                 " is not a square; give 'labels' explicitly");
            }
            axes = {{0, s}, {1, s}};
            names = {"x", "y"};
        }
        std::vector<DensityMatrix> components;
        for (auto &m : matrices) {
            if (static_cast<size_t>(m.rows()) != volume(axes)) {
                throw ParseError("component size does not match the label dimensions");
            }
            components.emplace_back(axes, std::move(m));
        }
        return NamedExtension{DiagonalExtension(std::move(weights), std::move(components)), std::move(names)};
    });
}

std::string write_extension(const DiagonalExtension &ext, const std::vector<std::string> &names) {
    json doc;
    doc["weights"] = ext.weights();
    json comps = json::array();
    for (const auto &c : ext.components()) {
        comps.push_back(matrix_json(c.matrix()));
    }
    doc["components"] = std::move(comps);
    doc["labels"] = labels_json(ext.components().front().axes(), names);
    return doc.dump(2) + "\n";
}

FactorGraphNet parse_factor_graph(const std::string &text) {
    auto doc = parse_text(text);
    return shaped("factor graph", [&] {
        std::vector<FactorGraphNet::Root> roots;
        std::map<std::string, int> index;
        for (const auto &r : field(doc, "roots")) {
            FactorGraphNet::Root root{field(r, "name").get<std::string>(), field(r, "states").get<int>()};
            index.emplace(root.name, static_cast<int>(roots.size()));
            roots.push_back(std::move(root));
        }
        std::vector<FactorGraphNet::Factor> factors;
        for (const auto &f : field(doc, "factors")) {
            FactorGraphNet::Factor factor;
            factor.name = field(f, "name").get<std::string>();
            for (const auto &n : field(f, "nb")) {
                auto it = index.find(n.get<std::string>());
                if (it == index.end()) {
                    throw ParseError("factor '" + factor.name + "' names unknown root '" + n.get<std::string>() + "'");
                }
                factor.nb.push_back(it->second);
            }
            factor.table = read_complex_list(field(f, "table"));
            factors.push_back(std::move(factor));
        }
        return FactorGraphNet(std::move(roots), std::move(factors));
    });
}

std::string write_factor_graph(const FactorGraphNet &net) {
    json roots = json::array();
    for (const auto &r : net.roots()) {
        roots.push_back({{"name", r.name}, {"states", r.states}});
    }
    json factors = json::array();
    for (const auto &f : net.factors()) {
        json nb = json::array();
        for (int i : f.nb) {
            nb.push_back(net.roots()[static_cast<size_t>(i)].name);
        }
        json table = json::array();
        for (cplx c : f.table) {
            table.push_back(complex_json(c));
        }
        factors.push_back({{"name", f.name}, {"nb", nb}, {"table", table}});
    }
    json doc;
    doc["roots"] = std::move(roots);
    doc["factors"] = std::move(factors);
    return doc.dump(2) + "\n";
}

std::string write_report(const TrialReport &report) {
    json doc;
    doc["kind"] = report.kind;
    doc["model"] = report.model == Compatibility::kFullNet ? "full" : "ancestral";
    doc["dag"] = report.dag;
    doc["a"] = report.a.members();
    doc["b"] = report.b.members();
    doc["z"] = report.z.members();
    doc["trials"] = report.trials;
    doc["max_value"] = report.max_value;
    doc["witness_seed"] = report.witness_seed ? json(*report.witness_seed) : json(nullptr);
    doc["witness_trial"] = report.witness_trial;
    doc["seconds"] = report.seconds;
    doc["pass"] = report.pass;
    return doc.dump();
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgumentError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ArgumentError("cannot write '" + path + "'");
    }
    out << text;
}

}  // namespace qbn
