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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "cli.h"
#include "qbnet/io.h"
#include "qbnet/qbp.h"
#include "qbnet/random.h"
#include "qbnet/squashed.h"

namespace py = pybind11;

namespace qbn {
namespace {

Multinode named(const Dag &dag, const std::vector<std::string> &names) {
    std::vector<int> members;
    for (const auto &n : names) {
        members.push_back(dag.index_of(n));
    }
    return Multinode(std::move(members));
}

Evidence evidence_of(const Dag &dag, const std::map<std::string, int> &values) {
    std::map<int, int> ev;
    for (const auto &[name, v] : values) {
        ev[dag.index_of(name)] = v;
    }
    Evidence e(std::move(ev));
    e.check(dag);
    return e;
}

/// Axes 0, 1, ... with the given dimensions.
DensityMatrix density(const Eigen::MatrixXcd &m, const std::vector<int> &dims) {
    std::vector<Axis> axes;
    for (size_t i = 0; i < dims.size(); ++i) {
        axes.push_back({static_cast<int>(i), dims[i]});
    }
    return DensityMatrix(std::move(axes), m);
}

std::map<std::string, std::vector<double>> posteriors(const QBNet &net, const std::map<std::string, int> &evidence,
                                                      const std::string &method) {
    const Dag &dag = net.dag();
    Evidence ev = evidence_of(dag, evidence);
    std::map<std::string, std::vector<double>> out;
    if (method == "bp") {
        for (auto &bel : propagate_polytree(net, ev)) {
            if (ev.observed(bel.node)) {
                continue;
            }
            out[dag.node(bel.node).name] = std::move(bel.probabilities);
        }
    } else if (method == "oracle") {
        for (int x : dag.complement(ev.nodes())) {
            out[dag.node(x).name] = posterior_oracle(net, Multinode{x}, ev).data();
        }
    } else {
        throw ArgumentError("method must be 'bp' or 'oracle'");
    }
    return out;
}

}  // namespace
}  // namespace qbn

PYBIND11_MODULE(_core, m) {
    using namespace qbn;
    m.doc() = "Quantum Bayesian networks: d-separation, belief propagation, entanglement";

    auto base = py::register_exception<Error>(m, "QbnetError", PyExc_RuntimeError);
    py::register_exception<ArgumentError>(m, "ArgumentError", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<StructureError>(m, "StructureError", base);
    py::register_exception<ImpossibleEvidenceError>(m, "ImpossibleEvidenceError", base);
    py::register_exception<NotReducibleError>(m, "NotReducibleError", base);
    py::register_exception<InvalidStateError>(m, "InvalidStateError", base);

    py::class_<Dag>(m, "Dag")
        .def_static("from_json", [](const std::string &text) { return parse_dag(text); })
        .def_static("from_edges", &Dag::from_edges, py::arg("cards"), py::arg("edges"))
        .def_property_readonly("names",
                               [](const Dag &d) {
                                   std::vector<std::string> out;
                                   for (const auto &n : d.nodes()) {
                                       out.push_back(n.name);
                                   }
                                   return out;
                               })
        .def_property_readonly("cards",
                               [](const Dag &d) {
                                   std::vector<int> out;
                                   for (const auto &n : d.nodes()) {
                                       out.push_back(n.card);
                                   }
                                   return out;
                               })
        .def_property_readonly("edges", &Dag::edges)
        .def("is_polytree", [](const Dag &d) { return is_polytree(d); })
        .def(
            "d_separated",
            [](const Dag &d, const std::vector<std::string> &a, const std::vector<std::string> &b,
               const std::vector<std::string> &z) { return d_separated(d, named(d, a), named(d, b), named(d, z)); },
            py::arg("a"), py::arg("b"), py::arg("z") = std::vector<std::string>{})
        .def("__len__", &Dag::size);

    py::class_<QBNet>(m, "QBNet")
        .def_static("from_json", [](const std::string &text) { return parse_qbnet(text); })
        .def_static(
            "random",
            [](const Dag &dag, uint64_t seed) {
                Rng rng(seed);
                return random_qbnet(dag, rng);
            },
            py::arg("dag"), py::arg("seed") = 0)
        .def("to_json", [](const QBNet &net) { return write_qbnet(net); })
        .def_property_readonly("dag", &QBNet::dag)
        .def("table", [](const QBNet &net, const std::string &name) { return net.tpm(net.dag().index_of(name)).table; })
        .def("posteriors", &posteriors, py::arg("evidence") = std::map<std::string, int>{},
             py::arg("method") = "bp")
        .def("__len__", &QBNet::size);

    m.def(
        "entropy", [](const Eigen::MatrixXcd &rho, const std::vector<int> &dims) {
            return von_neumann_entropy(density(rho, dims));
        },
        py::arg("rho"), py::arg("dims"), "Von Neumann entropy in nats.");
    m.def(
        "mutual_information",
        [](const Eigen::MatrixXcd &rho, const std::vector<int> &dims, const std::vector<int> &x,
           const std::vector<int> &y) { return quantum_mutual_information(density(rho, dims), x, y); },
        py::arg("rho"), py::arg("dims"), py::arg("x"), py::arg("y"));
    m.def(
        "conditional_entropy",
        [](const Eigen::MatrixXcd &rho, const std::vector<int> &dims, const std::vector<int> &x,
           const std::vector<int> &y) { return quantum_conditional_entropy(density(rho, dims), x, y); },
        py::arg("rho"), py::arg("dims"), py::arg("x"), py::arg("y"));
    m.def(
        "cmi",
        [](const Eigen::MatrixXcd &rho, const std::vector<int> &dims, const std::vector<int> &x,
           const std::vector<int> &y,
           const std::vector<int> &z) { return quantum_cmi(density(rho, dims), x, y, z); },
        py::arg("rho"), py::arg("dims"), py::arg("x"), py::arg("y"), py::arg("z"));
    m.def(
        "squashed_entanglement",
        [](const Eigen::MatrixXcd &rho, const std::vector<int> &dims, int restarts, int evaluations, int lambda_card,
           uint64_t seed) {
            if (dims.size() != 2) {
                throw ArgumentError("squashed entanglement needs exactly two subsystems");
            }
            SquashedOptions opts{lambda_card, restarts, evaluations, seed};
            DensityMatrix state = density(rho, dims);
            std::optional<SquashedResult> found;
            {
                py::gil_scoped_release release;
                found.emplace(squashed_entanglement(state, opts));
            }
            const SquashedResult &r = *found;
            std::vector<Eigen::MatrixXcd> components;
            for (const auto &c : r.witness.components()) {
                components.push_back(c.matrix());
            }
            return py::make_tuple(r.value, r.witness.weights(), components);
        },
        py::arg("rho"), py::arg("dims"), py::arg("restarts") = 16, py::arg("evaluations") = 2000,
        py::arg("lambda_card") = 0, py::arg("seed") = 0,
        "Returns (value, weights, components) of the best extension found.");

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::vector<const char *> argv{"qbnet"};
            for (const auto &a : args) {
                argv.push_back(a.c_str());
            }
            std::ostringstream out, err;
            int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the qbnet command line; returns (exit code, stdout, stderr).");
}
