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


#include "cli.h"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbnet/constructions.h"
#include "qbnet/io.h"
#include "qbnet/qbp.h"
#include "qbnet/qinfo.h"
#include "qbnet/squashed.h"
#include "qbnet/verify.h"

namespace qbn::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    if (text.empty()) {
        return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, sep)) {
        if (item.empty()) {
            throw ArgumentError("empty name in list '" + text + "'");
        }
        out.push_back(item);
    }
    return out;
}

Multinode nodes_named(const Dag &dag, const std::string &csv) {
    std::vector<int> members;
    for (const auto &name : split(csv, ',')) {
        members.push_back(dag.index_of(name));
    }
    return Multinode(std::move(members));
}

std::vector<int> axes_named(const NamedDensity &d, const std::string &csv) {
    std::vector<int> out;
    for (const auto &name : split(csv, ',')) {
        auto it = std::find(d.names.begin(), d.names.end(), name);
        if (it == d.names.end()) {
            throw ArgumentError("no label named '" + name + "'");
        }
        out.push_back(static_cast<int>(it - d.names.begin()));
    }
    return out;
}

/// "x:y" into its two halves.
std::pair<std::string, std::string> pair_of(const std::string &text, char sep, const char *what) {
    auto at = text.find(sep);
    if (at == std::string::npos) {
        throw ArgumentError(std::string("expected ") + what + ", got '" + text + "'");
    }
    return {text.substr(0, at), text.substr(at + 1)};
}

Evidence parse_evidence(const Dag &dag, const std::string &csv) {
    std::map<int, int> values;
    for (const auto &item : split(csv, ',')) {
        auto [name, value] = pair_of(item, '=', "name=value");
        int node = dag.index_of(name);
        int v = 0;
        try {
            size_t used = 0;
            v = std::stoi(value, &used);
            if (used != value.size()) {
                throw std::invalid_argument(value);
            }
        } catch (const std::logic_error &) {
            throw ArgumentError("evidence value '" + value + "' is not an integer");
        }
        if (!values.emplace(node, v).second) {
            throw ArgumentError("node '" + name + "' observed twice");
        }
    }
    Evidence ev(std::move(values));
    ev.check(dag);
    return ev;
}

void emit(std::ostream &out, const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_file(path, text);
    }
}

std::string number(double v) {
    std::ostringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

struct DsepArgs {
    std::string file, a, b, z;
};

int cmd_dsep(const DsepArgs &args, std::ostream &out) {
    Dag dag = parse_dag(read_file(args.file));
    bool sep = d_separated(dag, nodes_named(dag, args.a), nodes_named(dag, args.b), nodes_named(dag, args.z));
    out << (sep ? "true" : "false") << "\n";
    return 0;
}

struct InferArgs {
    std::string file, evidence, method = "bp", query;
};

int cmd_infer(const InferArgs &args, std::ostream &out) {
    QBNet net = parse_qbnet(read_file(args.file));
    const Dag &dag = net.dag();
    Evidence ev = parse_evidence(dag, args.evidence);
    Multinode query = args.query.empty() ? dag.complement(ev.nodes()) : nodes_named(dag, args.query);
    if (query.intersects(ev.nodes())) {
        throw ArgumentError("query nodes must not be observed");
    }
    std::map<int, std::vector<double>> tables;
    if (args.method == "bp") {
        for (auto &bel : propagate_polytree(net, ev)) {
            if (query.contains(bel.node)) {
                tables[bel.node] = std::move(bel.probabilities);
            }
        }
    } else {
        for (int x : query) {
            tables[x] = posterior_oracle(net, Multinode{x}, ev).data();
        }
    }
    ojson doc;
    doc["method"] = args.method;
    doc["evidence"] = ojson::object();
    for (auto [node, value] : ev.values()) {
        doc["evidence"][dag.node(node).name] = value;
    }
    doc["posteriors"] = ojson::object();
    for (const auto &[node, probs] : tables) {
        doc["posteriors"][dag.node(node).name] = probs;
    }
    out << doc.dump(2) << "\n";
    return 0;
}

struct EntropyArgs {
    std::string file, conditional, mutual, cmi;
};

int cmd_entropy(const EntropyArgs &args, std::ostream &out) {
    auto d = parse_density(read_file(args.file));
    const int chosen = !args.conditional.empty() + !args.mutual.empty() + !args.cmi.empty();
    if (chosen > 1) {
        throw ArgumentError("pick at most one of --conditional, --mutual, --cmi");
    }
    double value = 0;
    if (!args.conditional.empty()) {
        auto y = axes_named(d, args.conditional);
        std::vector<int> x;
        for (int l : d.rho.labels()) {
            if (std::find(y.begin(), y.end(), l) == y.end()) {
                x.push_back(l);
            }
        }
        value = quantum_conditional_entropy(d.rho, x, y);
    } else if (!args.mutual.empty()) {
        auto [x, y] = pair_of(args.mutual, ':', "x:y");
        value = quantum_mutual_information(d.rho, axes_named(d, x), axes_named(d, y));
    } else if (!args.cmi.empty()) {
        auto [xy, z] = pair_of(args.cmi, '|', "x:y|z");
        auto [x, y] = pair_of(xy, ':', "x:y|z");
        value = quantum_cmi(d.rho, axes_named(d, x), axes_named(d, y), axes_named(d, z));
    } else {
        value = von_neumann_entropy(d.rho);
    }
    out << number(value) << "\n";
    return 0;
}

struct EsqArgs {
    std::string file, witness;
    SquashedOptions opts;
};

int cmd_esq(const EsqArgs &args, std::ostream &out) {
    auto d = parse_density(read_file(args.file));
    if (d.names.size() != 2) {
        throw ArgumentError("squashed entanglement needs a state with exactly two labels");
    }
    auto result = squashed_entanglement(d.rho, args.opts);
    if (!args.witness.empty()) {
        write_file(args.witness, write_extension(result.witness, d.names));
    }
    ojson doc;
    doc["value"] = result.value;
    doc["lambda_card"] = result.witness.lambda_card();
    doc["best_restart"] = result.best_restart;
    doc["seed"] = args.opts.seed;
    out << doc.dump() << "\n";
    return 0;
}

struct ConvertArgs {
    std::string file, output;
};

int cmd_from_density(const ConvertArgs &args, std::ostream &out) {
    auto e = parse_extension(read_file(args.file));
    emit(out, args.output, write_qbnet(density_to_qbnet(e.ext)));
    return 0;
}

int cmd_reduce(const ConvertArgs &args, std::ostream &out) {
    emit(out, args.output, write_qbnet(reduce_qbnet(parse_qbnet(read_file(args.file)))));
    return 0;
}

struct VerifyArgs {
    std::string dag, a, b, z;
    int trials = 50;
    uint64_t seed = 0;
    int max_nodes = 10;
    int max_card = 3;
    bool ancestral = false;
};

int cmd_verify_dsep(const VerifyArgs &args, std::ostream &out) {
    if (args.dag.empty()) {
        throw ArgumentError("verify dsep needs --dag");
    }
    Dag dag = parse_dag(read_file(args.dag));
    const auto model = args.ancestral ? Compatibility::kAncestral : Compatibility::kFullNet;
    std::vector<TrialReport> reports;
    if (args.a.empty() && args.b.empty()) {
        if (!args.z.empty()) {
            throw ArgumentError("--z needs --a and --b");
        }
        reports = check_dsep_forward_all(dag, args.trials, args.seed, kForwardThreshold, model);
    } else {
        auto a = nodes_named(dag, args.a), b = nodes_named(dag, args.b), z = nodes_named(dag, args.z);
        if (a.intersects(b) || a.intersects(z) || b.intersects(z)) {
            throw ArgumentError("--a, --b and --z must be disjoint");
        }
        if (d_separated(dag, a, b, z)) {
            reports.push_back(check_dsep_forward(dag, a, b, z, args.trials, args.seed, kForwardThreshold, model));
        } else {
            reports.push_back(search_dsep_witness(dag, a, b, z, args.trials, args.seed, kWitnessThreshold, model));
        }
    }
    bool ok = true;
    for (const auto &r : reports) {
        out << write_report(r) << "\n";
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

int cmd_verify_bp(const VerifyArgs &args, std::ostream &out) {
    BpCampaignOptions opts;
    opts.count = args.trials;
    opts.seed = args.seed;
    opts.max_nodes = args.max_nodes;
    opts.max_card = args.max_card;
    if (!args.dag.empty()) {
        opts.dag = parse_dag(read_file(args.dag));
    }
    auto report = bp_campaign(opts);
    out << write_report(report) << "\n";
    return report.pass ? 0 : 1;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Quantum Bayesian network toolkit", "qbnet"};
    app.require_subcommand(1);

    DsepArgs dsep;
    auto *c_dsep = app.add_subcommand("dsep", "Test A ⟂ B | Z on the graph of a net or dag file");
    c_dsep->add_option("file", dsep.file, "net or dag JSON")->required();
    c_dsep->add_option("--a", dsep.a, "comma-separated node names")->required();
    c_dsep->add_option("--b", dsep.b, "comma-separated node names")->required();
    c_dsep->add_option("--z", dsep.z, "comma-separated node names");

    InferArgs infer;
    auto *c_infer = app.add_subcommand("infer", "Posterior of each query node given evidence");
    c_infer->add_option("file", infer.file, "net JSON")->required();
    c_infer->add_option("--evidence", infer.evidence, "name=value,...");
    c_infer->add_option("--method", infer.method, "bp or oracle")->check(CLI::IsMember({"bp", "oracle"}));
    c_infer->add_option("--query", infer.query, "comma-separated node names (default: all unobserved)");

    EntropyArgs entropy;
    auto *c_entropy = app.add_subcommand("entropy", "Von Neumann entropies in nats");
    c_entropy->add_option("file", entropy.file, "density JSON")->required();
    c_entropy->add_option("--conditional", entropy.conditional, "S(rest | y) for the listed labels y");
    c_entropy->add_option("--mutual", entropy.mutual, "S(x : y), written x:y");
    c_entropy->add_option("--cmi", entropy.cmi, "S(x : y | z), written x:y|z");

    EsqArgs esq;
    auto *c_esq = app.add_subcommand("esq", "Squashed entanglement upper bound with a witness extension");
    c_esq->add_option("file", esq.file, "two-label density JSON")->required();
    c_esq->add_option("--lam-card", esq.opts.lambda_card, "number of λ values (0: rank squared)")
        ->check(CLI::NonNegativeNumber);
    c_esq->add_option("--restarts", esq.opts.restarts, "random restarts")->check(CLI::PositiveNumber);
    c_esq->add_option("--evaluations", esq.opts.evaluations, "objective evaluations per restart")
        ->check(CLI::PositiveNumber);
    c_esq->add_option("--seed", esq.opts.seed, "master seed");
    c_esq->add_option("-o,--witness", esq.witness, "write the witness extension here");

    ConvertArgs from_density;
    auto *c_from = app.add_subcommand("from-density", "Five-node qbnet encoding a λ-diagonal state");
    c_from->add_option("file", from_density.file, "extension JSON")->required();
    c_from->add_option("-o,--output", from_density.output, "output net JSON (default: stdout)");

    ConvertArgs reduce;
    auto *c_reduce = app.add_subcommand("reduce", "Collapse a five-node extension net to three nodes");
    c_reduce->add_option("file", reduce.file, "net JSON")->required();
    c_reduce->add_option("-o,--output", reduce.output, "output net JSON (default: stdout)");

    VerifyArgs verify;
    auto *c_verify = app.add_subcommand("verify", "Sampled verification campaigns");
    c_verify->require_subcommand(1);
    auto *c_vdsep = c_verify->add_subcommand("dsep", "Forward check or witness search; all triples if --a/--b omitted");
    auto *c_vbp = c_verify->add_subcommand("bp", "Polytree BP against the oracle");
    for (auto *c : {c_vdsep, c_vbp}) {
        c->add_option("--dag", verify.dag, "net or dag JSON");
        c->add_option("--trials", verify.trials, "models per check")->check(CLI::PositiveNumber);
        c->add_option("--seed", verify.seed, "master seed");
    }
    c_vdsep->add_option("--a", verify.a, "comma-separated node names");
    c_vdsep->add_option("--b", verify.b, "comma-separated node names");
    c_vdsep->add_option("--z", verify.z, "comma-separated node names");
    c_vdsep->add_flag("--ancestral", verify.ancestral, "use the net restricted to the ancestors of A, B and Z");
    c_vbp->add_option("--max-nodes", verify.max_nodes, "largest random polytree")->check(CLI::PositiveNumber);
    c_vbp->add_option("--max-card", verify.max_card, "largest cardinality")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_dsep) {
            return cmd_dsep(dsep, out);
        }
        if (*c_infer) {
            return cmd_infer(infer, out);
        }
        if (*c_entropy) {
            return cmd_entropy(entropy, out);
        }
        if (*c_esq) {
            return cmd_esq(esq, out);
        }
        if (*c_from) {
            return cmd_from_density(from_density, out);
        }
        if (*c_reduce) {
            return cmd_reduce(reduce, out);
        }
        if (*c_vdsep) {
            return cmd_verify_dsep(verify, out);
        }
        return cmd_verify_bp(verify, out);
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace qbn::cli
