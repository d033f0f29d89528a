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

#include "qbnet/verify.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qbnet/qbp.h"
#include "qbnet/qinfo.h"
#include "qbnet/random.h"

namespace qbn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double cmi_of(const LabeledAmplitude &psi, const Multinode &a, const Multinode &b, const Multinode &z) {
    auto rho = density_from_amplitude(psi, a.united(b), z);
    return quantum_cmi(rho, a.members(), b.members(), z.members());
}

/// Nodes whose joint state a check reads for the triple (A, B, Z).
Multinode support_of(const Dag &dag, const Multinode &a, const Multinode &b, const Multinode &z,
                     Compatibility model) {
    if (model == Compatibility::kFullNet) {
        std::vector<int> all(static_cast<size_t>(dag.size()));
        std::iota(all.begin(), all.end(), 0);
        return Multinode(all);
    }
    return ancestral_set(dag, a.united(b).united(z));
}

struct ModelState {
    SubNet sub;
    LabeledAmplitude psi;
};

void check_triple(const Dag &dag, const Multinode &a, const Multinode &b, const Multinode &z) {
    dag.check(a);
    dag.check(b);
    dag.check(z);
    if (a.empty() || b.empty()) {
        throw ArgumentError("both sides of a d-separation check must be nonempty");
    }
}

TrialReport start_report(std::string kind, const Dag &dag, const Multinode &a, const Multinode &b,
                         const Multinode &z, int trials, Compatibility model) {
    if (trials < 1) {
        throw ArgumentError("need at least one trial");
    }
    TrialReport r;
    r.kind = std::move(kind);
    r.model = model;
    r.dag = describe_edges(dag);
    r.a = a;
    r.b = b;
    r.z = z;
    r.trials = trials;
    return r;
}

uint64_t adjacency_code(int n, const std::vector<std::pair<int, int>> &edges, const std::vector<int> &perm) {
    uint64_t code = 0;
    for (auto [u, v] : edges) {
        code |= uint64_t{1} << (perm[static_cast<size_t>(u)] * n + perm[static_cast<size_t>(v)]);
    }
    return code;
}

}  // namespace

std::string describe_edges(const Dag &dag) {
    std::ostringstream out;
    bool first = true;
    for (auto [u, v] : dag.edges()) {
        out << (first ? "" : " ") << dag.node(u).name << "->" << dag.node(v).name;
        first = false;
    }
    return out.str();
}

uint64_t trial_seed(uint64_t seed, int t) {
    return derive_seed(seed, static_cast<uint64_t>(t));
}

double dephased_cmi(const QBNet &net, const Multinode &a, const Multinode &b, const Multinode &z,
                    Compatibility model) {
    if (model == Compatibility::kFullNet) {
        auto rho = net_to_density(net, a.united(b), z);
        return quantum_cmi(rho, a.members(), b.members(), z.members());
    }
    auto sub = ancestral_subnet(net, support_of(net.dag(), a, b, z, model));
    return cmi_of(amplitude_tensor(sub.net), sub.map(a), sub.map(b), sub.map(z));
}

TrialReport check_dsep_forward(const Dag &dag, const Multinode &a, const Multinode &b, const Multinode &z,
                               int trials, uint64_t seed, double threshold, Compatibility model) {
    check_triple(dag, a, b, z);
    if (!d_separated(dag, a, b, z)) {
        throw ArgumentError("forward check needs a d-separated triple");
    }
    auto start = Clock::now();
    auto report = start_report("dsep-forward", dag, a, b, z, trials, model);
    for (int t = 0; t < trials; ++t) {
        Rng rng(trial_seed(seed, t));
        double cmi = std::abs(dephased_cmi(random_qbnet(dag, rng), a, b, z, model));
        if (report.witness_trial < 0 || cmi > report.max_value) {
            report.max_value = cmi;
            report.witness_trial = t;
            report.witness_seed = trial_seed(seed, t);
        }
    }
    report.pass = report.max_value <= threshold;
    report.seconds = seconds_since(start);
    return report;
}

TrialReport search_dsep_witness(const Dag &dag, const Multinode &a, const Multinode &b, const Multinode &z,
                                int trials, uint64_t seed, double threshold, Compatibility model) {
    check_triple(dag, a, b, z);
    if (d_separated(dag, a, b, z)) {
        throw ArgumentError("the triple is d-separated, so no witness exists");
    }
    auto start = Clock::now();
    auto report = start_report("dsep-witness", dag, a, b, z, trials, model);
    for (int t = 0; t < trials; ++t) {
        Rng rng(trial_seed(seed, t));
        double cmi = std::abs(dephased_cmi(random_qbnet(dag, rng), a, b, z, model));
        report.max_value = std::max(report.max_value, cmi);
        if (cmi > threshold) {
            report.witness_trial = t;
            report.witness_seed = trial_seed(seed, t);
            report.trials = t + 1;
            report.pass = true;
            break;
        }
    }
    report.seconds = seconds_since(start);
    return report;
}

std::vector<TrialReport> check_dsep_forward_all(const Dag &dag, int trials, uint64_t seed, double threshold,
                                                Compatibility model) {
    auto start = Clock::now();
    std::vector<TrialReport> reports;
    for (auto &[a, b, z] : disjoint_triples(dag.size())) {
        if (d_separated(dag, a, b, z)) {
            reports.push_back(start_report("dsep-forward", dag, a, b, z, trials, model));
        }
    }
    for (int t = 0; t < trials && !reports.empty(); ++t) {
        Rng rng(trial_seed(seed, t));
        const QBNet net = random_qbnet(dag, rng);
        // One amplitude tensor per distinct node set the triples read.
        std::map<std::vector<int>, ModelState> states;
        for (auto &r : reports) {
            Multinode support = support_of(dag, r.a, r.b, r.z, model);
            auto it = states.find(support.members());
            if (it == states.end()) {
                auto sub = ancestral_subnet(net, support);
                auto psi = amplitude_tensor(sub.net);
                it = states.emplace(support.members(), ModelState{std::move(sub), std::move(psi)}).first;
            }
            const SubNet &sub = it->second.sub;
            double cmi = std::abs(cmi_of(it->second.psi, sub.map(r.a), sub.map(r.b), sub.map(r.z)));
            if (r.witness_trial < 0 || cmi > r.max_value) {
                r.max_value = cmi;
                r.witness_trial = t;
                r.witness_seed = trial_seed(seed, t);
            }
        }
    }
    const double elapsed = seconds_since(start);
    for (auto &r : reports) {
        r.pass = r.max_value <= threshold;
        r.seconds = elapsed / static_cast<double>(reports.size());
    }
    return reports;
}

std::vector<std::tuple<Multinode, Multinode, Multinode>> disjoint_triples(int nodes) {
    std::vector<std::tuple<Multinode, Multinode, Multinode>> out;
    // Each node goes to A (1), B (2), Z (3) or nowhere (0).
    std::vector<int> role(static_cast<size_t>(nodes), 0);
    while (true) {
        std::vector<int> a, b, z;
        for (int v = 0; v < nodes; ++v) {
            int r = role[static_cast<size_t>(v)];
            (r == 1 ? a : r == 2 ? b : z).push_back(v);
            if (r == 0) {
                z.pop_back();
            }
        }
        if (!a.empty() && !b.empty() && a.front() < b.front()) {
            out.emplace_back(Multinode(a), Multinode(b), Multinode(z));
        }
        int k = 0;
        while (k < nodes && ++role[static_cast<size_t>(k)] == 4) {
            role[static_cast<size_t>(k)] = 0;
            ++k;
        }
        if (k == nodes) {
            break;
        }
    }
    return out;
}

std::vector<Dag> dags_up_to_isomorphism(int nodes, int card) {
    if (nodes < 1 || nodes > 7) {
        throw ArgumentError("isomorphism enumeration supports 1 to 7 nodes");
    }
    std::vector<std::pair<int, int>> slots;
    for (int v = 0; v < nodes; ++v) {
        for (int u = 0; u < v; ++u) {
            slots.emplace_back(u, v);
        }
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> perm(static_cast<size_t>(nodes));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Every DAG has a topological labelling, so edges u < v cover all classes.
    std::set<uint64_t> seen;
    std::vector<Dag> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << slots.size()); ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (size_t s = 0; s < slots.size(); ++s) {
            if (mask >> s & 1) {
                edges.push_back(slots[s]);
            }
        }
        uint64_t canon = UINT64_MAX;
        for (const auto &p : perms) {
            canon = std::min(canon, adjacency_code(nodes, edges, p));
        }
        if (seen.insert(canon).second) {
            out.push_back(Dag::from_edges(std::vector<int>(static_cast<size_t>(nodes), card), edges));
        }
    }
    return out;
}

TrialReport bp_campaign(const BpCampaignOptions &options) {
    if (options.count < 1 || options.max_nodes < 1 || options.max_card < 1) {
        throw ArgumentError("campaign needs a positive count, node bound and cardinality bound");
    }
    auto start = Clock::now();
    TrialReport report;
    report.kind = "bp";
    report.dag = options.dag ? describe_edges(*options.dag) : "";
    report.trials = options.count;
    for (int c = 0; c < options.count; ++c) {
        const uint64_t case_seed = trial_seed(options.seed, c);
        Rng rng(case_seed);
        Dag dag;
        if (options.dag) {
            dag = *options.dag;
        } else {
            std::uniform_int_distribution<int> size(1, options.max_nodes);
            dag = random_polytree(size(rng), options.max_card, rng);
        }
        QBNet net = random_qbnet(dag, rng);
        std::bernoulli_distribution observe(options.evidence_rate);
        std::map<int, int> observed;
        for (int x = 0; x < dag.size(); ++x) {
            if (observe(rng)) {
                observed[x] = std::uniform_int_distribution<int>(0, dag.card(x) - 1)(rng);
            }
        }
        Evidence evidence(observed);
        double worst = 0;
        auto beliefs = propagate_polytree(net, evidence);
        for (const auto &bel : beliefs) {
            if (evidence.observed(bel.node)) {
                continue;
            }
            auto oracle = posterior_oracle(net, Multinode{bel.node}, evidence);
            for (size_t k = 0; k < bel.probabilities.size(); ++k) {
                worst = std::max(worst, std::abs(bel.probabilities[k] - oracle.data()[k]));
            }
        }
        if (report.witness_trial < 0 || worst > report.max_value) {
            report.max_value = worst;
            report.witness_trial = c;
            report.witness_seed = case_seed;
        }
    }
    report.pass = report.max_value <= kBpThreshold;
    report.seconds = seconds_since(start);
    return report;
}

}  // namespace qbn
