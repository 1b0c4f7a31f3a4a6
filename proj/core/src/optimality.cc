// Copyright 2026 The DRPP Authors
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

#include "drpp/optimality.h"

#include <algorithm>
#include <cmath>

#include "drpp/errors.h"
#include "drpp/thermal.h"

namespace drpp {

namespace {

VertexSet all_vertices(size_t n) {
    return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

bool on_alice(VertexSet alice, size_t v) {
    return (alice >> v) & 1;
}

}  // namespace

Reconstruction plan_reconstruction(const Graph &g, VertexSet alice, VertexSet fused) {
    const size_t n = g.num_vertices();
    if (n > kMaxReconstructionVertices) {
        throw CapacityError("reconstruction check supports at most " + std::to_string(kMaxReconstructionVertices) +
                            " vertices");
    }
    const VertexSet everyone = all_vertices(n);
    if ((alice & ~everyone) || (alice & everyone) == 0 || (alice & everyone) == everyone) {
        throw ParameterError("bipartition must give both parties at least one vertex of the graph");
    }

    Reconstruction r;
    r.target = g;
    r.alice = alice;
    std::vector<std::vector<size_t>> halves(n);
    for (const auto &e : g.edges()) {
        if (on_alice(alice, e.u) == on_alice(alice, e.v)) {
            continue;
        }
        r.cross_edges.push_back(e);
        size_t qu = r.num_qubits++;
        size_t qv = r.num_qubits++;
        halves[e.u].push_back(qu);
        halves[e.v].push_back(qv);
        size_t qa = on_alice(alice, e.u) ? qu : qv;
        size_t qb = on_alice(alice, e.u) ? qv : qu;
        r.alice_qubits |= bit(qa);
        r.circuit.push_back({ReconstructionStep::Kind::PreparePair, qa, qb});
    }
    r.pair_budget = r.cross_edges.size();

    r.vertex_qubit.assign(n, 0);
    for (size_t v = 0; v < n; v++) {
        const bool local_root = halves[v].empty() || ((fused >> v) & 1);
        if (local_root && !halves[v].empty()) {
            r.fused |= bit(v);
        }
        size_t kept;
        size_t first_fused = 0;
        if (local_root) {
            kept = r.num_qubits++;
            if (on_alice(alice, v)) {
                r.alice_qubits |= bit(kept);
            }
            r.circuit.push_back({ReconstructionStep::Kind::PrepareLocal, kept, kept});
        } else {
            kept = halves[v][0];
            first_fused = 1;
        }
        for (size_t j = first_fused; j < halves[v].size(); j++) {
            r.circuit.push_back({ReconstructionStep::Kind::Fuse, kept, halves[v][j]});
        }
        r.vertex_qubit[v] = kept;
    }
    for (const auto &e : g.edges()) {
        if (on_alice(alice, e.u) == on_alice(alice, e.v)) {
            r.circuit.push_back({ReconstructionStep::Kind::LocalCZ, r.vertex_qubit[e.u], r.vertex_qubit[e.v]});
        }
    }
    return r;
}

std::string reconstruction_defect(const Reconstruction &r) {
    auto side = [&](size_t q) { return (r.alice_qubits >> q) & 1; };
    size_t pairs = 0;
    for (const auto &step : r.circuit) {
        switch (step.kind) {
            case ReconstructionStep::Kind::PreparePair:
                pairs++;
                if (!side(step.q0) || side(step.q1)) {
                    return "pair copy does not contribute one qubit to each side";
                }
                break;
            case ReconstructionStep::Kind::Fuse:
            case ReconstructionStep::Kind::LocalCZ:
                if (side(step.q0) != side(step.q1)) {
                    return "non-local two-qubit gate";
                }
                break;
            case ReconstructionStep::Kind::PrepareLocal:
                break;
        }
    }
    if (pairs != r.pair_budget) {
        return "pair budget mismatch";
    }
    return "";
}

namespace {

/// Live-register schedule shared by the simulation and its capacity check: vertices
/// are processed in index order, a pair copy is brought in when its first endpoint
/// is reached, and every fused half is measured out straight away.
struct Schedule {
    struct Vertex {
        std::vector<size_t> new_pairs;  // indices into Reconstruction::circuit
        bool local = false;
        std::vector<size_t> fused_halves;
    };
    std::vector<Vertex> vertices;
    size_t peak = 0;
};

Schedule make_schedule(const Reconstruction &r) {
    const size_t n = r.target.num_vertices();
    std::vector<size_t> owner(r.num_qubits, 0);
    for (size_t v = 0; v < n; v++) {
        owner[r.vertex_qubit[v]] = v;
    }
    for (const auto &step : r.circuit) {
        if (step.kind == ReconstructionStep::Kind::Fuse) {
            owner[step.q1] = owner[step.q0];
        }
    }
    Schedule s;
    s.vertices.resize(n);
    for (size_t k = 0; k < r.circuit.size(); k++) {
        const auto &step = r.circuit[k];
        if (step.kind == ReconstructionStep::Kind::PreparePair) {
            size_t first = std::min(owner[step.q0], owner[step.q1]);
            s.vertices[first].new_pairs.push_back(k);
        } else if (step.kind == ReconstructionStep::Kind::PrepareLocal) {
            s.vertices[owner[step.q0]].local = true;
        } else if (step.kind == ReconstructionStep::Kind::Fuse) {
            s.vertices[owner[step.q0]].fused_halves.push_back(step.q1);
        }
    }
    size_t live = 0;
    for (const auto &v : s.vertices) {
        live += 2 * v.new_pairs.size() + (v.local ? 1 : 0);
        s.peak = std::max(s.peak, live);
        live -= v.fused_halves.size();
    }
    return s;
}

dense::DensityMatrix permute_density(const dense::DensityMatrix &rho, const std::vector<size_t> &new_index) {
    const size_t n = rho.num_qubits();
    const size_t dim = size_t{1} << n;
    std::vector<Eigen::Index> map(dim);
    for (size_t i = 0; i < dim; i++) {
        size_t j = 0;
        for (size_t q = 0; q < n; q++) {
            j |= ((i >> q) & 1) << new_index[q];
        }
        map[i] = static_cast<Eigen::Index>(j);
    }
    dense::Matrix out(rho.matrix().rows(), rho.matrix().cols());
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            out(map[r], map[c]) = rho.matrix()(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return dense::DensityMatrix(n, std::move(out));
}

}  // namespace

size_t peak_live_qubits(const Reconstruction &r) {
    return make_schedule(r).peak;
}

dense::DensityMatrix build_reconstruction(const Graph &g, VertexSet alice, double p, VertexSet fused) {
    if (!(p >= 0 && p <= 0.5)) {
        throw ParameterError("error probability must lie in [0, 1/2]");
    }
    const Reconstruction r = plan_reconstruction(g, alice, fused);
    const Schedule schedule = make_schedule(r);
    if (schedule.peak > kMaxLiveReconstructionQubits) {
        throw CapacityError("reconstruction needs " + std::to_string(schedule.peak) +
                            " simultaneous qubits; limit is " + std::to_string(kMaxLiveReconstructionQubits));
    }

    // Ideal structure of the whole circuit, used to work out fusion byproducts.
    Graph live(r.num_qubits);
    for (const auto &step : r.circuit) {
        if (step.kind == ReconstructionStep::Kind::PreparePair) {
            live.add_edge(step.q0, step.q1);
        }
    }
    const dense::DensityMatrix noisy_pair = dense::z_noise_state(path_graph(2), p);
    const dense::DensityMatrix noisy_plus = dense::z_noise_state(empty_graph(1), p);

    dense::DensityMatrix rho;
    std::vector<size_t> label;  // register position -> circuit qubit
    auto append = [&](const dense::DensityMatrix &part, std::initializer_list<size_t> qubits) {
        rho = label.empty() ? part : dense::tensor(rho, part);
        label.insert(label.end(), qubits);
    };
    auto position = [&](size_t q) {
        return static_cast<size_t>(std::find(label.begin(), label.end(), q) - label.begin());
    };

    for (size_t v = 0; v < g.num_vertices(); v++) {
        const auto &sv = schedule.vertices[v];
        for (size_t k : sv.new_pairs) {
            append(noisy_pair, {r.circuit[k].q0, r.circuit[k].q1});
        }
        if (sv.local) {
            append(noisy_plus, {r.vertex_qubit[v]});
        }
        const size_t a = r.vertex_qubit[v];
        for (size_t b : sv.fused_halves) {
            dense::apply_gate(rho, dense::Gate::H, position(b));
            dense::apply_gate(rho, dense::Gate::CZ, position(a), position(b));
            // Byproduct Z^m on N(b), plus Z on a when a and b were adjacent; the
            // owner undoes it after reading m, so both branches are summed corrected.
            const VertexSet nb = live.neighbors(b);
            const VertexSet always = (nb & bit(a)) ? bit(a) : 0;
            dense::Matrix sum;
            dense::DensityMatrix branch;
            for (int m = 0; m < 2; m++) {
                auto meas = dense::measure_and_remove(rho, position(b), dense::Basis::X, m);
                if (meas.probability == 0) {
                    continue;
                }
                std::vector<size_t> after = label;
                after.erase(after.begin() + static_cast<std::ptrdiff_t>(position(b)));
                VertexSet mask = 0;
                for (VertexSet c = always ^ (m ? nb : 0); c; c &= c - 1) {
                    auto q = static_cast<size_t>(std::countr_zero(c));
                    mask |= bit(static_cast<size_t>(std::find(after.begin(), after.end(), q) - after.begin()));
                }
                dense::apply_z_mask(meas.post_state, mask);
                if (sum.size() == 0) {
                    sum = meas.probability * meas.post_state.matrix();
                } else {
                    sum += meas.probability * meas.post_state.matrix();
                }
                branch = std::move(meas.post_state);
            }
            label.erase(label.begin() + static_cast<std::ptrdiff_t>(position(b)));
            rho = dense::DensityMatrix(branch.num_qubits(), std::move(sum));
            for (VertexSet rest = nb & ~bit(a); rest; rest &= rest - 1) {
                live.toggle_edge(a, static_cast<size_t>(std::countr_zero(rest)));
            }
            for (VertexSet rest = nb; rest; rest &= rest - 1) {
                live.remove_edge(b, static_cast<size_t>(std::countr_zero(rest)));
            }
        }
    }
    for (const auto &step : r.circuit) {
        if (step.kind == ReconstructionStep::Kind::LocalCZ) {
            dense::apply_gate(rho, dense::Gate::CZ, position(step.q0), position(step.q1));
        }
    }

    std::vector<size_t> vertex_of_qubit(r.num_qubits, 0);
    for (size_t v = 0; v < g.num_vertices(); v++) {
        vertex_of_qubit[r.vertex_qubit[v]] = v;
    }
    std::vector<size_t> new_index;
    for (size_t q : label) {
        new_index.push_back(vertex_of_qubit[q]);
    }
    return permute_density(rho, new_index);
}

ReconstructionCheck verify_reconstruction(const Graph &g, VertexSet alice, double p, double tol, VertexSet fused) {
    auto candidate = build_reconstruction(g, alice, p, fused);
    auto reference = dense::z_noise_state(g, p);
    double d = dense::trace_distance(candidate, reference);
    return {d <= tol, d};
}

WiringSearch search_wirings(const Graph &g, VertexSet alice, double p, double tol) {
    const Reconstruction base = plan_reconstruction(g, alice, 0);
    VertexSet endpoints = 0;
    for (const auto &e : base.cross_edges) {
        endpoints |= bit(e.u) | bit(e.v);
    }
    WiringSearch search{false, alice, 0, INFINITY, 0};
    // Enumerate subsets of the endpoints, starting with the empty set (direct wiring).
    VertexSet fused = 0;
    while (true) {
        Reconstruction r = plan_reconstruction(g, alice, fused);
        if (peak_live_qubits(r) <= kMaxLiveReconstructionQubits) {
            auto check = verify_reconstruction(g, alice, p, tol, fused);
            search.candidates++;
            if (check.trace_distance < search.best_distance) {
                search.best_distance = check.trace_distance;
                search.fused = fused;
            }
            if (check.valid) {
                search.found = true;
                search.fused = fused;
                return search;
            }
        }
        if (fused == endpoints) {
            break;
        }
        fused = (fused - endpoints) & endpoints;
    }
    return search;
}

bool ProofReport::all_edges() const {
    for (const auto &e : edges) {
        if (!e.applies) {
            return false;
        }
    }
    return true;
}

ProofReport proof_applies(const Graph &g, double p, double tol) {
    const size_t n = g.num_vertices();
    if (n > kMaxReconstructionVertices) {
        throw CapacityError("proof search supports at most " + std::to_string(kMaxReconstructionVertices) +
                            " vertices");
    }
    ProofReport report;
    for (const auto &edge : g.edges()) {
        EdgeVerdict verdict{edge, false, WiringSearch{false, 0, 0, INFINITY, 0}};
        const VertexSet others = all_vertices(n) & ~(bit(edge.u) | bit(edge.v));
        // Alice holds u and never v; enumerate her share of the remaining vertices.
        VertexSet extra = 0;
        while (true) {
            auto search = search_wirings(g, bit(edge.u) | extra, p, tol);
            verdict.search.candidates += search.candidates;
            if (search.best_distance < verdict.search.best_distance) {
                verdict.search.best_distance = search.best_distance;
                verdict.search.alice = search.alice;
                verdict.search.fused = search.fused;
            }
            if (search.found) {
                verdict.applies = true;
                verdict.search.found = true;
                verdict.search.alice = search.alice;
                verdict.search.fused = search.fused;
                break;
            }
            if (extra == others) {
                break;
            }
            extra = (extra - others) & others;
        }
        report.edges.push_back(verdict);
    }
    return report;
}

std::optional<double> implied_threshold(const ProofReport &report) {
    if (report.edges.empty() || !report.all_edges()) {
        return std::nullopt;
    }
    return kCriticalErrorProb;
}

}  // namespace drpp
