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

#include "drpp/pattern.h"

#include <string>

#include "drpp/errors.h"

namespace drpp {

namespace {

VertexSet restrict_to(VertexSet pattern, size_t n) {
    return n >= 64 ? pattern : pattern & ((VertexSet{1} << n) - 1);
}

std::vector<std::optional<size_t>> identity_relabel(size_t n) {
    std::vector<std::optional<size_t>> out(n);
    for (size_t i = 0; i < n; i++) {
        out[i] = i;
    }
    return out;
}

}  // namespace

PatternState::PatternState(Graph graph, VertexSet z_errors, VertexSet frame)
    : graph_(std::move(graph)), z_errors_(z_errors), frame_(frame) {
    if (restrict_to(z_errors_, graph_.num_vertices()) != z_errors_ ||
        restrict_to(frame_, graph_.num_vertices()) != frame_) {
        throw ParameterError("error pattern has bits beyond the graph's " + std::to_string(graph_.num_vertices()) +
                             " vertices");
    }
}

PatternState sample_thermal(const Graph &g, double p, Rng &rng) {
    if (!(p >= 0 && p <= 0.5)) {
        throw ParameterError("thermal error probability must lie in [0, 1/2], got " + std::to_string(p));
    }
    VertexSet errors = 0;
    if (p > 0) {
        std::bernoulli_distribution flip(p);
        for (size_t v = 0; v < g.num_vertices(); v++) {
            if (flip(rng)) {
                errors |= bit(v);
            }
        }
    }
    return PatternState(g, errors, 0);
}

PatternState apply_cz(const PatternState &state, size_t u, size_t v) {
    if (u == v) {
        throw ParameterError("CZ requires two distinct qubits");
    }
    return PatternState(toggle_edge(state.graph(), u, v), state.z_errors(), state.frame());
}

ZMeasurement measure_z(const PatternState &state, size_t v, int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw ParameterError("measurement outcome must be 0 or 1");
    }
    auto deletion = delete_vertex(state.graph(), v);
    VertexSet frame = state.frame() ^ (outcome ? state.graph().neighbors(v) : 0);
    return ZMeasurement{
        outcome,
        PatternState(std::move(deletion.graph), remap(state.z_errors(), deletion.relabel),
                     remap(frame, deletion.relabel)),
        std::move(deletion.relabel),
    };
}

ZMeasurement measure_z(const PatternState &state, size_t v, Rng &rng) {
    std::bernoulli_distribution coin(0.5);
    return measure_z(state, v, coin(rng) ? 1 : 0);
}

MergeResult merge_local(const PatternState &state, std::span<const size_t> party_qubits,
                        std::span<const int> outcomes) {
    if (party_qubits.empty()) {
        throw ParameterError("merge_local needs at least one party qubit");
    }
    if (outcomes.size() != party_qubits.size() - 1) {
        throw ParameterError("merge_local needs one outcome per measured qubit");
    }
    const size_t n = state.num_qubits();
    VertexSet seen = 0;
    for (auto q : party_qubits) {
        if (q >= n) {
            throw ParameterError("party qubit " + std::to_string(q) + " out of range");
        }
        if (seen & bit(q)) {
            throw ParameterError("party qubits must be pairwise distinct");
        }
        seen |= bit(q);
    }

    Graph g = state.graph();
    VertexSet z = state.z_errors();
    VertexSet frame = state.frame();
    auto relabel = identity_relabel(n);

    for (size_t j = 1; j < party_qubits.size(); j++) {
        const size_t a = *relabel[party_qubits[0]];
        const size_t b = *relabel[party_qubits[j]];
        const int m = outcomes[j - 1];
        if (m != 0 && m != 1) {
            throw ParameterError("measurement outcome must be 0 or 1");
        }
        const VertexSet nb = g.neighbors(b);

        // CNOT(a -> b) followed by Z-measurement of b:
        // a picks up b's neighbourhood, Z on b moves onto a, and the outcome
        // leaves Z^m on N(b) (plus a fixed Z on a when a and b were adjacent).
        for (VertexSet rest = nb & ~bit(a); rest; rest &= rest - 1) {
            g.toggle_edge(a, static_cast<size_t>(std::countr_zero(rest)));
        }
        if ((z >> b) & 1) {
            z ^= bit(a);
        }
        if ((frame >> b) & 1) {
            frame ^= bit(a);
        }
        if (m) {
            frame ^= nb;
        }
        if (nb & bit(a)) {
            frame ^= bit(a);
        }

        auto deletion = delete_vertex(g, b);
        g = std::move(deletion.graph);
        z = remap(z, deletion.relabel);
        frame = remap(frame, deletion.relabel);
        for (auto &r : relabel) {
            if (r) {
                r = deletion.relabel[*r];
            }
        }
    }

    return MergeResult{
        *relabel[party_qubits[0]],
        PatternState(std::move(g), z, frame),
        std::vector<int>(outcomes.begin(), outcomes.end()),
        std::move(relabel),
    };
}

MergeResult merge_local(const PatternState &state, std::span<const size_t> party_qubits, Rng &rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<int> outcomes;
    for (size_t j = 1; j < party_qubits.size(); j++) {
        outcomes.push_back(coin(rng) ? 1 : 0);
    }
    return merge_local(state, party_qubits, outcomes);
}

bool is_ideal(const PatternState &state) {
    return state.is_ideal();
}

dense::StateVector to_dense(const PatternState &state) {
    return dense::graph_basis_state(state.graph(), state.physical_pattern());
}

}  // namespace drpp
