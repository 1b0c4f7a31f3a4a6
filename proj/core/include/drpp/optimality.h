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

#ifndef DRPP_OPTIMALITY_H
#define DRPP_OPTIMALITY_H

#include <optional>
#include <string>
#include <vector>

#include "drpp/dense.h"
#include "drpp/graph.h"

namespace drpp {

/// Largest target graph the reconstruction checker simulates densely.
inline constexpr size_t kMaxReconstructionVertices = 8;
/// Largest register held at once while a reconstruction circuit is simulated.
inline constexpr size_t kMaxLiveReconstructionQubits = 10;

struct ReconstructionStep {
    enum class Kind {
        PreparePair,   // noisy two-qubit pair, q0 on Alice's side, q1 on Bob's
        PrepareLocal,  // noisy |+> on q0
        Fuse,          // merge q1 into q0 (H, CZ, X-measurement of q1), byproduct corrected
        LocalCZ,       // CZ(q0, q1)
    };
    Kind kind;
    size_t q0;
    size_t q1;
};

/// Canonical two-party reconstruction of a noisy graph state from noisy pairs.
///
/// Every cross edge {a, b} consumes one pair copy whose halves stand in for a
/// and b. A vertex holding several halves fuses them into one qubit; a vertex
/// listed in `fused` instead starts from a locally prepared noisy qubit and
/// fuses all of its halves into that. The remaining vertices are prepared
/// locally, and CZ gates along the non-cross edges finish the graph.
struct Reconstruction {
    Graph target;
    VertexSet alice = 0;
    VertexSet fused = 0;
    std::vector<Edge> cross_edges;
    size_t pair_budget = 0;
    size_t num_qubits = 0;
    VertexSet alice_qubits = 0;
    std::vector<size_t> vertex_qubit;
    std::vector<ReconstructionStep> circuit;
};

/// Circuit for a bipartition (`alice`; Bob holds the rest, both non-empty).
Reconstruction plan_reconstruction(const Graph &g, VertexSet alice, VertexSet fused = 0);

/// Empty if every pair copy feeds one qubit per side and every gate is local; else a description.
std::string reconstruction_defect(const Reconstruction &r);

/// Largest number of qubits alive at once when build_reconstruction runs the circuit.
size_t peak_live_qubits(const Reconstruction &r);

/// Runs the circuit in the dense simulator with Z-noise p on every input qubit;
/// the result is over the target's vertices in index order. Pair copies enter
/// the register when first needed and fused halves leave it at once, with both
/// measurement branches summed after correction. Requires n <= 8.
dense::DensityMatrix build_reconstruction(const Graph &g, VertexSet alice, double p, VertexSet fused = 0);

struct ReconstructionCheck {
    bool valid;
    double trace_distance;
};

/// Compares build_reconstruction with the Z-noise state of g at p.
ReconstructionCheck verify_reconstruction(const Graph &g, VertexSet alice, double p, double tol = 1e-9,
                                          VertexSet fused = 0);

struct WiringSearch {
    bool found;
    VertexSet alice = 0;
    VertexSet fused = 0;
    double best_distance;
    size_t candidates;
};

/// Tries every `fused` choice (over the cross-edge endpoints) for a fixed bipartition.
WiringSearch search_wirings(const Graph &g, VertexSet alice, double p, double tol = 1e-9);

struct EdgeVerdict {
    Edge edge;
    bool applies;
    WiringSearch search;
};

struct ProofReport {
    std::vector<EdgeVerdict> edges;

    /// Graph-level verdict: every edge admits a verified reconstruction.
    bool all_edges() const;
};

/// For each edge {u, v}, searches bipartitions separating u from v and all wirings
/// of the canonical family. A false verdict means no reconstruction was found in
/// this family; it is not an impossibility proof.
ProofReport proof_applies(const Graph &g, double p = 0.1, double tol = 1e-9);

/// The error probability below which the reduction certifies optimality: 1 - 1/sqrt(2)
/// when every edge is covered, nullopt otherwise.
std::optional<double> implied_threshold(const ProofReport &report);

}  // namespace drpp

#endif  // DRPP_OPTIMALITY_H
