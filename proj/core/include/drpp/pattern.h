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

#ifndef DRPP_PATTERN_H
#define DRPP_PATTERN_H

#include <optional>
#include <span>
#include <vector>

#include "drpp/dense.h"
#include "drpp/graph.h"
#include "drpp/rng.h"

namespace drpp {

/// One Monte Carlo trajectory of a noisy graph state.
///
/// The physical state is Z^(z_errors ^ frame) |G>. `frame` holds Z byproducts whose
/// values are known from measurement outcomes (undone classically at the end);
/// `z_errors` is the unknown noise that survives those corrections. Every
/// operation here maps Z-patterns to Z-patterns, which is what makes the
/// representation exact for the divide/rebuild protocol.
class PatternState {
   public:
    PatternState() = default;
    explicit PatternState(Graph graph, VertexSet z_errors = 0, VertexSet frame = 0);

    const Graph &graph() const {
        return graph_;
    }
    size_t num_qubits() const {
        return graph_.num_vertices();
    }
    VertexSet z_errors() const {
        return z_errors_;
    }
    VertexSet frame() const {
        return frame_;
    }
    /// Pattern of the uncorrected physical state.
    VertexSet physical_pattern() const {
        return z_errors_ ^ frame_;
    }
    /// True iff the residual noise is zero once the frame is applied.
    bool is_ideal() const {
        return z_errors_ == 0;
    }

    bool operator==(const PatternState &) const = default;

   private:
    Graph graph_;
    VertexSet z_errors_ = 0;
    VertexSet frame_ = 0;
};

/// Independent Bernoulli(p) Z errors on every vertex, empty frame. Requires 0 <= p <= 1/2.
PatternState sample_thermal(const Graph &g, double p, Rng &rng);

/// CZ(u, v): toggles the edge, leaves the patterns untouched.
PatternState apply_cz(const PatternState &state, size_t u, size_t v);

struct ZMeasurement {
    int outcome;  // 0 <=> eigenvalue +1
    PatternState state;
    std::vector<std::optional<size_t>> relabel;
};

/// Z-measurement of v with a forced outcome; v is removed and Z^outcome lands on N(v) in the frame.
ZMeasurement measure_z(const PatternState &state, size_t v, int outcome);
/// Z-measurement of v with a uniformly random outcome.
ZMeasurement measure_z(const PatternState &state, size_t v, Rng &rng);

struct MergeResult {
    size_t kept_qubit;  // index of party_qubits[0] in the returned state
    PatternState state;
    std::vector<int> outcomes;
    std::vector<std::optional<size_t>> relabel;  // original index -> index in `state`
};

/// Rebuild step at one party. party_qubits[0] is kept; each further qubit b is
/// fused into it (Hadamard on b, CZ(kept, b), X-measurement of b), so the kept
/// qubit inherits b's neighbours and b's Z errors. `outcomes` has one entry per
/// measured qubit.
MergeResult merge_local(const PatternState &state, std::span<const size_t> party_qubits,
                        std::span<const int> outcomes);
MergeResult merge_local(const PatternState &state, std::span<const size_t> party_qubits, Rng &rng);

bool is_ideal(const PatternState &state);

/// Physical state vector Z^(z_errors ^ frame)|G>; requires n <= 12.
dense::StateVector to_dense(const PatternState &state);

}  // namespace drpp

#endif  // DRPP_PATTERN_H
