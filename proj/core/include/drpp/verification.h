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

#ifndef DRPP_VERIFICATION_H
#define DRPP_VERIFICATION_H

#include <cstddef>
#include <string>

namespace drpp {

struct OracleSweepOptions {
    /// All labelled graphs on 1..max_vertices vertices are swept for CZ and Z-measurement.
    size_t max_vertices = 5;
    /// merge_local configurations use up to this many qubits (see sweep_pattern_rules).
    size_t max_merge_qubits = 6;
    double tolerance = 1e-9;
    /// Threads sharing the sweep; the report does not depend on it.
    size_t workers = 1;
};

struct OracleSweepReport {
    size_t graphs = 0;
    size_t cz_checks = 0;
    size_t measure_checks = 0;
    size_t merge_checks = 0;
    double max_distance = 0;
    double max_probability_error = 0;
    std::string first_failure;

    bool passed() const {
        return first_failure.empty();
    }
};

/// Exhaustive agreement check between the pattern rules and the dense simulator.
///
/// Every labelled graph up to max_vertices, every error pattern (with and without
/// a frame offset), every CZ pair, every Z-measured vertex and both outcomes. For
/// merge_local: every ordered party list on graphs with <= 4 vertices, kept qubit
/// plus one or two fused qubits on all 5-vertex graphs, and on 6 qubits all
/// pair-matching layouts plus a fixed pseudo-random set of graphs. Each physical
/// post-state must match to `tolerance` in trace distance and every outcome must
/// have probability 1/2.
OracleSweepReport sweep_pattern_rules(const OracleSweepOptions &options = {});

}  // namespace drpp

#endif  // DRPP_VERIFICATION_H
