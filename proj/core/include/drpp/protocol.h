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

#ifndef DRPP_PROTOCOL_H
#define DRPP_PROTOCOL_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drpp/bell_diagonal.h"
#include "drpp/graph.h"
#include "drpp/pattern.h"

namespace drpp {

// ---------------------------------------------------------------------------
// Divide: extraction planning.

struct ExtractedEdge {
    Edge edge;
    /// Qubits adjacent to the pair, (N(u) | N(v)) minus {u, v}; measuring them in Z isolates the pair.
    VertexSet z_measure_set;
};

/// Partition of the edges into rounds. Each round is an induced matching: no
/// vertex of one extracted pair lies in the closed neighbourhood of another, so
/// a single copy of the noisy state yields every pair of the round at once.
struct ExtractionPlan {
    std::vector<std::vector<ExtractedEdge>> rounds;
    /// round_of[k] is the round of the k-th edge of Graph::edges().
    std::vector<size_t> round_of;

    size_t num_rounds() const {
        return rounds.size();
    }
};

/// Greedy first-fit: repeatedly sweep the remaining edges in lexicographic order,
/// adding each one compatible with the round so far.
ExtractionPlan plan_extraction(const Graph &g);

/// Empty string if the plan covers every edge exactly once with valid rounds, else a description of the defect.
std::string plan_defect(const Graph &g, const ExtractionPlan &plan);

/// Analytic geometric factor: 3 for paths, 3 d^2 for d-dimensional clusters, N - 1 for N-vertex GHZ (star).
/// nullopt for families without a closed form.
std::optional<size_t> n_geo_formula(const GraphFamily &family);

// ---------------------------------------------------------------------------
// Rates.

struct RateReport {
    size_t n_geo_plan;
    std::optional<size_t> n_geo_formula;
    double r2;
    double r_psi_lower;  // r2 / n_geo_plan
    double r_psi_upper;  // r2
    std::optional<double> r_psi_lower_formula;  // r2 / n_geo_formula
};

/// R2 >= R_psi >= R2 / N_geo with R2 from the pair-rate estimator on Z-noise pairs at p.
RateReport rate_report(const Graph &g, double p, const std::optional<GraphFamily> &family_hint = std::nullopt,
                       PairRateEstimator estimator = PairRateEstimator::RecurrenceThenHashing);

// ---------------------------------------------------------------------------
// Rebuild.

/// Pair states joined into one graph state by fusing, at every vertex, the pair
/// halves it holds. vertex_qubit[v] is the qubit of `state` standing for v.
struct RebuiltState {
    PatternState state;
    std::vector<size_t> vertex_qubit;
};

/// Rebuilds the graph from one two-qubit pattern per edge (indexed like Graph::edges()).
/// Edges are appended in order and each new half is merged into its vertex's
/// kept qubit immediately, so at most n + 2 qubits are live. Isolated vertices get a fresh |+>.
RebuiltState rebuild(const Graph &g, const std::vector<PairClass> &pair_errors, Rng &rng);

// ---------------------------------------------------------------------------
// Full protocol Monte Carlo.

enum class ProtocolStatus { Success, NotPurifiable, NotConverged };

std::string to_string(ProtocolStatus status);

struct ProtocolConfig {
    double p = 0;
    size_t shots = 10000;
    double pair_target_fidelity = 0.999;
    uint64_t seed = 0;
    size_t workers = 1;
    size_t max_rounds = kDefaultMaxRounds;
};

struct ConfidenceInterval {
    double low;
    double high;
};

/// Wilson score interval at 95%.
ConfidenceInterval wilson_interval(size_t successes, size_t trials);

struct ProtocolResult {
    ProtocolStatus status;
    std::string diagnostic;
    std::string graph;
    double p;
    size_t shots;
    size_t ideal_shots;
    double fidelity;  // fraction of shots with zero residual pattern
    ConfidenceInterval ci95;
    size_t raw_ideal_pairs;  // extracted (unpurified) pairs with no error, summed over shots
    size_t raw_pairs;
    size_t recurrence_rounds;  // per purified pair
    double pair_fidelity;      // after purification
    double copies_consumed;    // expected copies of the noisy state per output state
    size_t n_geo_plan;
    std::optional<size_t> n_geo_formula;
    double r2;
    double r_psi_lower;
    double r_psi_upper;
};

/// Divide (Z-measure per plan round), purify (recurrence channel to the target),
/// rebuild (merge_local at every vertex). Deterministic in (seed, shot index);
/// the worker count only changes wall time.
ProtocolResult run_drpp(const Graph &g, const ProtocolConfig &config,
                        const std::optional<GraphFamily> &family_hint = std::nullopt);

struct ScanRow {
    double p;
    std::optional<double> temperature;
    bool purifiable;
    ProtocolResult result;
};

/// run_drpp at every grid point (p must be sorted ascending within [0, 1/2]).
std::vector<ScanRow> threshold_scan(const Graph &g, const std::vector<double> &p_grid, const ProtocolConfig &base);

/// The same scan parameterised by temperature at coupling B.
std::vector<ScanRow> threshold_scan_temperature(const Graph &g, double coupling,
                                                const std::vector<double> &temperatures,
                                                const ProtocolConfig &base);

/// Adjacent grid points (last purifiable, first non-purifiable) if the verdict flips exactly once.
std::optional<std::pair<double, double>> verdict_flip(const std::vector<ScanRow> &rows);

}  // namespace drpp

#endif  // DRPP_PROTOCOL_H
