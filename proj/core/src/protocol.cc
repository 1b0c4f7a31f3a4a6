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

#include "drpp/protocol.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "drpp/errors.h"
#include "drpp/rng.h"
#include "drpp/thermal.h"

namespace drpp {

namespace {

VertexSet closed_neighborhood(const Graph &g, const Edge &e) {
    return g.neighbors(e.u) | g.neighbors(e.v) | bit(e.u) | bit(e.v);
}

void check_error_prob(double p) {
    if (!(p >= 0 && p <= 0.5)) {
        throw ParameterError("error probability p must lie in [0, 1/2], got " + std::to_string(p));
    }
}

}  // namespace

ExtractionPlan plan_extraction(const Graph &g) {
    const auto edges = g.edges();
    ExtractionPlan plan;
    plan.round_of.assign(edges.size(), 0);
    std::vector<bool> assigned(edges.size(), false);
    size_t remaining = edges.size();
    while (remaining > 0) {
        std::vector<ExtractedEdge> round;
        VertexSet blocked = 0;
        for (size_t k = 0; k < edges.size(); k++) {
            if (assigned[k]) {
                continue;
            }
            const Edge &e = edges[k];
            if (blocked & (bit(e.u) | bit(e.v))) {
                continue;
            }
            VertexSet closed = closed_neighborhood(g, e);
            round.push_back({e, closed & ~(bit(e.u) | bit(e.v))});
            blocked |= closed;
            assigned[k] = true;
            plan.round_of[k] = plan.rounds.size();
            remaining--;
        }
        plan.rounds.push_back(std::move(round));
    }
    return plan;
}

std::string plan_defect(const Graph &g, const ExtractionPlan &plan) {
    const auto edges = g.edges();
    if (plan.round_of.size() != edges.size()) {
        return "coverage map size differs from edge count";
    }
    std::vector<size_t> seen(edges.size(), 0);
    for (size_t r = 0; r < plan.rounds.size(); r++) {
        const auto &round = plan.rounds[r];
        for (size_t i = 0; i < round.size(); i++) {
            const auto &x = round[i];
            auto it = std::find(edges.begin(), edges.end(), x.edge);
            if (it == edges.end()) {
                return "round " + std::to_string(r) + " extracts a non-edge";
            }
            auto k = static_cast<size_t>(it - edges.begin());
            seen[k]++;
            if (plan.round_of[k] != r) {
                return "coverage map disagrees with round contents";
            }
            VertexSet pair = bit(x.edge.u) | bit(x.edge.v);
            if (x.z_measure_set != (closed_neighborhood(g, x.edge) & ~pair)) {
                return "wrong Z-measurement set";
            }
            for (size_t j = i + 1; j < round.size(); j++) {
                const auto &y = round[j];
                VertexSet other = bit(y.edge.u) | bit(y.edge.v);
                if (closed_neighborhood(g, x.edge) & other) {
                    return "round " + std::to_string(r) + " is not an induced matching";
                }
            }
        }
    }
    for (size_t k = 0; k < edges.size(); k++) {
        if (seen[k] != 1) {
            return "edge " + std::to_string(edges[k].u) + "-" + std::to_string(edges[k].v) + " covered " +
                   std::to_string(seen[k]) + " times";
        }
    }
    return "";
}

std::optional<size_t> n_geo_formula(const GraphFamily &family) {
    switch (family.kind) {
        case FamilyKind::Path:
            return 3;
        case FamilyKind::Grid: {
            size_t d = family.params.size();
            return 3 * d * d;
        }
        case FamilyKind::Star:
            return family.params.at(0) - 1;
        default:
            return std::nullopt;
    }
}

RateReport rate_report(const Graph &g, double p, const std::optional<GraphFamily> &family_hint,
                       PairRateEstimator estimator) {
    check_error_prob(p);
    RateReport report{};
    report.n_geo_plan = plan_extraction(g).num_rounds();
    report.r2 = pair_rate(BellDiagonal::from_z_noise(p), estimator);
    report.r_psi_upper = report.r2;
    report.r_psi_lower = report.r2 / static_cast<double>(std::max<size_t>(1, report.n_geo_plan));
    if (family_hint) {
        report.n_geo_formula = n_geo_formula(*family_hint);
        if (report.n_geo_formula) {
            report.r_psi_lower_formula = report.r2 / static_cast<double>(std::max<size_t>(1, *report.n_geo_formula));
        }
    }
    return report;
}

RebuiltState rebuild(const Graph &g, const std::vector<PairClass> &pair_errors, Rng &rng) {
    const auto edges = g.edges();
    if (pair_errors.size() != edges.size()) {
        throw ParameterError("rebuild needs one pair state per edge");
    }
    const size_t n = g.num_vertices();
    PatternState state{Graph(0)};
    std::vector<std::optional<size_t>> kept(n);

    auto shift = [](std::optional<size_t> &index, const std::vector<std::optional<size_t>> &relabel) {
        if (index) {
            index = relabel[*index];
        }
    };

    for (size_t k = 0; k < edges.size(); k++) {
        Graph grown = state.graph();
        const size_t x = grown.add_vertices(2);
        grown.add_edge(x, x + 1);
        const auto c = static_cast<size_t>(pair_errors[k]);
        VertexSet z = state.z_errors() | ((c & 1) ? bit(x) : 0) | ((c & 2) ? bit(x + 1) : 0);
        state = PatternState(std::move(grown), z, state.frame());

        std::optional<size_t> halves[2] = {x, x + 1};
        const size_t ends[2] = {edges[k].u, edges[k].v};
        for (size_t side = 0; side < 2; side++) {
            auto &home = kept[ends[side]];
            if (!home) {
                home = halves[side];
                continue;
            }
            const size_t party[2] = {*home, *halves[side]};
            auto merged = merge_local(state, party, rng);
            state = std::move(merged.state);
            for (auto &kq : kept) {
                shift(kq, merged.relabel);
            }
            shift(halves[1 - side], merged.relabel);
        }
    }

    for (size_t v = 0; v < n; v++) {
        if (!kept[v]) {
            Graph grown = state.graph();
            kept[v] = grown.add_vertices(1);
            state = PatternState(std::move(grown), state.z_errors(), state.frame());
        }
    }

    RebuiltState out{std::move(state), std::vector<size_t>(n)};
    for (size_t v = 0; v < n; v++) {
        out.vertex_qubit[v] = *kept[v];
    }
    return out;
}

std::string to_string(ProtocolStatus status) {
    switch (status) {
        case ProtocolStatus::Success:
            return "success";
        case ProtocolStatus::NotPurifiable:
            return "not_purifiable";
        case ProtocolStatus::NotConverged:
            return "not_converged";
    }
    return "unknown";
}

ConfidenceInterval wilson_interval(size_t successes, size_t trials) {
    if (trials == 0) {
        return {0, 1};
    }
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double denom = 1 + z * z / n;
    const double center = (phat + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

struct ShotTally {
    size_t ideal = 0;
    size_t raw_pairs = 0;
    size_t raw_ideal_pairs = 0;
};

PairClass sample_class(const BellDiagonal &bd, Rng &rng) {
    double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double acc = 0;
    for (size_t c = 0; c < 3; c++) {
        acc += bd.probs[c];
        if (u < acc) {
            return static_cast<PairClass>(c);
        }
    }
    return PairClass::ZaZb;
}

/// One copy of the noisy state per round; Z-measure everything outside the round's pairs.
void extract_round(const Graph &g, double p, const std::vector<ExtractedEdge> &round, Rng &rng, ShotTally &tally) {
    PatternState state = sample_thermal(g, p, rng);
    VertexSet keep = 0;
    for (const auto &x : round) {
        keep |= bit(x.edge.u) | bit(x.edge.v);
    }
    // Highest index first, so lower indices are unaffected by relabelling.
    for (size_t v = g.num_vertices(); v-- > 0;) {
        if (!(keep & bit(v))) {
            state = measure_z(state, v, rng).state;
        }
    }
    // Survivors are the pair vertices in ascending order; each pair is now an isolated edge.
    std::vector<size_t> position(g.num_vertices());
    size_t next = 0;
    for (size_t v = 0; v < g.num_vertices(); v++) {
        if (keep & bit(v)) {
            position[v] = next++;
        }
    }
    for (const auto &x : round) {
        size_t a = position[x.edge.u];
        size_t b = position[x.edge.v];
        tally.raw_pairs++;
        if (!((state.z_errors() >> a) & 1) && !((state.z_errors() >> b) & 1)) {
            tally.raw_ideal_pairs++;
        }
    }
}

ShotTally run_shots(const Graph &g, const ExtractionPlan &plan, double p, const BellDiagonal &purified,
                    uint64_t seed, size_t begin, size_t end) {
    ShotTally tally;
    const size_t num_edges = g.num_edges();
    std::vector<PairClass> classes(num_edges);
    for (size_t shot = begin; shot < end; shot++) {
        Rng rng = stream(seed, shot);
        for (const auto &round : plan.rounds) {
            extract_round(g, p, round, rng, tally);
        }
        for (auto &c : classes) {
            c = sample_class(purified, rng);
        }
        if (rebuild(g, classes, rng).state.is_ideal()) {
            tally.ideal++;
        }
    }
    return tally;
}

}  // namespace

ProtocolResult run_drpp(const Graph &g, const ProtocolConfig &config, const std::optional<GraphFamily> &family_hint) {
    check_error_prob(config.p);
    if (config.shots < 1) {
        throw ParameterError("shots must be >= 1");
    }
    if (config.workers < 1) {
        throw ParameterError("workers must be >= 1");
    }
    if (g.num_vertices() + 2 > Graph::kMaxVertices) {
        throw CapacityError("protocol simulation supports at most " + std::to_string(Graph::kMaxVertices - 2) +
                            " vertices");
    }

    const auto plan = plan_extraction(g);
    const auto raw = BellDiagonal::from_z_noise(config.p);
    const auto distilled = distill(raw, config.pair_target_fidelity, config.max_rounds);
    const auto rates = rate_report(g, config.p, family_hint);

    ProtocolResult result{};
    if (distilled.converged) {
        result.status = ProtocolStatus::Success;
    } else if (raw.fidelity() > 0.5) {
        result.status = ProtocolStatus::NotConverged;
    } else {
        result.status = ProtocolStatus::NotPurifiable;
    }
    result.diagnostic = distilled.diagnostic;
    result.graph = family_hint ? family_hint->str() : g.str();
    result.p = config.p;
    result.shots = config.shots;
    result.recurrence_rounds = distilled.rounds_used;
    result.pair_fidelity = distilled.achieved_fidelity;
    result.n_geo_plan = plan.num_rounds();
    result.n_geo_formula = rates.n_geo_formula;
    result.copies_consumed =
        static_cast<double>(std::max<size_t>(1, plan.num_rounds())) * distilled.expected_pairs_consumed;
    result.r2 = rates.r2;
    result.r_psi_lower = rates.r_psi_lower;
    result.r_psi_upper = rates.r_psi_upper;

    const size_t workers = std::min(config.workers, config.shots);
    std::vector<ShotTally> tallies(workers);
    auto chunk = [&](size_t w) {
        size_t begin = config.shots * w / workers;
        size_t end = config.shots * (w + 1) / workers;
        tallies[w] = run_shots(g, plan, config.p, distilled.final_state, config.seed, begin, end);
    };
    if (workers == 1) {
        chunk(0);
    } else {
        std::vector<std::jthread> threads;
        for (size_t w = 0; w < workers; w++) {
            threads.emplace_back(chunk, w);
        }
    }
    for (const auto &t : tallies) {
        result.ideal_shots += t.ideal;
        result.raw_pairs += t.raw_pairs;
        result.raw_ideal_pairs += t.raw_ideal_pairs;
    }
    result.fidelity = static_cast<double>(result.ideal_shots) / static_cast<double>(config.shots);
    result.ci95 = wilson_interval(result.ideal_shots, config.shots);
    return result;
}

std::vector<ScanRow> threshold_scan(const Graph &g, const std::vector<double> &p_grid, const ProtocolConfig &base) {
    if (!std::is_sorted(p_grid.begin(), p_grid.end())) {
        throw ParameterError("p grid must be sorted ascending");
    }
    std::vector<ScanRow> rows;
    for (double p : p_grid) {
        ProtocolConfig config = base;
        config.p = p;
        auto result = run_drpp(g, config);
        rows.push_back({p, std::nullopt, result.status == ProtocolStatus::Success, std::move(result)});
    }
    return rows;
}

std::vector<ScanRow> threshold_scan_temperature(const Graph &g, double coupling,
                                                const std::vector<double> &temperatures,
                                                const ProtocolConfig &base) {
    if (!std::is_sorted(temperatures.begin(), temperatures.end())) {
        throw ParameterError("temperature grid must be sorted ascending");
    }
    std::vector<double> grid;
    for (double t : temperatures) {
        grid.push_back(error_prob(ThermalModel{coupling, t}));
    }
    auto rows = threshold_scan(g, grid, base);
    for (size_t i = 0; i < rows.size(); i++) {
        rows[i].temperature = temperatures[i];
    }
    return rows;
}

std::optional<std::pair<double, double>> verdict_flip(const std::vector<ScanRow> &rows) {
    std::optional<std::pair<double, double>> flip;
    for (size_t i = 0; i + 1 < rows.size(); i++) {
        if (rows[i].purifiable == rows[i + 1].purifiable) {
            continue;
        }
        if (flip || !rows[i].purifiable) {
            return std::nullopt;
        }
        flip = std::make_pair(rows[i].p, rows[i + 1].p);
    }
    return flip;
}

}  // namespace drpp
