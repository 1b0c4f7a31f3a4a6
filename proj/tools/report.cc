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

#include "report.h"

#include "drpp/version.h"

namespace drpp::report {

namespace {

Json optional_number(const std::optional<size_t> &v) {
    return v ? Json(*v) : Json(nullptr);
}

Json edge_json(const Edge &e) {
    return Json::array({e.u, e.v});
}

Json vertex_list(VertexSet s) {
    Json out = Json::array();
    for (; s; s &= s - 1) {
        out.push_back(static_cast<size_t>(std::countr_zero(s)));
    }
    return out;
}

}  // namespace

Json to_json(const ProtocolResult &r) {
    Json j;
    j["graph"] = r.graph;
    j["p"] = r.p;
    j["shots"] = r.shots;
    j["status"] = to_string(r.status);
    j["fidelity"] = r.fidelity;
    j["ci95"] = Json::array({r.ci95.low, r.ci95.high});
    j["rounds"] = r.recurrence_rounds;
    j["pair_fidelity"] = r.pair_fidelity;
    j["raw_pair_fidelity"] =
        r.raw_pairs ? static_cast<double>(r.raw_ideal_pairs) / static_cast<double>(r.raw_pairs) : 1.0;
    j["copies_consumed"] = r.copies_consumed;
    j["n_geo_plan"] = r.n_geo_plan;
    j["n_geo_formula"] = optional_number(r.n_geo_formula);
    j["r2"] = r.r2;
    j["r_psi_bounds"] = Json::array({r.r_psi_lower, r.r_psi_upper});
    if (!r.diagnostic.empty()) {
        j["diagnostic"] = r.diagnostic;
    }
    return j;
}

Json to_json(const RateReport &r) {
    Json j;
    j["n_geo_plan"] = r.n_geo_plan;
    j["n_geo_formula"] = optional_number(r.n_geo_formula);
    j["r2"] = r.r2;
    j["r_psi_lower"] = r.r_psi_lower;
    j["r_psi_upper"] = r.r_psi_upper;
    j["r_psi_lower_formula"] = r.r_psi_lower_formula ? Json(*r.r_psi_lower_formula) : Json(nullptr);
    return j;
}

Json to_json(const Graph &g, const ExtractionPlan &plan) {
    Json rounds = Json::array();
    for (const auto &round : plan.rounds) {
        Json items = Json::array();
        for (const auto &x : round) {
            items.push_back({{"edge", edge_json(x.edge)}, {"z_measure", vertex_list(x.z_measure_set)}});
        }
        rounds.push_back(items);
    }
    Json j;
    j["vertices"] = g.num_vertices();
    j["edges"] = g.num_edges();
    j["n_geo_plan"] = plan.num_rounds();
    j["rounds"] = rounds;
    return j;
}

Json to_json(const ScanRow &row) {
    Json j;
    j["p"] = row.p;
    j["T"] = row.temperature ? Json(*row.temperature) : Json(nullptr);
    j["purifiable"] = row.purifiable;
    j["result"] = to_json(row.result);
    return j;
}

Json to_json(const ProofReport &report) {
    Json edges = Json::array();
    for (const auto &e : report.edges) {
        Json item;
        item["edge"] = edge_json(e.edge);
        item["applies"] = e.applies;
        item["alice"] = vertex_list(e.search.alice);
        item["fused"] = vertex_list(e.search.fused);
        item["best_trace_distance"] = e.search.best_distance;
        item["candidates"] = e.search.candidates;
        edges.push_back(item);
    }
    Json j;
    j["edges"] = edges;
    j["all_edges"] = report.all_edges();
    auto threshold = implied_threshold(report);
    j["implied_threshold_p"] = threshold ? Json(*threshold) : Json(nullptr);
    return j;
}

Json to_json(const OracleSweepReport &r) {
    Json j;
    j["passed"] = r.passed();
    j["graphs"] = r.graphs;
    j["cz_checks"] = r.cz_checks;
    j["measure_checks"] = r.measure_checks;
    j["merge_checks"] = r.merge_checks;
    j["max_trace_distance"] = r.max_distance;
    j["max_probability_error"] = r.max_probability_error;
    if (!r.passed()) {
        j["first_failure"] = r.first_failure;
    }
    return j;
}

Json envelope(const std::string &command, Json config, Json results) {
    Json j;
    j["command"] = command;
    j["config"] = std::move(config);
    j["results"] = std::move(results);
    j["version"] = kVersion;
    return j;
}

}  // namespace drpp::report
