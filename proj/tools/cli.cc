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

#include "cli.h"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "report.h"

#include "drpp/errors.h"
#include "drpp/optimality.h"
#include "drpp/protocol.h"
#include "drpp/thermal.h"
#include "drpp/verification.h"
#include "drpp/version.h"

namespace drpp::cli {

namespace {

using report::Json;

struct Options {
    bool json = false;
    uint64_t seed = 0;
    size_t workers = 1;
    std::string graph;
    std::string family;
    double coupling = 0;
    double temperature = 0;
    double p = 0;
    size_t shots = 10000;
    double target = 0.999;
    size_t max_rounds = kDefaultMaxRounds;
    std::string p_grid;
    std::string t_grid;
    size_t max_n = 5;
    size_t max_merge_qubits = 6;
    double tol = 1e-9;

    CLI::Option *coupling_opt = nullptr;
    CLI::Option *temperature_opt = nullptr;
    CLI::Option *p_opt = nullptr;
};

uint64_t default_seed() {
    const char *env = std::getenv(kSeedEnv);
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') {
        throw ParameterError(std::string(kSeedEnv) + " must be a non-negative integer");
    }
    return v;
}

bool given(const CLI::Option *opt) {
    return opt != nullptr && opt->count() > 0;
}

/// Error probability from either --p or --B with --T (exactly one form).
double resolve_p(const Options &o, std::optional<double> fallback = std::nullopt) {
    bool has_p = given(o.p_opt);
    bool has_b = given(o.coupling_opt);
    bool has_t = given(o.temperature_opt);
    if (has_p && (has_b || has_t)) {
        throw ParameterError("give either --p or --B with --T, not both");
    }
    if (has_p) {
        if (!(o.p >= 0 && o.p <= 0.5)) {
            throw ParameterError("--p must lie in [0, 0.5]");
        }
        return o.p;
    }
    if (has_b != has_t) {
        throw ParameterError("--B and --T must be given together");
    }
    if (has_b) {
        ThermalModel model{o.coupling, o.temperature};
        model.validate();
        return error_prob(model);
    }
    if (fallback) {
        return *fallback;
    }
    throw ParameterError("an error model is required: --p, or --B with --T");
}

std::vector<double> parse_grid(const std::string &text, const char *flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw ParameterError(std::string(flag) + ": '" + item + "' is not a number");
        }
    }
    if (out.empty()) {
        throw ParameterError(std::string(flag) + " must list at least one value");
    }
    return out;
}

std::optional<GraphFamily> family_hint(const std::string &spec) {
    if (looks_like_family(spec)) {
        return parse_family(spec);
    }
    return std::nullopt;
}

std::string fmt(double x, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision) << x;
    return os.str();
}

std::string fmt_optional(const std::optional<size_t> &x) {
    return x ? std::to_string(*x) : "-";
}

std::string vertex_list(VertexSet s) {
    std::string out = "{";
    for (bool first = true; s; s &= s - 1, first = false) {
        out += (first ? "" : ",") + std::to_string(std::countr_zero(s));
    }
    return out + "}";
}

void emit(std::ostream &out, const Json &j) {
    out << j.dump(2) << "\n";
}

ProtocolConfig protocol_config(const Options &o, double p) {
    ProtocolConfig config;
    config.p = p;
    config.shots = o.shots;
    config.pair_target_fidelity = o.target;
    config.seed = o.seed;
    config.workers = o.workers;
    config.max_rounds = o.max_rounds;
    return config;
}

Json protocol_config_json(const Options &o) {
    // The worker count is left out on purpose: output must not depend on it.
    Json c;
    c["graph"] = o.graph;
    c["shots"] = o.shots;
    c["seed"] = o.seed;
    c["target"] = o.target;
    c["max_rounds"] = o.max_rounds;
    return c;
}

void print_result_row(std::ostream &out, const ProtocolResult &r) {
    out << "status            " << to_string(r.status) << "\n";
    if (!r.diagnostic.empty()) {
        out << "diagnostic        " << r.diagnostic << "\n";
    }
    out << "fidelity          " << fmt(r.fidelity) << "  (95% CI " << fmt(r.ci95.low) << " .. " << fmt(r.ci95.high)
        << ", " << r.ideal_shots << "/" << r.shots << " shots)\n";
    out << "raw pair fidelity "
        << fmt(r.raw_pairs ? static_cast<double>(r.raw_ideal_pairs) / static_cast<double>(r.raw_pairs) : 1.0) << "\n";
    out << "recurrence rounds " << r.recurrence_rounds << "\n";
    out << "pair fidelity     " << fmt(r.pair_fidelity, 10) << "\n";
    out << "copies consumed   " << fmt(r.copies_consumed) << "\n";
    out << "N_geo plan        " << r.n_geo_plan << "\n";
    out << "N_geo formula     " << fmt_optional(r.n_geo_formula) << "\n";
    out << "R2                " << fmt(r.r2) << "\n";
    out << "R_psi bounds      [" << fmt(r.r_psi_lower) << ", " << fmt(r.r_psi_upper) << "]\n";
}

int cmd_threshold(const Options &o, std::ostream &out) {
    double t_crit = critical_temperature(o.coupling);
    double t_root = critical_temperature_by_root_find(o.coupling);
    const double ratios[] = {0.5, 0.9, 0.99, 1.0, 1.01, 1.1, 2.0};

    if (o.json) {
        Json table = Json::array();
        for (double r : ratios) {
            ThermalModel m{o.coupling, r * t_crit};
            double p = error_prob(m);
            table.push_back({{"T_over_Tcrit", r},
                             {"T", m.temperature},
                             {"p", p},
                             {"pair_fidelity", (1 - p) * (1 - p)},
                             {"purifiable", is_purifiable(m)}});
        }
        Json results;
        results["T_crit"] = t_crit;
        results["T_crit_root_find"] = t_root;
        results["p_star"] = kCriticalErrorProb;
        results["table"] = table;
        emit(out, report::envelope("threshold", Json{{"B", o.coupling}}, results));
        return kExitOk;
    }

    out << std::setprecision(9);
    out << "B                 " << o.coupling << "\n";
    out << "T_crit            " << t_crit << "\n";
    out << "T_crit root find  " << t_root << "\n";
    out << "p*                " << kCriticalErrorProb << "\n\n";
    out << std::left << std::setw(10) << "T/T_crit" << std::setw(14) << "T" << std::setw(14) << "p" << std::setw(14)
        << "(1-p)^2"
        << "purifiable\n";
    for (double r : ratios) {
        ThermalModel m{o.coupling, r * t_crit};
        double p = error_prob(m);
        out << std::setw(10) << fmt(r) << std::setw(14) << fmt(m.temperature, 8) << std::setw(14) << fmt(p, 8)
            << std::setw(14) << fmt((1 - p) * (1 - p), 8) << (is_purifiable(m) ? "yes" : "no") << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const Options &o, std::ostream &out) {
    double p = resolve_p(o);
    Graph g = load_graph(o.graph);
    auto result = run_drpp(g, protocol_config(o, p), family_hint(o.graph));
    if (o.json) {
        Json config = protocol_config_json(o);
        config["p"] = p;
        emit(out, report::envelope("simulate", config, report::to_json(result)));
        return kExitOk;
    }
    out << "graph             " << result.graph << "\n";
    out << "p                 " << fmt(p) << "\n";
    print_result_row(out, result);
    return kExitOk;
}

int cmd_scan(const Options &o, std::ostream &out) {
    bool by_p = !o.p_grid.empty();
    bool by_t = !o.t_grid.empty();
    if (by_p == by_t) {
        throw ParameterError("give exactly one of --p-grid or --T-grid");
    }
    if (by_t && !given(o.coupling_opt)) {
        throw ParameterError("--T-grid requires --B");
    }
    if (by_p && given(o.coupling_opt)) {
        throw ParameterError("--B only applies with --T-grid");
    }
    Graph g = load_graph(o.graph);
    auto base = protocol_config(o, 0);
    std::vector<ScanRow> rows = by_p ? threshold_scan(g, parse_grid(o.p_grid, "--p-grid"), base)
                                     : threshold_scan_temperature(g, o.coupling, parse_grid(o.t_grid, "--T-grid"), base);
    auto flip = verdict_flip(rows);

    if (o.json) {
        Json config = protocol_config_json(o);
        if (by_p) {
            config["p_grid"] = o.p_grid;
        } else {
            config["B"] = o.coupling;
            config["T_grid"] = o.t_grid;
        }
        Json results;
        Json jrows = Json::array();
        for (const auto &row : rows) {
            jrows.push_back(report::to_json(row));
        }
        results["rows"] = jrows;
        results["flip"] = flip ? Json::array({flip->first, flip->second}) : Json(nullptr);
        emit(out, report::envelope("scan", config, results));
        return kExitOk;
    }

    out << std::left << std::setw(10) << "p" << std::setw(10) << "T" << std::setw(12) << "purifiable"
        << std::setw(16) << "status" << std::setw(10) << "fidelity" << std::setw(24) << "95% CI" << std::setw(8)
        << "rounds"
        << "copies\n";
    for (const auto &row : rows) {
        const auto &r = row.result;
        out << std::setw(10) << fmt(row.p) << std::setw(10) << (row.temperature ? fmt(*row.temperature) : "-")
            << std::setw(12) << (row.purifiable ? "yes" : "no") << std::setw(16) << to_string(r.status)
            << std::setw(10) << fmt(r.fidelity, 5) << std::setw(24)
            << ("[" + fmt(r.ci95.low, 5) + ", " + fmt(r.ci95.high, 5) + "]") << std::setw(8) << r.recurrence_rounds
            << fmt(r.copies_consumed) << "\n";
    }
    if (flip) {
        out << "\nverdict flips between p = " << fmt(flip->first) << " and p = " << fmt(flip->second) << "\n";
    } else {
        out << "\nverdict does not flip exactly once on this grid\n";
    }
    return kExitOk;
}

int cmd_rates(const Options &o, std::ostream &out) {
    if (o.graph.empty() == o.family.empty()) {
        throw ParameterError("give exactly one of --family or --graph");
    }
    double p = resolve_p(o);
    std::optional<GraphFamily> hint;
    Graph g;
    if (!o.family.empty()) {
        hint = parse_family(o.family);
        g = hint->build();
    } else {
        hint = family_hint(o.graph);
        g = load_graph(o.graph);
    }
    auto rates = rate_report(g, p, hint);
    if (o.json) {
        Json config;
        config["graph"] = o.family.empty() ? o.graph : o.family;
        config["p"] = p;
        emit(out, report::envelope("rates", config, report::to_json(rates)));
        return kExitOk;
    }
    out << "graph             " << (hint ? hint->str() : g.str()) << "\n";
    out << "p                 " << fmt(p) << "\n";
    out << "R2                " << fmt(rates.r2) << "\n";
    out << "N_geo plan        " << rates.n_geo_plan << "\n";
    out << "N_geo formula     " << fmt_optional(rates.n_geo_formula) << "\n";
    out << "R_psi upper       " << fmt(rates.r_psi_upper) << "\n";
    out << "R_psi lower       " << fmt(rates.r_psi_lower) << "\n";
    if (rates.r_psi_lower_formula) {
        out << "R_psi lower (formula N_geo) " << fmt(*rates.r_psi_lower_formula) << "\n";
    }
    return kExitOk;
}

int cmd_plan(const Options &o, std::ostream &out) {
    Graph g = load_graph(o.graph);
    auto plan = plan_extraction(g);
    if (o.json) {
        emit(out, report::envelope("plan", Json{{"graph", o.graph}}, report::to_json(g, plan)));
        return kExitOk;
    }
    out << "graph " << o.graph << ": " << g.num_vertices() << " vertices, " << g.num_edges() << " edges, "
        << plan.num_rounds() << " rounds\n";
    for (size_t k = 0; k < plan.rounds.size(); k++) {
        out << "round " << k << ":";
        for (const auto &x : plan.rounds[k]) {
            out << " (" << x.edge.u << "," << x.edge.v << ")";
        }
        out << "\n";
    }
    return kExitOk;
}

int cmd_verify_oracle(const Options &o, std::ostream &out) {
    OracleSweepOptions options;
    options.max_vertices = o.max_n;
    options.max_merge_qubits = o.max_merge_qubits;
    options.tolerance = o.tol;
    options.workers = o.workers;
    auto rep = sweep_pattern_rules(options);
    if (o.json) {
        Json config{{"max_n", o.max_n}, {"max_merge_qubits", o.max_merge_qubits}, {"tol", o.tol}};
        emit(out, report::envelope("verify-oracle", config, report::to_json(rep)));
    } else {
        out << "graphs            " << rep.graphs << "\n";
        out << "cz checks         " << rep.cz_checks << "\n";
        out << "measure checks    " << rep.measure_checks << "\n";
        out << "merge checks      " << rep.merge_checks << "\n";
        out << "max distance      " << fmt(rep.max_distance) << "\n";
        out << "max prob. error   " << fmt(rep.max_probability_error) << "\n";
        out << (rep.passed() ? "PASSED" : "FAILED: " + rep.first_failure) << "\n";
    }
    return rep.passed() ? kExitOk : kExitFailure;
}

int cmd_check_optimality(const Options &o, std::ostream &out) {
    double p = resolve_p(o, 0.1);
    Graph g = load_graph(o.graph);
    auto rep = proof_applies(g, p, o.tol);
    if (o.json) {
        Json config{{"graph", o.graph}, {"p", p}, {"tol", o.tol}};
        emit(out, report::envelope("check-optimality", config, report::to_json(rep)));
        return kExitOk;
    }
    out << std::left << std::setw(10) << "edge" << std::setw(10) << "verdict" << std::setw(16) << "alice"
        << std::setw(16) << "fused"
        << "best trace distance\n";
    for (const auto &e : rep.edges) {
        out << std::setw(10) << ("(" + std::to_string(e.edge.u) + "," + std::to_string(e.edge.v) + ")")
            << std::setw(10) << (e.applies ? "true" : "false") << std::setw(16)
            << (e.applies ? vertex_list(e.search.alice) : "-") << std::setw(16)
            << (e.applies ? vertex_list(e.search.fused) : "-") << fmt(e.search.best_distance) << "\n";
    }
    out << "\nall edges: " << (rep.all_edges() ? "true" : "false") << "\n";
    out << "(false means no reconstruction was found in the canonical wiring family)\n";
    return kExitOk;
}

void add_common(CLI::App *cmd, Options &o) {
    cmd->add_flag("--json", o.json, "Print the machine-readable JSON envelope");
}

struct ErrorModelFlags {
    CLI::Option *p = nullptr;
    CLI::Option *coupling = nullptr;
    CLI::Option *temperature = nullptr;
};

ErrorModelFlags add_error_model(CLI::App *cmd, Options &o) {
    return {cmd->add_option("--p", o.p, "Per-qubit Z-error probability"),
            cmd->add_option("--B", o.coupling, "Coupling strength (with --T)"),
            cmd->add_option("--T", o.temperature, "Temperature (with --B)")};
}

void select(Options &o, const ErrorModelFlags &flags) {
    o.p_opt = flags.p;
    o.coupling_opt = flags.coupling;
    o.temperature_opt = flags.temperature;
}

void add_shots(CLI::App *cmd, Options &o) {
    cmd->add_option("--shots", o.shots, "Monte Carlo shots")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, std::string("Master seed (default from ") + kSeedEnv + ", else 0)");
    cmd->add_option("--workers", o.workers, "Worker threads; does not change results")->check(CLI::PositiveNumber);
    cmd->add_option("--target", o.target, "Pair fidelity target of the purification step");
    cmd->add_option("--max-rounds", o.max_rounds, "Maximum recurrence rounds");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    try {
        o.seed = default_seed();
    } catch (const ParameterError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App app{"Divide, purify and rebuild noisy graph states.", "drpp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    auto *threshold = app.add_subcommand("threshold", "Critical temperature and error probability");
    threshold->add_option("--B", o.coupling, "Coupling strength")->required();
    add_common(threshold, o);

    auto *simulate = app.add_subcommand("simulate", "Monte Carlo run of the full protocol");
    simulate->add_option("--graph", o.graph, "Family (e.g. path:3, grid:2x3) or edge-list file")->required();
    auto simulate_model = add_error_model(simulate, o);
    add_shots(simulate, o);
    add_common(simulate, o);

    auto *scan = app.add_subcommand("scan", "Protocol runs over a grid of p or T");
    scan->add_option("--graph", o.graph, "Family or edge-list file")->required();
    scan->add_option("--p-grid", o.p_grid, "Comma-separated error probabilities");
    scan->add_option("--T-grid", o.t_grid, "Comma-separated temperatures (with --B)");
    ErrorModelFlags scan_model{nullptr, scan->add_option("--B", o.coupling, "Coupling strength for --T-grid"), nullptr};
    add_shots(scan, o);
    add_common(scan, o);

    auto *rates = app.add_subcommand("rates", "Rate bounds R2 >= R_psi >= R2 / N_geo");
    rates->add_option("--family", o.family, "Graph family, e.g. ghz:5");
    rates->add_option("--graph", o.graph, "Family or edge-list file");
    auto rates_model = add_error_model(rates, o);
    add_common(rates, o);

    auto *plan = app.add_subcommand("plan", "Extraction rounds of the divide step");
    plan->add_option("--graph", o.graph, "Family or edge-list file")->required();
    add_common(plan, o);

    auto *verify = app.add_subcommand("verify-oracle", "Pattern rules against the dense simulator");
    verify->add_option("--max-n", o.max_n, "Largest graph swept for CZ and Z-measurement")->check(CLI::Range(1, 6));
    verify->add_option("--max-merge-qubits", o.max_merge_qubits, "Largest merge configuration")
        ->check(CLI::Range(2, 6));
    verify->add_option("--tol", o.tol, "Trace-distance tolerance");
    verify->add_option("--workers", o.workers, "Worker threads; does not change results")->check(CLI::PositiveNumber);
    add_common(verify, o);

    auto *optimality = app.add_subcommand("check-optimality", "Per-edge two-party reconstruction verdicts");
    optimality->add_option("--graph", o.graph, "Family or edge-list file (at most 8 vertices)")->required();
    auto optimality_model = add_error_model(optimality, o);
    optimality->add_option("--tol", o.tol, "Trace-distance tolerance");
    add_common(optimality, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*threshold) return cmd_threshold(o, out);
        if (*simulate) {
            select(o, simulate_model);
            return cmd_simulate(o, out);
        }
        if (*scan) {
            select(o, scan_model);
            return cmd_scan(o, out);
        }
        if (*rates) {
            select(o, rates_model);
            return cmd_rates(o, out);
        }
        if (*plan) return cmd_plan(o, out);
        if (*verify) return cmd_verify_oracle(o, out);
        if (*optimality) {
            select(o, optimality_model);
            return cmd_check_optimality(o, out);
        }
    } catch (const CapacityError &e) {
        err << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const ParameterError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace drpp::cli
