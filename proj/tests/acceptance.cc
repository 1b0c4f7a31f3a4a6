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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.h"
#include "nlohmann/json.hpp"

#include "drpp/bell_diagonal.h"
#include "drpp/dense.h"
#include "drpp/optimality.h"
#include "drpp/protocol.h"
#include "drpp/thermal.h"
#include "drpp/verification.h"
#include "support/oracles.h"

using namespace drpp;

namespace {

struct Verdict {
    bool ok;
    std::string detail;
};

struct Criterion {
    int id;
    const char *name;
    double time_limit_s;
    std::function<Verdict()> check;
};

std::string format(const char *fmt, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return buf;
}

std::pair<int, std::string> run_cli(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str()};
}

Verdict critical_temperature_check() {
    auto [code, text] = run_cli({"threshold", "--B", "1", "--json"});
    if (code != cli::kExitOk) {
        return {false, "threshold exited with " + std::to_string(code)};
    }
    double reported = nlohmann::json::parse(text)["results"]["T_crit"].get<double>();
    double closed_form = -1 / std::log(std::sqrt(2.0) - 1);
    double root = oracle::critical_temperature_toms748(1.0);
    bool ok = std::abs(reported - 1.134593) <= 1e-6 && std::abs(reported - closed_form) <= 1e-12 &&
              std::abs(reported - root) <= 1e-9;
    return {ok, format("T_crit %.9f, closed form %.9f, TOMS748 root %.9f", reported, closed_form, root)};
}

Verdict thermal_equivalence_check() {
    std::vector<std::string> names = {"path:2", "path:3", "path:4", "path:5", "cycle:3", "cycle:4", "cycle:5",
                                      "star:3", "star:4", "star:5", "grid:2x2", "grid:2x2x3"};
    double worst = 0;
    size_t cases = 0;
    for (const auto &name : names) {
        Graph g = load_graph(name);
        for (double t : {0.3, 1.0, 3.0}) {
            auto a = dense::thermal_state(g, 1.0, t);
            auto b = dense::thermal_state_via_errors(g, 1.0, t);
            worst = std::max(worst, dense::trace_distance(a, b));
            cases++;
        }
    }
    return {worst <= 1e-9, format("%.0f cases, max trace distance %.2e", static_cast<double>(cases), worst)};
}

Verdict oracle_sweep_check() {
    OracleSweepOptions options;
    options.workers = std::max(1u, std::thread::hardware_concurrency());
    auto rep = sweep_pattern_rules(options);
    std::string detail = format("%.0f graphs, %.0f CZ, %.0f measurement", static_cast<double>(rep.graphs),
                                static_cast<double>(rep.cz_checks), static_cast<double>(rep.measure_checks)) +
                         format(", %.0f merge checks, max trace distance %.2e", static_cast<double>(rep.merge_checks),
                                rep.max_distance);
    if (!rep.passed()) {
        detail += "; " + rep.first_failure;
    }
    return {rep.passed() && rep.max_distance <= 1e-9, detail};
}

Verdict threshold_bracket_check() {
    std::string detail;
    bool ok = true;
    for (const char *name : {"path:3", "star:4"}) {
        auto rows = threshold_scan(load_graph(name), {0.28, 0.29, 0.30}, ProtocolConfig{.shots = 100000, .seed = 1});
        auto flip = verdict_flip(rows);
        bool bracket = flip && flip->first >= 0.28 && flip->second <= 0.30 && flip->first < kCriticalErrorProb &&
                       flip->second > kCriticalErrorProb;
        // The Monte Carlo must agree: near-ideal output below p*, far from it above.
        bool evidence = rows.front().result.ci95.low > 0.9 && rows.back().result.ci95.high < 0.5;
        ok = ok && bracket && evidence;
        detail += std::string(detail.empty() ? "" : "; ") + name + " " +
                  (flip ? format("flips in [%.2f, %.2f]", flip->first, flip->second) : std::string("no flip")) +
                  format(", F(0.28) = %.4f, F(0.30) = %.4f", rows.front().result.fidelity, rows.back().result.fidelity);
    }
    return {ok, detail};
}

Verdict n_geo_check() {
    for (size_t n = 4; n <= 30; n++) {
        if (plan_extraction(path_graph(n)).num_rounds() != 3) {
            return {false, "path(" + std::to_string(n) + ") is not 3 rounds"};
        }
    }
    for (size_t n = 3; n <= 20; n++) {
        if (plan_extraction(star_graph(n)).num_rounds() != n - 1) {
            return {false, "star(" + std::to_string(n) + ") is not N-1 rounds"};
        }
    }
    auto formula = n_geo_formula(parse_family("grid:2x4"));
    if (formula != 12u) {
        return {false, "n_geo_formula for d = 2 is not 12"};
    }
    return {true, "path(4..30) = 3, star(3..20) = N-1, 2-D cluster formula = 12"};
}

Verdict rate_bounds_check() {
    std::vector<std::string> names = {"path:6", "star:5", "grid:2x3", "cycle:6"};
    std::string detail;
    for (double p : {0.0, 0.05, 0.15, 0.25, kCriticalErrorProb, 0.4}) {
        for (const auto &name : names) {
            auto fam = parse_family(name);
            auto r = rate_report(fam.build(), p, fam);
            bool ordered = r.r2 >= r.r_psi_upper && r.r_psi_upper >= r.r_psi_lower &&
                           std::abs(r.r_psi_lower - r.r2 / static_cast<double>(r.n_geo_plan)) <= 1e-15;
            if (!ordered) {
                return {false, name + format(" at p = %.3f breaks R2 >= upper >= lower = R2/N_geo", p)};
            }
            if (p == 0 && r.r2 != 1) {
                return {false, "R2 != 1 at p = 0"};
            }
            if (p >= kCriticalErrorProb && r.r2 != 0) {
                return {false, format("R2 = %.3e at p = %.4f", r.r2, p)};
            }
        }
        if (p > 0 && p < 0.2) {
            detail += format("R2(%.2f) = %.4f; ", p, pair_rate(BellDiagonal::from_z_noise(p)));
        }
    }
    return {true, detail + "R2(0) = 1, R2(p >= p*) = 0"};
}

Verdict optimality_check() {
    double worst_valid = 0;
    double best_invalid = 1;
    for (double p : {0.05, 0.1, 0.2}) {
        auto path = verify_reconstruction(path_graph(3), bit(0), p);
        if (!path.valid) {
            return {false, format("path(3) fails at p = %.2f (distance %.2e)", p, path.trace_distance)};
        }
        auto square = search_wirings(cycle_graph(4), bit(0) | bit(3), p);
        if (!square.found) {
            return {false, format("cycle(4) has no wiring at p = %.2f", p)};
        }
        auto r = plan_reconstruction(cycle_graph(4), square.alice, square.fused);
        if (r.pair_budget != 2) {
            return {false, "cycle(4) reconstruction does not use two pair copies"};
        }
        worst_valid = std::max({worst_valid, path.trace_distance, square.best_distance});
        auto triangle = proof_applies(cycle_graph(3), p);
        if (triangle.all_edges()) {
            return {false, format("cycle(3) unexpectedly reconstructs at p = %.2f", p)};
        }
        for (const auto &e : triangle.edges) {
            if (e.applies) {
                return {false, format("cycle(3) edge reconstructs at p = %.2f", p)};
            }
            best_invalid = std::min(best_invalid, e.search.best_distance);
        }
    }
    return {true, format("path(3), cycle(4) within %.2e; cycle(3) no closer than %.3f", worst_valid, best_invalid)};
}

Verdict recurrence_check() {
    double worst = 0;
    for (int k = 0; k < 25; k++) {
        double p = 0.01 + 0.02 * k;
        auto bd = BellDiagonal::from_z_noise(p);
        auto step = recurrence_step(bd);
        // Independent partner choice: best of the three dense two-pair circuits.
        double best_oracle = 0;
        for (auto partner : {PairClass::Za, PairClass::Zb, PairClass::ZaZb}) {
            best_oracle = std::max(best_oracle, oracle::two_pair_recurrence(bd, partner).probs[0]);
        }
        auto ref = oracle::two_pair_recurrence(bd, step.partner);
        for (size_t c = 0; c < 4; c++) {
            worst = std::max(worst, std::abs(ref.probs[c] - step.output.probs[c]));
        }
        worst = std::max(worst, std::abs(best_oracle - step.output.fidelity()));
        bool increases = best_oracle > bd.fidelity() + 1e-12;
        if (increases != ((1 - p) * (1 - p) > 0.5)) {
            return {false, format("p = %.2f: increase %.0f disagrees with (1-p)^2 > 1/2", p, increases)};
        }
    }
    return {worst <= 1e-9, format("25 points, max component deviation %.2e", worst)};
}

Verdict determinism_check() {
    std::vector<std::vector<std::string>> commands = {
        {"simulate", "--graph", "grid:2x3", "--p", "0.12", "--shots", "5000", "--seed", "17", "--json"},
        {"simulate", "--graph", "cycle:7", "--B", "1", "--T", "0.6", "--shots", "5000", "--seed", "3", "--json"},
        {"scan", "--graph", "star:4", "--p-grid", "0.1,0.28,0.3", "--shots", "3000", "--seed", "9", "--json"},
    };
    for (const auto &base : commands) {
        auto [code, reference] = run_cli(base);
        if (code != cli::kExitOk) {
            return {false, base[0] + " exited with " + std::to_string(code)};
        }
        for (const char *w : {"1", "2", "4", "8"}) {
            auto args = base;
            args.push_back("--workers");
            args.push_back(w);
            if (run_cli(args).second != reference) {
                return {false, base[0] + " output differs with " + w + " workers"};
            }
        }
    }
    return {true, "3 invocations byte-identical for 1, 2, 4, 8 workers"};
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "critical temperature", 1, critical_temperature_check},
        {2, "thermal-state equivalence", 30, thermal_equivalence_check},
        {3, "pattern rules vs dense oracle", 300, oracle_sweep_check},
        {4, "threshold bracketing", 120, threshold_bracket_check},
        {5, "N_geo", 1, n_geo_check},
        {6, "rate bounds", 10, rate_bounds_check},
        {7, "optimality figures", 120, optimality_check},
        {8, "recurrence sanity", 30, recurrence_check},
        {9, "determinism", 600, determinism_check},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = seconds < c.time_limit_s;
        if (!in_time) {
            v.detail += format("; over the %.0f s limit", c.time_limit_s);
        }
        bool pass = v.ok && in_time;
        failures += pass ? 0 : 1;
        std::printf("%s  [%d] %-30s %8.2fs  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, seconds, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
