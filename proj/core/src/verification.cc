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

#include "drpp/verification.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

#include "drpp/dense.h"
#include "drpp/errors.h"
#include "drpp/pattern.h"
#include "drpp/rng.h"

namespace drpp {

namespace {

Graph graph_from_code(size_t n, uint64_t code) {
    Graph g(n);
    size_t k = 0;
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            if ((code >> k++) & 1) {
                g.add_edge(u, v);
            }
        }
    }
    return g;
}

/// Removes qubits in `gone` (all in |0>) from a state vector.
dense::StateVector drop_zero_qubits(const dense::StateVector &psi, VertexSet gone) {
    const size_t n = psi.num_qubits();
    const size_t kept = n - popcount(gone);
    dense::Vector out = dense::Vector::Zero(static_cast<Eigen::Index>(size_t{1} << kept));
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); i++) {
        auto idx = static_cast<size_t>(i);
        if (idx & gone) {
            continue;
        }
        size_t compact = 0;
        size_t pos = 0;
        for (size_t q = 0; q < n; q++) {
            if (!((gone >> q) & 1)) {
                compact |= ((idx >> q) & 1) << pos++;
            }
        }
        out(static_cast<Eigen::Index>(compact)) = psi.amplitudes()(i);
    }
    return dense::StateVector(kept, std::move(out));
}

class Sweep {
   public:
    explicit Sweep(const OracleSweepOptions &options) : options_(options) {}

    void record(double distance, double prob_error, const std::string &what) {
        report_.max_distance = std::max(report_.max_distance, distance);
        report_.max_probability_error = std::max(report_.max_probability_error, prob_error);
        if ((distance > options_.tolerance || prob_error > options_.tolerance) && report_.first_failure.empty()) {
            std::ostringstream msg;
            msg << what << " (distance " << distance << ", probability error " << prob_error << ")";
            report_.first_failure = msg.str();
        }
    }

    void check_cz_and_measure(const PatternState &s) {
        const size_t n = s.num_qubits();
        const dense::StateVector before = to_dense(s);
        for (size_t u = 0; u < n; u++) {
            for (size_t v = u + 1; v < n; v++) {
                dense::StateVector expect = before;
                dense::apply_gate(expect, dense::Gate::CZ, u, v);
                auto after = apply_cz(s, u, v);
                record(dense::trace_distance(expect, to_dense(after)), 0, describe("apply_cz", s));
                report_.cz_checks++;
            }
        }
        if (n < 2) {
            return;
        }
        for (size_t v = 0; v < n; v++) {
            for (int m = 0; m < 2; m++) {
                auto expect = dense::measure_and_remove(before, v, dense::Basis::Z, m);
                auto got = measure_z(s, v, m);
                record(dense::trace_distance(expect.post_state, to_dense(got.state)),
                       std::abs(expect.probability - 0.5), describe("measure_z", s));
                report_.measure_checks++;
            }
        }
    }

    void check_merge(const PatternState &s, const std::vector<size_t> &party) {
        const size_t fusions = party.size() - 1;
        for (size_t bits = 0; bits < (size_t{1} << fusions); bits++) {
            std::vector<int> outcomes(fusions);
            for (size_t j = 0; j < fusions; j++) {
                outcomes[j] = static_cast<int>((bits >> j) & 1);
            }
            dense::StateVector psi = to_dense(s);
            double prob_error = 0;
            VertexSet gone = 0;
            for (size_t j = 1; j < party.size(); j++) {
                const size_t a = party[0];
                const size_t b = party[j];
                dense::apply_gate(psi, dense::Gate::H, b);
                dense::apply_gate(psi, dense::Gate::CZ, a, b);
                auto meas = dense::measure(psi, b, dense::Basis::X, outcomes[j - 1]);
                prob_error = std::max(prob_error, std::abs(meas.probability - 0.5));
                psi = std::move(meas.post_state);
                dense::apply_gate(psi, dense::Gate::H, b);
                if (outcomes[j - 1]) {
                    dense::apply_gate(psi, dense::Gate::X, b);
                }
                gone |= bit(b);
            }
            auto got = merge_local(s, party, outcomes);
            record(dense::trace_distance(drop_zero_qubits(psi, gone), to_dense(got.state)), prob_error,
                   describe("merge_local", s));
            report_.merge_checks++;
        }
    }

    /// Every error pattern, with frame 0 and with a pattern-dependent frame.
    template <typename F>
    void for_each_pattern(const Graph &g, F body) {
        const size_t n = g.num_vertices();
        const VertexSet mask = (VertexSet{1} << n) - 1;
        for (VertexSet e = 0; e <= mask; e++) {
            body(PatternState(g, e, 0));
            body(PatternState(g, e, (e * 5 + 3) & mask));
        }
    }

    /// Labelled graphs on n vertices with adjacency codes in [begin, end).
    void sweep_graphs(size_t n, uint64_t begin, uint64_t end) {
        for (uint64_t code = begin; code < end; code++) {
            Graph g = graph_from_code(n, code);
            report_.graphs++;
            for_each_pattern(g, [&](const PatternState &s) {
                check_cz_and_measure(s);
                merge_lists_for(s);
            });
        }
    }

    void six_qubit_merges_if_enabled() {
        if (options_.max_merge_qubits >= 6) {
            six_qubit_merges();
        }
    }

    const OracleSweepReport &report() const {
        return report_;
    }

   private:
    void merge_lists_for(const PatternState &s) {
        const size_t n = s.num_qubits();
        if (n > options_.max_merge_qubits || n < 2) {
            return;
        }
        if (n <= 4) {
            // Every ordered list of distinct qubits of length >= 2.
            std::vector<size_t> all(n);
            std::iota(all.begin(), all.end(), 0);
            for (VertexSet subset = 1; subset < (VertexSet{1} << n); subset++) {
                if (popcount(subset) < 2) {
                    continue;
                }
                std::vector<size_t> party;
                for (size_t q = 0; q < n; q++) {
                    if ((subset >> q) & 1) {
                        party.push_back(q);
                    }
                }
                do {
                    check_merge(s, party);
                } while (std::next_permutation(party.begin(), party.end()));
            }
            return;
        }
        // Kept qubit plus one or two fused qubits.
        for (size_t a = 0; a < n; a++) {
            for (size_t b = 0; b < n; b++) {
                if (b == a) {
                    continue;
                }
                check_merge(s, {a, b});
                for (size_t c = b + 1; c < n; c++) {
                    if (c != a) {
                        check_merge(s, {a, b, c});
                    }
                }
            }
        }
    }

    void six_qubit_merges() {
        std::vector<Graph> graphs;
        // Perfect matchings of 6 vertices: the layouts the rebuild stage sees.
        std::vector<size_t> perm{0, 1, 2, 3, 4, 5};
        do {
            if (perm[0] < perm[1] && perm[2] < perm[3] && perm[4] < perm[5] && perm[0] < perm[2] &&
                perm[2] < perm[4]) {
                Graph g(6);
                g.add_edge(perm[0], perm[1]);
                g.add_edge(perm[2], perm[3]);
                g.add_edge(perm[4], perm[5]);
                graphs.push_back(g);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        Rng rng(20260101);
        std::uniform_int_distribution<uint64_t> code(0, (uint64_t{1} << 15) - 1);
        for (size_t i = 0; i < 64; i++) {
            graphs.push_back(graph_from_code(6, code(rng)));
        }
        for (const auto &g : graphs) {
            report_.graphs++;
            for_each_pattern(g, [&](const PatternState &s) {
                for (size_t a = 0; a < 6; a++) {
                    for (size_t b = 0; b < 6; b++) {
                        if (b != a) {
                            check_merge(s, {a, b});
                        }
                    }
                }
                check_merge(s, {0, 2, 4});
                check_merge(s, {1, 3, 5});
                check_merge(s, {5, 0, 3});
            });
        }
    }

    static std::string describe(const char *op, const PatternState &s) {
        std::ostringstream out;
        out << op << " on " << s.graph().str() << " z=" << s.z_errors() << " frame=" << s.frame();
        return out.str();
    }

    OracleSweepOptions options_;
    OracleSweepReport report_;
};

}  // namespace

OracleSweepReport sweep_pattern_rules(const OracleSweepOptions &options) {
    if (options.max_vertices < 1 || options.max_vertices > 6) {
        throw ParameterError("oracle sweep supports 1..6 vertices");
    }
    // Work items: every graph size below the largest as one chunk, the largest split evenly.
    const size_t workers = std::max<size_t>(1, options.workers);
    std::vector<Sweep> sweeps(workers, Sweep(options));
    const size_t top = options.max_vertices;
    const uint64_t top_codes = uint64_t{1} << (top * (top - 1) / 2);
    auto chunk = [&](size_t w) {
        Sweep &sweep = sweeps[w];
        if (w == 0) {
            for (size_t n = 1; n < top; n++) {
                sweep.sweep_graphs(n, 0, uint64_t{1} << (n * (n - 1) / 2));
            }
        }
        sweep.sweep_graphs(top, top_codes * w / workers, top_codes * (w + 1) / workers);
        if (w + 1 == workers) {
            sweep.six_qubit_merges_if_enabled();
        }
    };
    if (workers == 1) {
        chunk(0);
    } else {
        std::vector<std::jthread> threads;
        for (size_t w = 0; w < workers; w++) {
            threads.emplace_back(chunk, w);
        }
    }
    OracleSweepReport total;
    for (const auto &sweep : sweeps) {
        const auto &r = sweep.report();
        total.graphs += r.graphs;
        total.cz_checks += r.cz_checks;
        total.measure_checks += r.measure_checks;
        total.merge_checks += r.merge_checks;
        total.max_distance = std::max(total.max_distance, r.max_distance);
        total.max_probability_error = std::max(total.max_probability_error, r.max_probability_error);
        if (total.first_failure.empty()) {
            total.first_failure = r.first_failure;
        }
    }
    return total;
}

}  // namespace drpp
