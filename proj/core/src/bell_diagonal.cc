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

#include "drpp/bell_diagonal.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "drpp/errors.h"

namespace drpp {

BellDiagonal BellDiagonal::from_z_noise(double p) {
    if (!(p >= 0 && p <= 0.5)) {
        throw ParameterError("pair error probability must lie in [0, 1/2], got " + std::to_string(p));
    }
    double q = 1 - p;
    return BellDiagonal{{q * q, p * q, p * q, p * p}};
}

void BellDiagonal::validate() const {
    double sum = 0;
    for (double x : probs) {
        if (!(x >= 0 && x <= 1)) {
            throw ParameterError("Bell-diagonal component outside [0, 1]");
        }
        sum += x;
    }
    if (std::abs(sum - 1) > 1e-12) {
        throw ParameterError("Bell-diagonal components do not sum to 1");
    }
}

std::string BellDiagonal::str() const {
    std::ostringstream out;
    out.precision(12);
    out << "(" << probs[0] << ", " << probs[1] << ", " << probs[2] << ", " << probs[3] << ")";
    return out.str();
}

bool is_purifiable(const BellDiagonal &bd) {
    return *std::max_element(bd.probs.begin(), bd.probs.end()) > 0.5;
}

RecurrenceStep recurrence_step(const BellDiagonal &bd, PairClass partner) {
    bd.validate();
    const auto c = static_cast<size_t>(partner);
    if (c == 0) {
        throw ParameterError("recurrence partner must be a non-identity class");
    }
    // Relabelling: transposition of class 1 (the Phi- slot) with the partner.
    auto slot = [c](size_t k) -> size_t { return k == 1 ? c : k == c ? 1 : k; };
    std::array<double, 4> rotated{};
    for (size_t k = 0; k < 4; k++) {
        rotated[k] = bd.probs[slot(k)];
    }

    // Bilateral CNOT: phase bits add into the source, parity bits must coincide.
    std::array<double, 4> out{};
    for (size_t s = 0; s < 2; s++) {
        double even = rotated[2 * s] * rotated[2 * s] + rotated[2 * s + 1] * rotated[2 * s + 1];
        double odd = 2 * rotated[2 * s] * rotated[2 * s + 1];
        out[2 * s] = even;
        out[2 * s + 1] = odd;
    }
    double success = out[0] + out[1] + out[2] + out[3];
    if (!(success > 0)) {
        throw ContractError("recurrence step has zero success probability");
    }
    BellDiagonal result;
    for (size_t k = 0; k < 4; k++) {
        result.probs[slot(k)] = out[k] / success;
    }
    return {result, success, partner};
}

RecurrenceStep recurrence_step(const BellDiagonal &bd) {
    RecurrenceStep best = recurrence_step(bd, PairClass::Za);
    for (auto partner : {PairClass::Zb, PairClass::ZaZb}) {
        RecurrenceStep candidate = recurrence_step(bd, partner);
        if (candidate.output.fidelity() > best.output.fidelity()) {
            best = candidate;
        }
    }
    return best;
}

DistillResult distill(const BellDiagonal &bd, double target_fidelity, size_t max_rounds) {
    bd.validate();
    if (!(target_fidelity < 1) || !(target_fidelity > 0)) {
        throw ParameterError("target fidelity must lie in (0, 1)");
    }
    DistillResult result{false, 0, 1.0, bd.fidelity(), bd, ""};
    if (bd.fidelity() >= target_fidelity) {
        result.converged = true;
        return result;
    }
    if (!(bd.fidelity() > 0.5)) {
        std::ostringstream msg;
        msg << "pair fidelity " << bd.fidelity() << " does not exceed 1/2; recurrence cannot reach "
            << target_fidelity;
        result.diagnostic = msg.str();
        return result;
    }
    BellDiagonal current = bd;
    for (size_t round = 1; round <= max_rounds; round++) {
        auto step = recurrence_step(current);
        if (!(step.output.fidelity() > current.fidelity())) {
            result.diagnostic = "recurrence stalled at fidelity " + std::to_string(current.fidelity());
            return result;
        }
        current = step.output;
        result.rounds_used = round;
        result.expected_pairs_consumed *= 2 / step.success_prob;
        result.achieved_fidelity = current.fidelity();
        result.final_state = current;
        if (current.fidelity() >= target_fidelity) {
            result.converged = true;
            return result;
        }
    }
    result.diagnostic = "target fidelity not reached within " + std::to_string(max_rounds) + " rounds";
    return result;
}

double entropy_bits(const BellDiagonal &bd) {
    double h = 0;
    for (double x : bd.probs) {
        if (x > 0) {
            h -= x * std::log2(x);
        }
    }
    return h;
}

double hashing_yield(const BellDiagonal &bd) {
    return std::max(0.0, 1 - entropy_bits(bd));
}

double pair_rate(const BellDiagonal &bd, PairRateEstimator estimator, size_t max_recurrence_rounds) {
    bd.validate();
    if (!is_purifiable(bd) || bd.fidelity() <= 0.5) {
        return 0;
    }
    if (estimator == PairRateEstimator::Hashing) {
        return hashing_yield(bd);
    }
    double best = hashing_yield(bd);
    double survival = 1;
    BellDiagonal current = bd;
    for (size_t k = 1; k <= max_recurrence_rounds; k++) {
        auto step = recurrence_step(current);
        survival *= step.success_prob / 2;
        current = step.output;
        best = std::max(best, survival * hashing_yield(current));
    }
    return best;
}

}  // namespace drpp
