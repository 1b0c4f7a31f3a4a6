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

#ifndef DRPP_BELL_DIAGONAL_H
#define DRPP_BELL_DIAGONAL_H

#include <array>
#include <cstddef>
#include <string>

namespace drpp {

/// Error classes of a two-qubit graph state CZ|++> (qubits a, b). Bit 0 of the
/// index is a Z on a, bit 1 a Z on b. After a Hadamard on b these are the Bell
/// states Phi+, Phi-, Psi+, Psi- in that order, so bit 0 is the Bell phase bit and
/// bit 1 the parity bit.
enum class PairClass : size_t { I = 0, Za = 1, Zb = 2, ZaZb = 3 };

struct BellDiagonal {
    std::array<double, 4> probs{1, 0, 0, 0};

    /// Independent Z flips with probability p on both halves: ((1-p)^2, p(1-p), p(1-p), p^2).
    static BellDiagonal from_z_noise(double p);

    double fidelity() const {
        return probs[0];
    }
    double operator[](PairClass c) const {
        return probs[static_cast<size_t>(c)];
    }
    /// Throws ParameterError unless components lie in [0, 1] and sum to 1 within 1e-12.
    void validate() const;
    std::string str() const;
};

/// Largest component strictly above 1/2.
bool is_purifiable(const BellDiagonal &bd);

struct RecurrenceStep {
    BellDiagonal output;
    double success_prob;
    /// Class paired with I in the bilateral-CNOT round (chosen to maximize output fidelity).
    PairClass partner;
};

/// One round of two-copy recurrence: bilateral Clifford relabelling so that the
/// chosen partner class occupies the Phi- slot, bilateral CNOT, Z-measurement
/// of the target pair with coincidence post-selection, relabelling undone.
RecurrenceStep recurrence_step(const BellDiagonal &bd);

/// The same round with a fixed partner class (Za, Zb or ZaZb).
RecurrenceStep recurrence_step(const BellDiagonal &bd, PairClass partner);

struct DistillResult {
    bool converged;
    size_t rounds_used;
    /// Expected input pairs per output pair: prod over rounds of 2 / success_prob.
    double expected_pairs_consumed;
    double achieved_fidelity;
    BellDiagonal final_state;
    std::string diagnostic;
};

inline constexpr size_t kDefaultMaxRounds = 64;

/// Iterates recurrence_step until fidelity >= target or max_rounds. Not purifiable
/// with target above the fidelity yields converged = false (never throws for that).
DistillResult distill(const BellDiagonal &bd, double target_fidelity, size_t max_rounds = kDefaultMaxRounds);

/// Shannon entropy of the components, in bits.
double entropy_bits(const BellDiagonal &bd);

/// max(0, 1 - H(probs)).
double hashing_yield(const BellDiagonal &bd);

enum class PairRateEstimator {
    Hashing,
    /// max over k <= max_recurrence_rounds of (recurrence survival yield) x hashing_yield(round-k state).
    RecurrenceThenHashing,
};

inline constexpr size_t kDefaultRateRecurrenceRounds = 8;

/// Bell-pair rate R2 used in the protocol rate bounds. Zero for non-purifiable input.
double pair_rate(const BellDiagonal &bd, PairRateEstimator estimator = PairRateEstimator::RecurrenceThenHashing,
                 size_t max_recurrence_rounds = kDefaultRateRecurrenceRounds);

}  // namespace drpp

#endif  // DRPP_BELL_DIAGONAL_H
