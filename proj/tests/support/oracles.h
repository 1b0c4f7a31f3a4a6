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

// Reference computations used only by the tests. They deliberately avoid the
// library's own kernels: matrices are assembled by hand with Kronecker products.

#ifndef DRPP_TESTS_ORACLES_H
#define DRPP_TESTS_ORACLES_H

#include <array>

#include <Eigen/Dense>

#include "drpp/bell_diagonal.h"

namespace drpp::oracle {

using CMatrix = Eigen::MatrixXcd;

/// Bell state for pair class k: Phi+, Phi-, Psi+, Psi- with qubit a as bit 0.
Eigen::Vector4cd bell_vector(size_t k);

struct TwoPairResult {
    std::array<double, 4> probs;
    double success_prob;
};

/// Two copies of `bd` on four qubits (a1, b1, a2, b2), the bilateral relabelling for
/// `partner`, bilateral CNOT from pair 1 onto pair 2, Z-measurement of pair 2 with
/// coincidence post-selection, relabelling undone, Bell components read off.
TwoPairResult two_pair_recurrence(const BellDiagonal &bd, PairClass partner);

/// e^{-H/T} / tr via a matrix exponential.
CMatrix gibbs_by_expm(const CMatrix &hamiltonian, double temperature);

/// Root of (1 - p(T))^2 = 1/2 in T for p(T) = 1 / (1 + e^{B/T}), via TOMS 748.
double critical_temperature_toms748(double coupling);

}  // namespace drpp::oracle

#endif  // DRPP_TESTS_ORACLES_H
