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

#ifndef DRPP_DENSE_H
#define DRPP_DENSE_H

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "drpp/graph.h"

/// Exact state-vector / density-matrix simulation for small registers.
///
/// Qubit q is bit q of a basis-state index (qubit 0 is least significant). All
/// checks elsewhere in the library are ultimately judged against this module.
namespace drpp::dense {

inline constexpr size_t kMaxQubits = 12;
inline constexpr size_t kMaxThermalQubits = 10;
inline constexpr double kNormTolerance = 1e-12;

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

class StateVector {
   public:
    StateVector() = default;
    StateVector(size_t num_qubits, Vector amplitudes);

    /// |0...0> on num_qubits qubits.
    static StateVector zeros(size_t num_qubits);
    /// |+>^{num_qubits}.
    static StateVector plus(size_t num_qubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    const Vector &amplitudes() const {
        return amps_;
    }
    Vector &amplitudes() {
        return amps_;
    }
    double norm() const {
        return amps_.norm();
    }
    /// Throws ContractError unless the norm is 1 within kNormTolerance.
    void require_normalized() const;

   private:
    size_t num_qubits_ = 0;
    Vector amps_;
};

class DensityMatrix {
   public:
    DensityMatrix() = default;
    DensityMatrix(size_t num_qubits, Matrix rho);
    static DensityMatrix from_pure(const StateVector &psi);

    size_t num_qubits() const {
        return num_qubits_;
    }
    const Matrix &matrix() const {
        return rho_;
    }
    Matrix &matrix() {
        return rho_;
    }
    Complex trace() const {
        return rho_.trace();
    }
    /// Throws ContractError unless Hermitian with unit trace (1e-12) and eigenvalues >= -1e-10.
    void require_valid() const;

   private:
    size_t num_qubits_ = 0;
    Matrix rho_;
};

enum class Gate { X, Y, Z, H, S, Sdg, CZ, CNOT };

/// Applies a gate in place. For CNOT, q0 is the control; single-qubit gates ignore q1.
void apply_gate(StateVector &state, Gate gate, size_t q0, size_t q1 = 0);
void apply_gate(DensityMatrix &state, Gate gate, size_t q0, size_t q1 = 0);

/// Arbitrary single-qubit unitary u (2x2) on qubit q.
void apply_single(StateVector &state, const Eigen::Matrix2cd &u, size_t q);
void apply_single(DensityMatrix &state, const Eigen::Matrix2cd &u, size_t q);

/// Multiplies by Z on every qubit in `mask`.
void apply_z_mask(StateVector &state, VertexSet mask);
void apply_z_mask(DensityMatrix &state, VertexSet mask);

enum class Basis { X, Z };

struct Measurement {
    double probability;
    StateVector post_state;
};

struct MixedMeasurement {
    double probability;
    DensityMatrix post_state;
};

/// Projects qubit q onto `outcome` (0 -> +1 eigenvector, 1 -> -1 eigenvector) of the
/// basis. The qubit stays in the register. A zero-probability branch returns the
/// unnormalized (zero) post state.
Measurement measure(const StateVector &state, size_t q, Basis basis, int outcome);
MixedMeasurement measure(const DensityMatrix &state, size_t q, Basis basis, int outcome);

/// Like measure(), then removes the collapsed qubit; higher qubits shift down by one.
Measurement measure_and_remove(const StateVector &state, size_t q, Basis basis, int outcome);
MixedMeasurement measure_and_remove(const DensityMatrix &state, size_t q, Basis basis, int outcome);

/// Tensor product a (low qubits) with b (high qubits).
StateVector tensor(const StateVector &a, const StateVector &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);

/// Relabels qubits: qubit q of `state` becomes qubit new_index[q] of the result.
StateVector permute_qubits(const StateVector &state, const std::vector<size_t> &new_index);

/// Traces out the qubits in `traced`; survivors keep their relative order.
DensityMatrix partial_trace(const DensityMatrix &state, VertexSet traced);

/// |<a|b>|^2.
double fidelity(const StateVector &a, const StateVector &b);
/// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityMatrix &a, const DensityMatrix &b);
/// Half the trace norm of the difference.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);
/// sqrt(1 - |<a|b>|^2); the trace distance of the two pure states.
double trace_distance(const StateVector &a, const StateVector &b);

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> spectrum(const Matrix &hermitian);

/// Dense operator X^x Z^z (Z factors act first).
Matrix pauli_operator(size_t num_qubits, VertexSet x_mask, VertexSet z_mask);

/// K_i = X_i prod_{j in N(i)} Z_j.
Matrix stabilizer(const Graph &g, size_t i);

/// prod_{edges} CZ |+>^n.
StateVector graph_state_vector(const Graph &g);

/// Z^pattern |G>.
StateVector graph_basis_state(const Graph &g, VertexSet pattern);

/// H = -(B/2) sum_i K_i.
Matrix graph_hamiltonian(const Graph &g, double coupling);

/// U_G (B sum_i X_i) U_G^dagger with U_G the product of CZ over the edges of g.
Matrix isospectral_hamiltonian(const Graph &g, double coupling);

/// Gibbs state e^{-H/T} / tr(e^{-H/T}), built from the commuting stabilizers as
/// prod_i (I + tanh(B/2T) K_i) / tr. Requires T > 0.
DensityMatrix thermal_state(const Graph &g, double coupling, double temperature);

/// sum_e p^{|e|} (1-p)^{n-|e|} Z^e |G><G| Z^e, p = 1 / (1 + e^{B/T}).
DensityMatrix thermal_state_via_errors(const Graph &g, double coupling, double temperature);

/// Independent Z-flip noise with probability p on every qubit of |G>.
DensityMatrix z_noise_state(const Graph &g, double p);

/// Reference e^{-H/T} / tr via a generic Hermitian eigendecomposition of H.
DensityMatrix gibbs_state_by_diagonalization(const Matrix &hamiltonian, size_t num_qubits, double temperature);

}  // namespace drpp::dense

#endif  // DRPP_DENSE_H
