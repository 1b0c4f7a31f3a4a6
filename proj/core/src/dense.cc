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

#include "drpp/dense.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "drpp/errors.h"
#include "drpp/thermal.h"

namespace drpp::dense {

namespace {

constexpr Complex kI{0, 1};

void check_capacity(size_t n, size_t cap, const char *what) {
    if (n > cap) {
        throw CapacityError(std::string(what) + ": " + std::to_string(n) + " qubits exceeds the dense limit of " +
                            std::to_string(cap));
    }
}

void check_qubit(size_t n, size_t q) {
    if (q >= n) {
        throw ParameterError("qubit " + std::to_string(q) + " out of range for " + std::to_string(n) + " qubits");
    }
}

size_t dim_of(size_t n) {
    return size_t{1} << n;
}

/// Removes bit q from an index, shifting the higher bits down.
size_t drop_bit(size_t index, size_t q) {
    size_t low = index & ((size_t{1} << q) - 1);
    return low | ((index >> (q + 1)) << q);
}

void kernel(Complex *a, size_t dim, Gate gate, size_t q0, size_t q1) {
    const size_t m0 = size_t{1} << q0;
    const size_t m1 = size_t{1} << q1;
    switch (gate) {
        case Gate::X:
            for (size_t i = 0; i < dim; i++) {
                if (!(i & m0)) {
                    std::swap(a[i], a[i | m0]);
                }
            }
            return;
        case Gate::Y:
            for (size_t i = 0; i < dim; i++) {
                if (!(i & m0)) {
                    Complex zero = a[i];
                    Complex one = a[i | m0];
                    a[i] = -kI * one;
                    a[i | m0] = kI * zero;
                }
            }
            return;
        case Gate::Z:
            for (size_t i = 0; i < dim; i++) {
                if (i & m0) {
                    a[i] = -a[i];
                }
            }
            return;
        case Gate::H: {
            const double r = M_SQRT1_2;
            for (size_t i = 0; i < dim; i++) {
                if (!(i & m0)) {
                    Complex zero = a[i];
                    Complex one = a[i | m0];
                    a[i] = r * (zero + one);
                    a[i | m0] = r * (zero - one);
                }
            }
            return;
        }
        case Gate::S:
        case Gate::Sdg: {
            Complex phase = gate == Gate::S ? kI : -kI;
            for (size_t i = 0; i < dim; i++) {
                if (i & m0) {
                    a[i] *= phase;
                }
            }
            return;
        }
        case Gate::CZ:
            for (size_t i = 0; i < dim; i++) {
                if ((i & m0) && (i & m1)) {
                    a[i] = -a[i];
                }
            }
            return;
        case Gate::CNOT:
            for (size_t i = 0; i < dim; i++) {
                if ((i & m0) && !(i & m1)) {
                    std::swap(a[i], a[i | m1]);
                }
            }
            return;
    }
}

void single_kernel(Complex *a, size_t dim, const Eigen::Matrix2cd &u, size_t q) {
    const size_t m = size_t{1} << q;
    for (size_t i = 0; i < dim; i++) {
        if (!(i & m)) {
            Complex zero = a[i];
            Complex one = a[i | m];
            a[i] = u(0, 0) * zero + u(0, 1) * one;
            a[i | m] = u(1, 0) * zero + u(1, 1) * one;
        }
    }
}

/// rho -> U rho U^dagger given a column kernel applying U.
template <typename ColumnOp>
void conjugate(Matrix &rho, ColumnOp op) {
    const auto dim = static_cast<size_t>(rho.rows());
    for (Eigen::Index c = 0; c < rho.cols(); c++) {
        op(rho.col(c).data(), dim);
    }
    Matrix m = rho.adjoint();
    for (Eigen::Index c = 0; c < m.cols(); c++) {
        op(m.col(c).data(), dim);
    }
    rho = m.adjoint();
}

void check_gate_qubits(size_t n, Gate gate, size_t q0, size_t q1) {
    check_qubit(n, q0);
    if (gate == Gate::CZ || gate == Gate::CNOT) {
        check_qubit(n, q1);
        if (q0 == q1) {
            throw ParameterError("two-qubit gate needs distinct qubits");
        }
    }
}

void check_outcome(int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw ParameterError("measurement outcome must be 0 or 1");
    }
}

}  // namespace

StateVector::StateVector(size_t num_qubits, Vector amplitudes) : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
    check_capacity(num_qubits, kMaxQubits, "state vector");
    if (static_cast<size_t>(amps_.size()) != dim_of(num_qubits)) {
        throw ParameterError("amplitude vector length does not match 2^n");
    }
}

StateVector StateVector::zeros(size_t num_qubits) {
    check_capacity(num_qubits, kMaxQubits, "state vector");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_of(num_qubits)));
    v(0) = 1;
    return StateVector(num_qubits, std::move(v));
}

StateVector StateVector::plus(size_t num_qubits) {
    check_capacity(num_qubits, kMaxQubits, "state vector");
    auto dim = static_cast<Eigen::Index>(dim_of(num_qubits));
    Vector v = Vector::Constant(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0));
    return StateVector(num_qubits, std::move(v));
}

void StateVector::require_normalized() const {
    if (std::abs(amps_.norm() - 1) > kNormTolerance) {
        throw ContractError("state vector is not normalized (norm " + std::to_string(amps_.norm()) + ")");
    }
}

DensityMatrix::DensityMatrix(size_t num_qubits, Matrix rho) : num_qubits_(num_qubits), rho_(std::move(rho)) {
    check_capacity(num_qubits, kMaxQubits, "density matrix");
    auto dim = static_cast<Eigen::Index>(dim_of(num_qubits));
    if (rho_.rows() != dim || rho_.cols() != dim) {
        throw ParameterError("density matrix shape does not match 2^n x 2^n");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi) {
    return DensityMatrix(psi.num_qubits(), psi.amplitudes() * psi.amplitudes().adjoint());
}

void DensityMatrix::require_valid() const {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw ContractError("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1, 0)) > kNormTolerance) {
        throw ContractError("density matrix trace differs from 1");
    }
    auto eig = spectrum(rho_);
    if (!eig.empty() && eig.front() < -1e-10) {
        throw ContractError("density matrix has a negative eigenvalue");
    }
}

void apply_gate(StateVector &state, Gate gate, size_t q0, size_t q1) {
    check_gate_qubits(state.num_qubits(), gate, q0, q1);
    kernel(state.amplitudes().data(), dim_of(state.num_qubits()), gate, q0, q1);
}

void apply_gate(DensityMatrix &state, Gate gate, size_t q0, size_t q1) {
    check_gate_qubits(state.num_qubits(), gate, q0, q1);
    conjugate(state.matrix(), [&](Complex *a, size_t dim) { kernel(a, dim, gate, q0, q1); });
}

void apply_single(StateVector &state, const Eigen::Matrix2cd &u, size_t q) {
    check_qubit(state.num_qubits(), q);
    single_kernel(state.amplitudes().data(), dim_of(state.num_qubits()), u, q);
}

void apply_single(DensityMatrix &state, const Eigen::Matrix2cd &u, size_t q) {
    check_qubit(state.num_qubits(), q);
    conjugate(state.matrix(), [&](Complex *a, size_t dim) { single_kernel(a, dim, u, q); });
}

void apply_z_mask(StateVector &state, VertexSet mask) {
    auto &a = state.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); i++) {
        if (popcount(static_cast<VertexSet>(i) & mask) & 1) {
            a(i) = -a(i);
        }
    }
}

void apply_z_mask(DensityMatrix &state, VertexSet mask) {
    auto &m = state.matrix();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        bool sr = popcount(static_cast<VertexSet>(r) & mask) & 1;
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            bool sc = popcount(static_cast<VertexSet>(c) & mask) & 1;
            if (sr != sc) {
                m(r, c) = -m(r, c);
            }
        }
    }
}

Measurement measure(const StateVector &state, size_t q, Basis basis, int outcome) {
    check_qubit(state.num_qubits(), q);
    check_outcome(outcome);
    state.require_normalized();
    StateVector post = state;
    if (basis == Basis::X) {
        apply_gate(post, Gate::H, q);
    }
    auto &a = post.amplitudes();
    const size_t m = size_t{1} << q;
    for (Eigen::Index i = 0; i < a.size(); i++) {
        if (static_cast<bool>(static_cast<size_t>(i) & m) != static_cast<bool>(outcome)) {
            a(i) = 0;
        }
    }
    if (basis == Basis::X) {
        apply_gate(post, Gate::H, q);
    }
    double prob = a.squaredNorm();
    if (prob > 0) {
        a /= std::sqrt(prob);
    }
    return {prob, std::move(post)};
}

MixedMeasurement measure(const DensityMatrix &state, size_t q, Basis basis, int outcome) {
    check_qubit(state.num_qubits(), q);
    check_outcome(outcome);
    if (std::abs(state.trace() - Complex(1, 0)) > kNormTolerance) {
        throw ContractError("density matrix trace differs from 1");
    }
    DensityMatrix post = state;
    if (basis == Basis::X) {
        apply_gate(post, Gate::H, q);
    }
    auto &rho = post.matrix();
    const size_t m = size_t{1} << q;
    for (Eigen::Index r = 0; r < rho.rows(); r++) {
        for (Eigen::Index c = 0; c < rho.cols(); c++) {
            bool keep_r = static_cast<bool>(static_cast<size_t>(r) & m) == static_cast<bool>(outcome);
            bool keep_c = static_cast<bool>(static_cast<size_t>(c) & m) == static_cast<bool>(outcome);
            if (!keep_r || !keep_c) {
                rho(r, c) = 0;
            }
        }
    }
    if (basis == Basis::X) {
        apply_gate(post, Gate::H, q);
    }
    double prob = rho.trace().real();
    if (prob > 0) {
        rho /= prob;
    }
    return {prob, std::move(post)};
}

Measurement measure_and_remove(const StateVector &state, size_t q, Basis basis, int outcome) {
    auto result = measure(state, q, basis, outcome);
    StateVector rotated = result.post_state;
    if (basis == Basis::X) {
        apply_gate(rotated, Gate::H, q);
    }
    size_t n = state.num_qubits();
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_of(n - 1)));
    const size_t m = size_t{1} << q;
    const auto &a = rotated.amplitudes();
    for (Eigen::Index i = 0; i < a.size(); i++) {
        if (static_cast<bool>(static_cast<size_t>(i) & m) == static_cast<bool>(outcome)) {
            out(static_cast<Eigen::Index>(drop_bit(static_cast<size_t>(i), q))) = a(i);
        }
    }
    return {result.probability, StateVector(n - 1, std::move(out))};
}

MixedMeasurement measure_and_remove(const DensityMatrix &state, size_t q, Basis basis, int outcome) {
    auto result = measure(state, q, basis, outcome);
    DensityMatrix rotated = result.post_state;
    if (basis == Basis::X) {
        apply_gate(rotated, Gate::H, q);
    }
    // The measured qubit is now |outcome>, so tracing it out is exact.
    return {result.probability, partial_trace(rotated, bit(q))};
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    size_t n = a.num_qubits() + b.num_qubits();
    check_capacity(n, kMaxQubits, "tensor product");
    Vector out(static_cast<Eigen::Index>(dim_of(n)));
    const auto da = static_cast<Eigen::Index>(dim_of(a.num_qubits()));
    for (Eigen::Index ib = 0; ib < b.amplitudes().size(); ib++) {
        for (Eigen::Index ia = 0; ia < da; ia++) {
            out(ib * da + ia) = a.amplitudes()(ia) * b.amplitudes()(ib);
        }
    }
    return StateVector(n, std::move(out));
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    size_t n = a.num_qubits() + b.num_qubits();
    check_capacity(n, kMaxQubits, "tensor product");
    const auto da = static_cast<Eigen::Index>(dim_of(a.num_qubits()));
    const auto db = static_cast<Eigen::Index>(dim_of(b.num_qubits()));
    Matrix out(da * db, da * db);
    for (Eigen::Index rb = 0; rb < db; rb++) {
        for (Eigen::Index cb = 0; cb < db; cb++) {
            out.block(rb * da, cb * da, da, da) = b.matrix()(rb, cb) * a.matrix();
        }
    }
    return DensityMatrix(n, std::move(out));
}

StateVector permute_qubits(const StateVector &state, const std::vector<size_t> &new_index) {
    const size_t n = state.num_qubits();
    if (new_index.size() != n) {
        throw ParameterError("permutation size differs from qubit count");
    }
    VertexSet image = 0;
    for (auto q : new_index) {
        if (q >= n || (image & bit(q))) {
            throw ParameterError("qubit relabelling is not a permutation");
        }
        image |= bit(q);
    }
    Vector out(state.amplitudes().size());
    for (size_t i = 0; i < dim_of(n); i++) {
        size_t j = 0;
        for (size_t q = 0; q < n; q++) {
            j |= ((i >> q) & 1) << new_index[q];
        }
        out(static_cast<Eigen::Index>(j)) = state.amplitudes()(static_cast<Eigen::Index>(i));
    }
    return StateVector(n, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix &state, VertexSet traced) {
    size_t n = state.num_qubits();
    std::vector<size_t> kept;
    std::vector<size_t> gone;
    for (size_t q = 0; q < n; q++) {
        ((traced >> q) & 1 ? gone : kept).push_back(q);
    }
    auto embed = [&](size_t kept_index, size_t gone_index) {
        size_t full = 0;
        for (size_t k = 0; k < kept.size(); k++) {
            full |= ((kept_index >> k) & 1) << kept[k];
        }
        for (size_t k = 0; k < gone.size(); k++) {
            full |= ((gone_index >> k) & 1) << gone[k];
        }
        return static_cast<Eigen::Index>(full);
    };
    const size_t dk = dim_of(kept.size());
    const size_t dg = dim_of(gone.size());
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    for (size_t r = 0; r < dk; r++) {
        for (size_t c = 0; c < dk; c++) {
            Complex sum = 0;
            for (size_t t = 0; t < dg; t++) {
                sum += state.matrix()(embed(r, t), embed(c, t));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
        }
    }
    return DensityMatrix(kept.size(), std::move(out));
}

double fidelity(const StateVector &a, const StateVector &b) {
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

namespace {

Matrix hermitian_sqrt(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix &a, const DensityMatrix &b) {
    Matrix sa = hermitian_sqrt(a.matrix());
    Matrix inner = sa * b.matrix() * sa;
    inner = (inner + inner.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(inner, Eigen::EigenvaluesOnly);
    double tr = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return tr * tr;
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ParameterError("trace distance between states of different size");
    }
    Matrix diff = a.matrix() - b.matrix();
    diff = (diff + diff.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum() / 2;
}

double trace_distance(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ParameterError("trace distance between states of different size");
    }
    // sqrt(1 - c^2) with c = |<a|b>|, written as sqrt((1 - c)(1 + c)) and 1 - c taken
    // from the phase-aligned difference so that nearly equal states do not cancel.
    Complex inner = a.amplitudes().dot(b.amplitudes());
    double c = std::abs(inner);
    Complex phase = c > 0 ? inner / c : Complex{1, 0};
    double one_minus_c = (a.amplitudes() - std::conj(phase) * b.amplitudes()).squaredNorm() / 2;
    return std::sqrt(std::max(0.0, one_minus_c * (1 + c)));
}

std::vector<double> spectrum(const Matrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

Matrix pauli_operator(size_t num_qubits, VertexSet x_mask, VertexSet z_mask) {
    check_capacity(num_qubits, kMaxQubits, "pauli operator");
    const size_t dim = dim_of(num_qubits);
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t i = 0; i < dim; i++) {
        double sign = (popcount(i & z_mask) & 1) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(i ^ x_mask), static_cast<Eigen::Index>(i)) = sign;
    }
    return m;
}

Matrix stabilizer(const Graph &g, size_t i) {
    if (i >= g.num_vertices()) {
        throw ParameterError("stabilizer index out of range");
    }
    return pauli_operator(g.num_vertices(), bit(i), g.neighbors(i));
}

StateVector graph_state_vector(const Graph &g) {
    check_capacity(g.num_vertices(), kMaxQubits, "graph state");
    StateVector psi = StateVector::plus(g.num_vertices());
    for (const auto &e : g.edges()) {
        apply_gate(psi, Gate::CZ, e.u, e.v);
    }
    return psi;
}

StateVector graph_basis_state(const Graph &g, VertexSet pattern) {
    StateVector psi = graph_state_vector(g);
    apply_z_mask(psi, pattern);
    return psi;
}

Matrix graph_hamiltonian(const Graph &g, double coupling) {
    check_capacity(g.num_vertices(), kMaxQubits, "graph hamiltonian");
    if (!(coupling > 0)) {
        throw ParameterError("coupling B must be > 0");
    }
    const auto dim = static_cast<Eigen::Index>(dim_of(g.num_vertices()));
    Matrix h = Matrix::Zero(dim, dim);
    for (size_t i = 0; i < g.num_vertices(); i++) {
        h -= 0.5 * coupling * stabilizer(g, i);
    }
    return h;
}

Matrix isospectral_hamiltonian(const Graph &g, double coupling) {
    size_t n = g.num_vertices();
    check_capacity(n, kMaxQubits, "isospectral hamiltonian");
    const size_t dim = dim_of(n);
    // U_G is diagonal with entries (-1)^{#edges inside the support of the index}.
    std::vector<double> u(dim);
    for (size_t i = 0; i < dim; i++) {
        size_t count = 0;
        for (const auto &e : g.edges()) {
            count += ((i >> e.u) & 1) & ((i >> e.v) & 1);
        }
        u[i] = (count & 1) ? -1.0 : 1.0;
    }
    Matrix field = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t q = 0; q < n; q++) {
        field += coupling * pauli_operator(n, bit(q), 0);
    }
    for (size_t r = 0; r < dim; r++) {
        for (size_t c = 0; c < dim; c++) {
            field(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *= u[r] * u[c];
        }
    }
    return field;
}

DensityMatrix thermal_state(const Graph &g, double coupling, double temperature) {
    size_t n = g.num_vertices();
    check_capacity(n, kMaxThermalQubits, "thermal state");
    if (!(coupling > 0) || !(temperature > 0)) {
        throw ParameterError("thermal state requires B > 0 and T > 0");
    }
    const size_t dim = dim_of(n);
    const double t = std::tanh(coupling / (2 * temperature));
    Matrix m = Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (size_t i = 0; i < n; i++) {
        // m <- (I + t K_i) m, with K_i |r> = (-1)^{|r & N(i)|} |r ^ bit(i)>.
        Matrix km(m.rows(), m.cols());
        const VertexSet x = bit(i);
        const VertexSet z = g.neighbors(i);
        for (size_t r = 0; r < dim; r++) {
            double sign = (popcount(r & z) & 1) ? -1.0 : 1.0;
            km.row(static_cast<Eigen::Index>(r ^ x)) = sign * m.row(static_cast<Eigen::Index>(r));
        }
        m += t * km;
    }
    m /= m.trace().real();
    return DensityMatrix(n, std::move(m));
}

DensityMatrix z_noise_state(const Graph &g, double p) {
    size_t n = g.num_vertices();
    check_capacity(n, kMaxThermalQubits, "z-noise state");
    if (!(p >= 0 && p <= 1)) {
        throw ParameterError("error probability must lie in [0, 1]");
    }
    const StateVector psi = graph_state_vector(g);
    const auto dim = static_cast<Eigen::Index>(dim_of(n));
    Matrix rho = Matrix::Zero(dim, dim);
    for (VertexSet e = 0; e < dim_of(n); e++) {
        size_t weight = popcount(e);
        double w = std::pow(p, static_cast<double>(weight)) * std::pow(1 - p, static_cast<double>(n - weight));
        if (w == 0) {
            continue;
        }
        StateVector v = psi;
        apply_z_mask(v, e);
        rho.noalias() += w * (v.amplitudes() * v.amplitudes().adjoint());
    }
    return DensityMatrix(n, std::move(rho));
}

DensityMatrix thermal_state_via_errors(const Graph &g, double coupling, double temperature) {
    return z_noise_state(g, error_prob(ThermalModel{coupling, temperature}));
}

DensityMatrix gibbs_state_by_diagonalization(const Matrix &hamiltonian, size_t num_qubits, double temperature) {
    if (!(temperature > 0)) {
        throw ParameterError("Gibbs state requires T > 0");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian);
    const auto &ev = solver.eigenvalues();
    double ground = ev.minCoeff();
    Eigen::VectorXd w = ((ground - ev.array()) / temperature).exp();
    Matrix rho = solver.eigenvectors() * w.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
    rho /= w.sum();
    return DensityMatrix(num_qubits, std::move(rho));
}

}  // namespace drpp::dense
