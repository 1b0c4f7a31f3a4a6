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

#include "support/oracles.h"

#include <cmath>
#include <complex>

#include <boost/math/tools/roots.hpp>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace drpp::oracle {

namespace {

using C = std::complex<double>;

Eigen::Matrix2cd identity2() {
    return Eigen::Matrix2cd::Identity();
}

/// Single-qubit operators u0..u3 on qubits 0..3 (qubit 0 least significant).
CMatrix kron4(const Eigen::Matrix2cd &u0, const Eigen::Matrix2cd &u1, const Eigen::Matrix2cd &u2,
              const Eigen::Matrix2cd &u3) {
    CMatrix high = Eigen::kroneckerProduct(u3, u2).eval();
    CMatrix low = Eigen::kroneckerProduct(u1, u0).eval();
    return Eigen::kroneckerProduct(high, low).eval();
}

CMatrix cnot(size_t control, size_t target) {
    CMatrix m = CMatrix::Zero(16, 16);
    for (size_t i = 0; i < 16; i++) {
        size_t j = ((i >> control) & 1) ? i ^ (size_t{1} << target) : i;
        m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1;
    }
    return m;
}

Eigen::Matrix2cd rx(double theta) {
    Eigen::Matrix2cd m;
    m << std::cos(theta / 2), C(0, -std::sin(theta / 2)), C(0, -std::sin(theta / 2)), std::cos(theta / 2);
    return m;
}

Eigen::Matrix2cd hadamard() {
    Eigen::Matrix2cd m;
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

}  // namespace

Eigen::Vector4cd bell_vector(size_t k) {
    const double s = 1 / std::sqrt(2.0);
    switch (k) {
        case 0:
            return Eigen::Vector4cd(s, 0, 0, s);
        case 1:
            return Eigen::Vector4cd(s, 0, 0, -s);
        case 2:
            return Eigen::Vector4cd(0, s, s, 0);
        default:
            return Eigen::Vector4cd(0, s, -s, 0);
    }
}

TwoPairResult two_pair_recurrence(const BellDiagonal &bd, PairClass partner) {
    Eigen::Matrix4cd pair = Eigen::Matrix4cd::Zero();
    for (size_t k = 0; k < 4; k++) {
        Eigen::Vector4cd v = bell_vector(k);
        pair += bd.probs[k] * v * v.adjoint();
    }
    CMatrix rho = Eigen::kroneckerProduct(pair, pair).eval();

    Eigen::Matrix2cd ua = identity2();
    Eigen::Matrix2cd ub = identity2();
    if (partner == PairClass::Zb) {
        ua = hadamard();
        ub = hadamard();
    } else if (partner == PairClass::ZaZb) {
        ua = rx(M_PI / 2);
        ub = rx(-M_PI / 2);
    }
    CMatrix u = kron4(ua, ub, ua, ub);
    rho = u * rho * u.adjoint();

    CMatrix cnots = cnot(1, 3) * cnot(0, 2);
    rho = cnots * rho * cnots.adjoint();

    CMatrix keep = CMatrix::Zero(16, 16);
    for (size_t i = 0; i < 16; i++) {
        if (((i >> 2) & 1) == ((i >> 3) & 1)) {
            keep(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1;
        }
    }
    rho = keep * rho * keep;
    const double success = rho.trace().real();

    Eigen::Matrix4cd reduced = Eigen::Matrix4cd::Zero();
    for (Eigen::Index hi = 0; hi < 4; hi++) {
        reduced += rho.block(hi * 4, hi * 4, 4, 4);
    }
    reduced /= success;
    Eigen::Matrix4cd undo = Eigen::kroneckerProduct(ub, ua).eval().adjoint();
    reduced = undo * reduced * undo.adjoint();

    TwoPairResult out{};
    out.success_prob = success;
    for (size_t k = 0; k < 4; k++) {
        Eigen::Vector4cd v = bell_vector(k);
        out.probs[k] = (v.adjoint() * reduced * v)(0, 0).real();
    }
    return out;
}

CMatrix gibbs_by_expm(const CMatrix &hamiltonian, double temperature) {
    CMatrix e = (-hamiltonian / temperature).exp();
    return e / e.trace();
}

double critical_temperature_toms748(double coupling) {
    auto f = [coupling](double t) {
        double p = 1 / (1 + std::exp(coupling / t));
        return (1 - p) * (1 - p) - 0.5;
    };
    boost::uintmax_t iterations = 200;
    auto bracket = boost::math::tools::toms748_solve(f, 1e-3 * coupling, 100 * coupling,
                                                     boost::math::tools::eps_tolerance<double>(52), iterations);
    return (bracket.first + bracket.second) / 2;
}

}  // namespace drpp::oracle
