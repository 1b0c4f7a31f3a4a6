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

#ifndef DRPP_THERMAL_H
#define DRPP_THERMAL_H

namespace drpp {

/// Error probability at which a Z-noise pair has fidelity exactly 1/2: 1 - 1/sqrt(2).
inline constexpr double kCriticalErrorProb = 0.29289321881345247559915563789515;

/// Uniform-coupling graph Hamiltonian at temperature T (k_B = 1).
struct ThermalModel {
    double coupling;     // B > 0
    double temperature;  // T >= 0, may be +inf

    /// Throws ParameterError unless B > 0 and T >= 0.
    void validate() const;
};

/// Per-qubit Z-flip probability 1 / (1 + e^{B/T}); 0 at T = 0, 1/2 at T = inf.
double error_prob(const ThermalModel &model);

/// -B / ln(sqrt(2) - 1). Throws ParameterError for B <= 0.
double critical_temperature(double coupling);

/// Bisection on (1 - error_prob(B, T))^2 = 1/2; agrees with critical_temperature to ~1e-15 relative.
double critical_temperature_by_root_find(double coupling);

/// (1 - p)^2 > 1/2, evaluated as T < T_crit(B) so that T_crit itself is excluded exactly.
bool is_purifiable(const ThermalModel &model);

/// Inverse of error_prob for fixed B: the temperature giving flip probability p in [0, 1/2].
double temperature_for_error_prob(double coupling, double p);

}  // namespace drpp

#endif  // DRPP_THERMAL_H
