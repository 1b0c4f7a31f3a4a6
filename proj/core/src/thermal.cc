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

#include "drpp/thermal.h"

#include <cmath>
#include <limits>
#include <string>

#include "drpp/errors.h"

namespace drpp {

void ThermalModel::validate() const {
    if (!(coupling > 0) || !std::isfinite(coupling)) {
        throw ParameterError("coupling B must be finite and > 0, got " + std::to_string(coupling));
    }
    if (!(temperature >= 0)) {
        throw ParameterError("temperature T must be >= 0, got " + std::to_string(temperature));
    }
}

double error_prob(const ThermalModel &model) {
    model.validate();
    if (model.temperature == 0) {
        return 0;
    }
    // e^{B/T} overflows to inf for tiny T, which correctly yields p = 0.
    return 1 / (1 + std::exp(model.coupling / model.temperature));
}

double critical_temperature(double coupling) {
    if (!(coupling > 0) || !std::isfinite(coupling)) {
        throw ParameterError("critical temperature requires B > 0, got " + std::to_string(coupling));
    }
    return -coupling / std::log(std::sqrt(2.0) - 1);
}

double critical_temperature_by_root_find(double coupling) {
    if (!(coupling > 0)) {
        throw ParameterError("critical temperature requires B > 0");
    }
    auto excess = [&](double t) {
        double q = 1 - error_prob(ThermalModel{coupling, t});
        return q * q - 0.5;  // decreasing in t
    };
    double lo = 0;
    double hi = coupling;
    while (excess(hi) > 0) {
        hi *= 2;
    }
    for (int i = 0; i < 200 && hi - lo > 0; i++) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (excess(mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool is_purifiable(const ThermalModel &model) {
    model.validate();
    return model.temperature < critical_temperature(model.coupling);
}

double temperature_for_error_prob(double coupling, double p) {
    if (!(coupling > 0)) {
        throw ParameterError("coupling B must be > 0");
    }
    if (!(p >= 0 && p <= 0.5)) {
        throw ParameterError("error probability must lie in [0, 1/2], got " + std::to_string(p));
    }
    if (p == 0) {
        return 0;
    }
    if (p == 0.5) {
        return std::numeric_limits<double>::infinity();
    }
    return coupling / std::log((1 - p) / p);
}

}  // namespace drpp
