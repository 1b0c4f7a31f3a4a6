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

#ifndef DRPP_ERRORS_H
#define DRPP_ERRORS_H

#include <stdexcept>
#include <string>

namespace drpp {

/// Invalid argument supplied to an operation (bad family parameters, p out of
/// range, u == v, ...). The message names the violated constraint.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds what a representation supports (dense oracle n > 12,
/// pattern simulation n > 64).
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// An input violated a documented contract (e.g. a non-normalized state handed
/// to the dense oracle).
struct ContractError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace drpp

#endif  // DRPP_ERRORS_H
