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

#ifndef DRPP_RNG_H
#define DRPP_RNG_H

#include <cstdint>
#include <random>

namespace drpp {

using Rng = std::mt19937_64;

/// Seed for stream `index` of a master seed (splitmix64 finalizer over both words).
/// Every Monte Carlo shot draws from its own stream, so results depend only on
/// (seed, shot index) and never on how shots are spread across workers.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline Rng stream(uint64_t master, uint64_t index) {
    return Rng(derive_seed(master, index));
}

}  // namespace drpp

#endif  // DRPP_RNG_H
