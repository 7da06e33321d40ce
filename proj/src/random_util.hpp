// SPDX-License-Identifier: Apache-2.0
//
// deism: room transfer functions between directional transducers
// Copyright (C) 2026 The deism authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DEISM_RANDOM_UTIL_HPP
#define DEISM_RANDOM_UTIL_HPP

// Portable draws from mt19937_64. The standard distributions are implementation-defined, so
// seeded outputs would differ between standard libraries.

#include <cstdint>
#include <random>

namespace deism::detail
{
    // Uniform on [0, 1) from the top 53 bits.
    inline double unit_uniform(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

    inline double uniform(std::mt19937_64 &rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

    inline bool coin(std::mt19937_64 &rng) { return (rng() >> 63) != 0; }
}

#endif
