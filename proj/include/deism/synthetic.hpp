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

#ifndef DEISM_SYNTHETIC_HPP
#define DEISM_SYNTHETIC_HPP

// Seeded stand-ins for measured transducer data.

#include "deism/directivity.hpp"

#include <cstdint>
#include <vector>

namespace deism
{
    // A cluster of monopoles inside a sphere of radius r0. Its exterior field is exactly
    //
    //   sum_j w_j e^{-ik|r - a_j|} / (4 pi |r - a_j|),
    //
    // so C_{n,m}(k) = sum_j w_j (-ik) j_n(k |a_j|) Y*_{n,m}(a_j / |a_j|), here truncated at max_order.
    // The first monopole always sits on the +x axis, giving the pattern a front.
    struct SyntheticDirectivitySpec
    {
        int max_order = 5;
        int monopole_count = 4;
        double r0 = 0.2;          // [m]
        std::uint64_t seed = 1;
        DirectivityKind kind = DirectivityKind::source;

        // Throws ConfigError for negative order, count < 1 or r0 <= 0.
        void validate() const;
    };

    struct SyntheticMonopole
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;
        cdouble weight{1.0, 0.0};
    };

    // Deterministic for a given spec on every platform.
    std::vector<SyntheticMonopole> synthetic_monopoles(const SyntheticDirectivitySpec &spec);

    ShCoefficients synthetic_coefficients(const SyntheticDirectivitySpec &spec, double k);

    Directivity synthetic_directivity(const SyntheticDirectivitySpec &spec, const std::vector<double> &frequencies,
                                      const Medium &medium);
}

#endif
