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

#include "deism/synthetic.hpp"
#include "deism/error.hpp"
#include "random_util.hpp"

#include <cmath>
#include <random>

namespace deism
{
    void SyntheticDirectivitySpec::validate() const
    {
        if (max_order < 0)
            throw ConfigError("synthetic directivity order must be non-negative");
        if (monopole_count < 1)
            throw ConfigError("synthetic directivity needs at least one monopole");
        if (!(r0 > 0.0) || !std::isfinite(r0))
            throw ConfigError("synthetic directivity radius must be positive");
    }

    std::vector<SyntheticMonopole> synthetic_monopoles(const SyntheticDirectivitySpec &spec)
    {
        spec.validate();
        std::mt19937_64 rng(spec.seed);
        std::vector<SyntheticMonopole> out;
        out.reserve(static_cast<std::size_t>(spec.monopole_count));
        for (int j = 0; j < spec.monopole_count; ++j)
        {
            SyntheticMonopole mono;
            const double radius = spec.r0 * detail::uniform(rng, 0.4, 0.9);
            if (j == 0)
            {
                mono.x = radius;
            }
            else
            {
                const double cos_theta = detail::uniform(rng, -1.0, 1.0);
                const double phi = detail::uniform(rng, -pi, pi);
                const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
                mono.x = radius * sin_theta * std::cos(phi);
                mono.y = radius * sin_theta * std::sin(phi);
                mono.z = radius * cos_theta;
            }
            const double mag = j == 0 ? 1.0 : detail::uniform(rng, 0.2, 0.7);
            const double phase = j == 0 ? 0.0 : detail::uniform(rng, -pi, pi);
            mono.weight = std::polar(mag, phase);
            out.push_back(mono);
        }
        return out;
    }

    ShCoefficients synthetic_coefficients(const SyntheticDirectivitySpec &spec, double k)
    {
        if (!(k > 0.0))
            throw DomainError("wavenumber must be positive");
        const auto monopoles = synthetic_monopoles(spec);
        ShCoefficients c = ShCoefficients::zeros(spec.max_order);
        std::vector<double> jn(static_cast<std::size_t>(spec.max_order) + 1);
        std::vector<cdouble> y(sh_count(spec.max_order));
        for (const auto &mono : monopoles)
        {
            const Spherical s = to_spherical(mono.x, mono.y, mono.z);
            spherical_bessel_j_all(spec.max_order, k * s.r, jn);
            spherical_harmonics_all(spec.max_order, s.theta, s.phi, y);
            const cdouble scale = mono.weight * cdouble(0.0, -k);
            for (int n = 0; n <= spec.max_order; ++n)
                for (int m = -n; m <= n; ++m)
                    c(n, m) += scale * jn[static_cast<std::size_t>(n)] * std::conj(y[sh_index(n, m)]);
        }
        return c;
    }

    Directivity synthetic_directivity(const SyntheticDirectivitySpec &spec, const std::vector<double> &frequencies,
                                      const Medium &medium)
    {
        medium.validate();
        std::vector<ShCoefficients> coeffs;
        coeffs.reserve(frequencies.size());
        for (double f : frequencies)
            coeffs.push_back(synthetic_coefficients(spec, medium.wavenumber(f)));
        return Directivity(spec.kind, spec.r0, frequencies, std::move(coeffs));
    }
}
