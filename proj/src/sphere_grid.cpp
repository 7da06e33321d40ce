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
#include "deism/sphere_grid.hpp"
#include "deism/error.hpp"
#include "deism/sph_core.hpp"

#include <cmath>

namespace deism
{
    SphereGrid fibonacci_grid(int count)
    {
        if (count < 1)
            throw DomainError("fibonacci_grid: count must be positive");
        SphereGrid grid;
        grid.directions.reserve(count);
        const double golden = pi * (3.0 - std::sqrt(5.0));
        for (int j = 0; j < count; ++j)
        {
            const double z = 1.0 - (2.0 * j + 1.0) / count;
            const double phi = std::remainder(golden * j, 2.0 * pi);
            grid.directions.push_back({std::acos(z), phi});
        }
        return grid;
    }

    void gauss_legendre_nodes(int n, std::vector<double> &nodes, std::vector<double> &weights)
    {
        if (n < 1)
            throw DomainError("gauss_legendre_nodes: n must be positive");
        nodes.assign(n, 0.0);
        weights.assign(n, 0.0);
        if (n == 1)
        {
            weights[0] = 2.0;
            return;
        }
        for (int i = 0; i < (n + 1) / 2; ++i)
        {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter)
            {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= n; ++k)
                {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            nodes[i] = x;
            nodes[n - 1 - i] = -x;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
    }

    SphereGrid gauss_legendre_grid(int n_theta, int n_phi)
    {
        if (n_theta < 1 || n_phi < 1)
            throw DomainError("gauss_legendre_grid: grid sizes must be positive");
        std::vector<double> x, w;
        gauss_legendre_nodes(n_theta, x, w);
        SphereGrid grid;
        grid.directions.reserve(static_cast<std::size_t>(n_theta) * n_phi);
        grid.weights.reserve(static_cast<std::size_t>(n_theta) * n_phi);
        for (int i = 0; i < n_theta; ++i)
            for (int j = 0; j < n_phi; ++j)
            {
                grid.directions.push_back({std::acos(x[i]), 2.0 * pi * j / n_phi});
                grid.weights.push_back(w[i] * 2.0 * pi / n_phi);
            }
        return grid;
    }
}
