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
#ifndef DEISM_SPHERE_GRID_HPP
#define DEISM_SPHERE_GRID_HPP

#include <vector>

namespace deism
{
    struct Direction
    {
        double theta = 0.0; // inclination [rad], 0..pi
        double phi = 0.0;   // azimuth [rad]
    };

    struct SphereGrid
    {
        std::vector<Direction> directions;
        std::vector<double> weights; // quadrature weights, sum to 4 pi; empty when not a quadrature
    };

    // Near-uniform Fibonacci spiral with the given number of points. No quadrature weights.
    SphereGrid fibonacci_grid(int count);

    // Gauss-Legendre nodes in cos(theta) times a uniform azimuth grid. Integrates spherical
    // polynomials exactly up to degree min(2 n_theta - 1, n_phi - 1).
    SphereGrid gauss_legendre_grid(int n_theta, int n_phi);

    // Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
    void gauss_legendre_nodes(int n, std::vector<double> &nodes, std::vector<double> &weights);
}

#endif
