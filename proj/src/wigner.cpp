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
#include "deism/sph_core.hpp"
#include "deism/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

namespace deism
{
    namespace
    {
        constexpr int max_factorial = 300;

        const std::array<long double, max_factorial + 1> &factorials()
        {
            static const auto table = []
            {
                std::array<long double, max_factorial + 1> f{};
                f[0] = 1.0L;
                for (int i = 1; i <= max_factorial; ++i)
                    f[i] = f[i - 1] * i;
                return f;
            }();
            return table;
        }
    }

    double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3)
    {
        if (j1 < 0 || j2 < 0 || j3 < 0)
            return 0.0;
        if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3)
            return 0.0;
        if (m1 + m2 + m3 != 0)
            return 0.0;
        if (j3 < std::abs(j1 - j2) || j3 > j1 + j2)
            return 0.0;
        if (m1 == 0 && m2 == 0 && m3 == 0 && (j1 + j2 + j3) % 2 != 0)
            return 0.0;
        if (j1 + j2 + j3 + 1 > max_factorial)
            throw DomainError("wigner3j: angular momenta too large for the factorial table");

        const auto &f = factorials();
        const int k_min = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
        const int k_max = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});

        long double sum = 0.0L;
        for (int k = k_min; k <= k_max; ++k)
        {
            const long double denom = f[k] * f[j3 - j2 + k + m1] * f[j3 - j1 + k - m2] *
                                      f[j1 + j2 - j3 - k] * f[j1 - k - m1] * f[j2 - k + m2];
            sum += ((k % 2) ? -1.0L : 1.0L) / denom;
        }

        const long double triangle =
            f[j1 + j2 - j3] * f[j1 - j2 + j3] * f[-j1 + j2 + j3] / f[j1 + j2 + j3 + 1];
        const long double moments =
            f[j1 + m1] * f[j1 - m1] * f[j2 + m2] * f[j2 - m2] * f[j3 + m3] * f[j3 - m3];
        const int phase_exp = j1 - j2 - m3;
        const long double phase = (((phase_exp % 2) + 2) % 2) ? -1.0L : 1.0L;
        return static_cast<double>(phase * std::sqrt(triangle * moments) * sum);
    }

    std::size_t WignerTable::required_bytes(int max_n, int max_v) noexcept
    {
        const std::size_t nvl = static_cast<std::size_t>(max_n + 1) * (max_v + 1) * (max_n + max_v + 1);
        const std::size_t mu = static_cast<std::size_t>(2 * max_n + 1) * (2 * max_v + 1);
        return nvl * (1 + mu) * sizeof(double);
    }

    WignerTable::WignerTable(int max_n, int max_v, std::size_t memory_budget)
        : max_n_(max_n), max_v_(max_v)
    {
        if (max_n < 0 || max_v < 0)
            throw DomainError("WignerTable: maximum orders must be non-negative");
        const std::size_t bytes = required_bytes(max_n, max_v);
        if (bytes > memory_budget)
            throw ResourceError("WignerTable(" + std::to_string(max_n) + ", " + std::to_string(max_v) +
                                ") needs " + std::to_string(bytes) + " bytes, budget is " +
                                std::to_string(memory_budget));

        const std::size_t nvl = static_cast<std::size_t>(max_n + 1) * (max_v + 1) * (max_l() + 1);
        w1_.assign(nvl, 0.0);
        w2_.assign(nvl * (2 * max_n + 1) * (2 * max_v + 1), 0.0);

        for (int n = 0; n <= max_n; ++n)
            for (int v = 0; v <= max_v; ++v)
                for (int l = std::abs(n - v); l <= n + v; ++l)
                {
                    w1_[offset1(n, v, l)] = wigner3j(n, v, l, 0, 0, 0);
                    for (int m = -n; m <= n; ++m)
                        for (int u = -v; u <= v; ++u)
                            if (std::abs(m - u) <= l)
                                w2_[offset2(n, v, l, m, u)] = wigner3j(n, v, l, -m, u, m - u);
                }
    }

    double WignerTable::w1(int n, int v, int l) const
    {
        if (n < 0 || n > max_n_ || v < 0 || v > max_v_ || l < 0 || l > max_l())
            throw DomainError("WignerTable::w1 index outside table bounds");
        return w1_[offset1(n, v, l)];
    }

    double WignerTable::w2(int n, int v, int l, int m, int u) const
    {
        if (n < 0 || n > max_n_ || v < 0 || v > max_v_ || l < 0 || l > max_l())
            throw DomainError("WignerTable::w2 index outside table bounds");
        if (std::abs(m) > n || std::abs(u) > v)
            return 0.0;
        return w2_[offset2(n, v, l, m, u)];
    }
}
