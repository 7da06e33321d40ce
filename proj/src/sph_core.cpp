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
#include <cmath>
#include <string>

namespace deism
{
    void SphIndex::validate() const
    {
        if (n < 0 || m < -n || m > n)
            throw DomainError("spherical harmonic index (n=" + std::to_string(n) + ", m=" +
                              std::to_string(m) + ") requires |m| <= n");
    }

    namespace
    {
        // Normalized associated Legendre values sqrt((2n+1)/(4pi) (n-m)!/(n+m)!) P_n^m(cos theta),
        // Condon-Shortley phase included, m >= 0 only. Written at sh_index(n, m).
        void normalized_legendre(int max_order, double cos_t, double sin_t, std::span<cdouble> out)
        {
            double pmm = 1.0 / std::sqrt(4.0 * pi);
            for (int m = 0; m <= max_order; ++m)
            {
                if (m > 0)
                    pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * sin_t;
                out[sh_index(m, m)] = pmm;
                if (m == max_order)
                    break;

                double p_prev = pmm;
                double p_curr = std::sqrt(2.0 * m + 3.0) * cos_t * pmm;
                out[sh_index(m + 1, m)] = p_curr;
                for (int n = m + 2; n <= max_order; ++n)
                {
                    const double a = std::sqrt((4.0 * n * n - 1.0) / (double(n) * n - double(m) * m));
                    const double b = std::sqrt((double(n - 1) * (n - 1) - double(m) * m) /
                                               (4.0 * (n - 1) * (n - 1) - 1.0));
                    const double p_next = a * (cos_t * p_curr - b * p_prev);
                    p_prev = p_curr;
                    p_curr = p_next;
                    out[sh_index(n, m)] = p_curr;
                }
            }
        }
    }

    void spherical_harmonics_all(int max_order, double theta, double phi, std::span<cdouble> out)
    {
        if (max_order < 0)
            throw DomainError("spherical harmonic order must be non-negative");
        if (out.size() < sh_count(max_order))
            throw DomainError("spherical harmonic output buffer too small");

        normalized_legendre(max_order, std::cos(theta), std::sin(theta), out);

        for (int m = 1; m <= max_order; ++m)
        {
            const cdouble e = std::polar(1.0, m * phi);
            const double sign = (m % 2) ? -1.0 : 1.0;
            for (int n = m; n <= max_order; ++n)
            {
                const cdouble y = out[sh_index(n, m)].real() * e;
                out[sh_index(n, m)] = y;
                out[sh_index(n, -m)] = sign * std::conj(y);
            }
        }
    }

    std::vector<cdouble> spherical_harmonics_all(int max_order, double theta, double phi)
    {
        std::vector<cdouble> out(sh_count(std::max(max_order, 0)));
        spherical_harmonics_all(max_order, theta, phi, out);
        return out;
    }

    cdouble spherical_harmonic(SphIndex idx, double theta, double phi)
    {
        idx.validate();
        const auto all = spherical_harmonics_all(idx.n, theta, phi);
        return all[sh_index(idx.n, idx.m)];
    }

    // ------------------------------------------------------------------------
    // Spherical Bessel functions

    namespace
    {
        double bessel_j_series(int n, double x)
        {
            double prefactor = 1.0;
            for (int i = 1; i <= n; ++i)
                prefactor *= x / (2.0 * i + 1.0);
            const double z = -0.5 * x * x;
            double term = 1.0;
            double sum = 1.0;
            for (int k = 1; k < 60; ++k)
            {
                term *= z / (k * (2.0 * n + 2.0 * k + 1.0));
                sum += term;
                if (std::abs(term) < 1e-17 * std::abs(sum))
                    break;
            }
            return prefactor * sum;
        }
    }

    void spherical_bessel_j_all(int max_order, double x, std::span<double> out)
    {
        if (max_order < 0)
            throw DomainError("spherical Bessel order must be non-negative");
        if (x < 0.0 || !std::isfinite(x))
            throw DomainError("spherical Bessel argument must be finite and non-negative");

        if (x == 0.0)
        {
            std::fill(out.begin(), out.begin() + max_order + 1, 0.0);
            out[0] = 1.0;
            return;
        }
        if (x < 1.0)
        {
            for (int n = 0; n <= max_order; ++n)
                out[n] = bessel_j_series(n, x);
            return;
        }

        const double s = std::sin(x);
        const double c = std::cos(x);
        const double j0 = s / x;
        const double j1 = s / (x * x) - c / x;

        if (x > max_order)
        {
            out[0] = j0;
            if (max_order >= 1)
                out[1] = j1;
            for (int n = 1; n < max_order; ++n)
                out[n + 1] = (2.0 * n + 1.0) / x * out[n] - out[n - 1];
            return;
        }

        // Miller's downward recurrence, normalized against the closed form of larger magnitude.
        const int top = std::max(max_order, static_cast<int>(x));
        const int start = top + 16 + static_cast<int>(std::sqrt(40.0 * (top + 1)));
        std::vector<double> t(static_cast<std::size_t>(start) + 2, 0.0);
        t[start] = 1e-30;
        for (int n = start; n > 0; --n)
        {
            t[n - 1] = (2.0 * n + 1.0) / x * t[n] - t[n + 1];
            if (std::abs(t[n - 1]) > 1e250)
                for (int k = n - 1; k <= start; ++k)
                    t[k] *= 1e-250;
        }
        const double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / t[0] : j1 / t[1];
        for (int n = 0; n <= max_order; ++n)
            out[n] = t[n] * scale;
    }

    double spherical_bessel_j(int n, double x)
    {
        std::vector<double> v(static_cast<std::size_t>(std::max(n, 1)) + 1);
        spherical_bessel_j_all(std::max(n, 1), x, v);
        return v[n];
    }

    double spherical_bessel_y(int n, double x)
    {
        if (n < 0)
            throw DomainError("spherical Bessel order must be non-negative");
        if (!(x > 0.0))
            throw SingularityError("spherical Neumann function is singular at x = 0");
        const double s = std::sin(x);
        const double c = std::cos(x);
        double y0 = -c / x;
        if (n == 0)
            return y0;
        double y1 = -c / (x * x) - s / x;
        for (int k = 1; k < n; ++k)
        {
            const double y2 = (2.0 * k + 1.0) / x * y1 - y0;
            y0 = y1;
            y1 = y2;
        }
        return y1;
    }

    void spherical_hankel2_all(int max_order, double x, std::span<cdouble> out)
    {
        if (!(x > 0.0))
            throw SingularityError("spherical Hankel function is singular at x = 0");
        const double s = std::sin(x);
        const double c = std::cos(x);
        double y_prev = -c / x;
        double y_curr = -c / (x * x) - s / x;

        if (x >= 1.0 && x > max_order)
        {
            // Upward recurrence is stable for both kinds here.
            double j_prev = s / x;
            double j_curr = s / (x * x) - c / x;
            out[0] = cdouble(j_prev, -y_prev);
            for (int n = 1; n <= max_order; ++n)
            {
                out[n] = cdouble(j_curr, -y_curr);
                const double f = (2.0 * n + 1.0) / x;
                const double j_next = f * j_curr - j_prev;
                const double y_next = f * y_curr - y_prev;
                j_prev = j_curr;
                j_curr = j_next;
                y_prev = y_curr;
                y_curr = y_next;
            }
            return;
        }

        std::vector<double> j(static_cast<std::size_t>(max_order) + 2);
        spherical_bessel_j_all(max_order + 1, x, j);
        out[0] = cdouble(j[0], -y_prev);
        for (int n = 1; n <= max_order; ++n)
        {
            out[n] = cdouble(j[n], -y_curr);
            const double y_next = (2.0 * n + 1.0) / x * y_curr - y_prev;
            y_prev = y_curr;
            y_curr = y_next;
        }
    }

    cdouble spherical_hankel2(int n, double x)
    {
        if (n < 0)
            throw DomainError("spherical Hankel order must be non-negative");
        std::vector<cdouble> h(static_cast<std::size_t>(n) + 1);
        spherical_hankel2_all(n, x, h);
        return h[n];
    }

    Spherical to_spherical(double x, double y, double z) noexcept
    {
        const double rho = std::hypot(x, y);
        return {std::hypot(rho, z), std::atan2(rho, z), std::atan2(y, x)};
    }
}
