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
#ifndef DEISM_SPH_CORE_HPP
#define DEISM_SPH_CORE_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace deism
{
    using cdouble = std::complex<double>;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr cdouble imag_unit{0.0, 1.0};

    // Spherical harmonic convention used throughout the library:
    //
    //   Y_{n,m}(theta, phi) = sqrt((2n+1)/(4 pi) (n-m)!/(n+m)!) P_n^m(cos theta) e^{i m phi}
    //
    // with the Condon-Shortley phase (-1)^m included in P_n^m. The harmonics are complex and
    // orthonormal on the unit sphere, and Y*_{n,m} = (-1)^m Y_{n,-m}. theta is the inclination
    // from +z, phi the azimuth from +x. Every coefficient set (directivities, wave spectra,
    // coupling coefficients) is expanded in this basis.
    struct SphIndex
    {
        int n = 0;
        int m = 0;

        // Throws DomainError when n < 0 or |m| > n.
        void validate() const;
    };

    // Flat position of (n, m) in a coefficient vector ordered by n, then m = -n..n.
    constexpr std::size_t sh_index(int n, int m) noexcept
    {
        return static_cast<std::size_t>(n * n + n + m);
    }

    // Number of coefficients for all orders 0..max_order.
    constexpr std::size_t sh_count(int max_order) noexcept
    {
        return static_cast<std::size_t>((max_order + 1) * (max_order + 1));
    }

    cdouble spherical_harmonic(SphIndex idx, double theta, double phi);

    // All Y_{n,m}(theta, phi) for n <= max_order, written at sh_index(n, m).
    // out.size() must be at least sh_count(max_order).
    void spherical_harmonics_all(int max_order, double theta, double phi, std::span<cdouble> out);
    std::vector<cdouble> spherical_harmonics_all(int max_order, double theta, double phi);

    double spherical_bessel_j(int n, double x);
    double spherical_bessel_y(int n, double x);

    // h^(2)_n(x) = j_n(x) - i y_n(x). Outgoing waves carry e^{-ikr}. Throws SingularityError at x = 0.
    cdouble spherical_hankel2(int n, double x);

    // j_0..j_max_order at x.
    void spherical_bessel_j_all(int max_order, double x, std::span<double> out);
    // h^(2)_0..h^(2)_max_order at x > 0.
    void spherical_hankel2_all(int max_order, double x, std::span<cdouble> out);

    // Cartesian direction -> (radius, inclination, azimuth). Azimuth in (-pi, pi].
    struct Spherical
    {
        double r = 0.0;
        double theta = 0.0;
        double phi = 0.0;
    };
    Spherical to_spherical(double x, double y, double z) noexcept;

    // Wigner 3j symbol (j1 j2 j3; m1 m2 m3) for integer arguments, via the Racah sum in extended
    // precision. Returns 0 whenever a selection rule fails. Accurate to ~1e-15 for j <= 20.
    double wigner3j(int j1, int j2, int j3, int m1, int m2, int m3);

    // Precomputed coupling symbols for all n <= max_n, v <= max_v:
    //   w1(n, v, l)       = (n v l; 0 0 0)
    //   w2(n, v, l, m, u) = (n v l; -m u m-u)
    // Dense storage with explicit zeros. Immutable after construction.
    class WignerTable
    {
    public:
        static constexpr std::size_t default_memory_budget = std::size_t(1) << 30;

        // Throws DomainError for negative orders, ResourceError when the dense tables would
        // exceed memory_budget bytes.
        WignerTable(int max_n, int max_v, std::size_t memory_budget = default_memory_budget);

        int max_n() const noexcept { return max_n_; }
        int max_v() const noexcept { return max_v_; }
        int max_l() const noexcept { return max_n_ + max_v_; }

        // Checked lookups: zero outside the selection rules, DomainError outside table bounds.
        double w1(int n, int v, int l) const;
        double w2(int n, int v, int l, int m, int u) const;

        // Unchecked lookups for inner loops. Preconditions: 0 <= n <= max_n, 0 <= v <= max_v,
        // 0 <= l <= max_l, |m| <= max_n, |u| <= max_v.
        double w1_unchecked(int n, int v, int l) const noexcept { return w1_[offset1(n, v, l)]; }
        double w2_unchecked(int n, int v, int l, int m, int u) const noexcept
        {
            return w2_[offset2(n, v, l, m, u)];
        }

        std::size_t memory_bytes() const noexcept { return (w1_.size() + w2_.size()) * sizeof(double); }
        static std::size_t required_bytes(int max_n, int max_v) noexcept;

    private:
        std::size_t offset1(int n, int v, int l) const noexcept
        {
            return (static_cast<std::size_t>(n) * (max_v_ + 1) + v) * (max_l() + 1) + l;
        }
        std::size_t offset2(int n, int v, int l, int m, int u) const noexcept
        {
            return ((offset1(n, v, l) * (2 * max_n_ + 1)) + (m + max_n_)) * (2 * max_v_ + 1) + (u + max_v_);
        }

        int max_n_;
        int max_v_;
        std::vector<double> w1_;
        std::vector<double> w2_;
    };
}

#endif
