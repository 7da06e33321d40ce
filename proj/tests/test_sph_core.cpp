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

#include "deism/error.hpp"
#include "deism/sph_core.hpp"
#include "deism/sphere_grid.hpp"
#include "test_util.hpp"

#include <doctest.h>
#include <gsl/gsl_sf_bessel.h>
#include <gsl/gsl_sf_coupling.h>
#include <gsl/gsl_sf_legendre.h>

using namespace deism;
using deism::test::rel_err;

namespace
{
    cdouble gsl_sph_harmonic(int n, int m, double theta, double phi)
    {
        const int am = std::abs(m);
        const double p = gsl_sf_legendre_sphPlm(n, am, std::cos(theta));
        const cdouble y = p * std::polar(1.0, am * phi);
        return m >= 0 ? y : ((am % 2) ? -1.0 : 1.0) * std::conj(y);
    }

    double gsl_3j(int j1, int j2, int j3, int m1, int m2, int m3)
    {
        return gsl_sf_coupling_3j(2 * j1, 2 * j2, 2 * j3, 2 * m1, 2 * m2, 2 * m3);
    }
}

TEST_CASE("spherical harmonics agree with GSL normalised Legendre functions")
{
    test::Rng rng(11);
    for (int trial = 0; trial < 40; ++trial)
    {
        const double theta = rng.uniform(0.0, pi);
        const double phi = rng.uniform(-pi, pi);
        const auto all = spherical_harmonics_all(12, theta, phi);
        // GSL rebuilds sin(theta) from cos(theta), so it degrades near the poles.
        const double tol = 1e-13 * std::max(1.0, 0.05 / std::sin(theta));
        for (int n = 0; n <= 12; ++n)
            for (int m = -n; m <= n; ++m)
            {
                const cdouble want = gsl_sph_harmonic(n, m, theta, phi);
                CHECK(std::abs(all[sh_index(n, m)] - want) < tol);
                CHECK(std::abs(spherical_harmonic({n, m}, theta, phi) - want) < tol);
            }
    }
}

TEST_CASE("harmonics near the south pole match high-precision values")
{
    const double theta = 3.1401048718164906, phi = 0.75;
    struct Row
    {
        int n, m;
        double re, im;
    };
    const Row rows[] = {
        {4, 1, 0.0020599879682860293, 0.0019190774987826472},
        {8, 1, 0.0053717141194401813, 0.0050042698575020634},
        {12, 1, 0.0095883613447265047, 0.008932483485411798},
        {12, -3, 1.1539324583213783e-7, 1.4292926101342203e-7},
        {7, 0, -1.0925145739504578, 0.0},
    };
    for (const auto& r : rows)
        CHECK_MESSAGE(std::abs(spherical_harmonic({r.n, r.m}, theta, phi) - cdouble(r.re, r.im)) < 2e-15,
                      "n=" << r.n << " m=" << r.m);
}

TEST_CASE("harmonics at the poles")
{
    for (int n = 0; n <= 8; ++n)
    {
        const double y0 = std::sqrt((2.0 * n + 1.0) / (4.0 * pi));
        CHECK(std::abs(spherical_harmonic({n, 0}, 0.0, 0.3) - y0) < 1e-14);
        CHECK(std::abs(spherical_harmonic({n, 0}, pi, 0.3) - (n % 2 ? -y0 : y0)) < 1e-14);
        for (int m = 1; m <= n; ++m)
            CHECK(std::abs(spherical_harmonic({n, m}, 0.0, 1.1)) < 1e-14);
    }
}

TEST_CASE("conjugation symmetry Y*_{n,m} = (-1)^m Y_{n,-m}")
{
    test::Rng rng(12);
    for (int trial = 0; trial < 20; ++trial)
    {
        const double theta = rng.uniform(0.0, pi), phi = rng.uniform(-pi, pi);
        for (int n = 0; n <= 6; ++n)
            for (int m = -n; m <= n; ++m)
            {
                const double sign = (std::abs(m) % 2) ? -1.0 : 1.0;
                CHECK(std::abs(std::conj(spherical_harmonic({n, m}, theta, phi)) -
                               sign * spherical_harmonic({n, -m}, theta, phi)) < 1e-14);
            }
    }
}

TEST_CASE("orthonormality under Gauss-Legendre quadrature")
{
    const int order = 6;
    const SphereGrid grid = gauss_legendre_grid(order + 1, 2 * order + 1);
    REQUIRE(grid.weights.size() == grid.directions.size());
    std::vector<std::vector<cdouble>> ys;
    for (const auto &d : grid.directions)
        ys.push_back(spherical_harmonics_all(order, d.theta, d.phi));
    const std::size_t count = sh_count(order);
    double worst = 0.0;
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b)
        {
            cdouble sum = 0.0;
            for (std::size_t j = 0; j < ys.size(); ++j)
                sum += grid.weights[j] * ys[j][a] * std::conj(ys[j][b]);
            worst = std::max(worst, std::abs(sum - (a == b ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-12);
}

TEST_CASE("index validation")
{
    CHECK_THROWS_AS(SphIndex({-1, 0}).validate(), DomainError);
    CHECK_THROWS_AS(SphIndex({2, 3}).validate(), DomainError);
    CHECK_NOTHROW(SphIndex({2, -2}).validate());
    CHECK(sh_index(0, 0) == 0);
    CHECK(sh_index(1, -1) == 1);
    CHECK(sh_index(3, 3) == 15);
    CHECK(sh_count(5) == 36);
}

TEST_CASE("spherical Bessel functions agree with GSL")
{
    for (double x : {1e-3, 0.05, 0.7, 3.0, 12.5, 60.0, 250.0})
        for (int n = 0; n <= 30; ++n)
        {
            const double j = gsl_sf_bessel_jl(n, x);
            if (std::abs(j) > 1e-290)
                CHECK_MESSAGE(rel_err(spherical_bessel_j(n, x), j) < 1e-11, "j n=" << n << " x=" << x);
            const double y = gsl_sf_bessel_yl(n, x);
            if (std::isfinite(y))
                CHECK_MESSAGE(rel_err(spherical_bessel_y(n, x), y) < 1e-11, "y n=" << n << " x=" << x);
        }
}

TEST_CASE("batched Bessel and Hankel evaluations match the scalar forms")
{
    std::vector<double> j(16);
    std::vector<cdouble> h(16);
    for (double x : {0.2, 4.0, 40.0})
    {
        spherical_bessel_j_all(15, x, j);
        spherical_hankel2_all(15, x, h);
        for (int n = 0; n <= 15; ++n)
        {
            CHECK(rel_err(j[n], spherical_bessel_j(n, x)) < 1e-12);
            CHECK(rel_err(h[n], cdouble(spherical_bessel_j(n, x), -spherical_bessel_y(n, x))) < 1e-12);
            CHECK(rel_err(spherical_hankel2(n, x), h[n]) < 1e-12);
        }
    }
}

TEST_CASE("Hankel function of the second kind carries e^{-ix}")
{
    for (double x : {0.3, 2.0, 17.0})
        CHECK(std::abs(spherical_hankel2(0, x) - imag_unit * std::exp(-imag_unit * x) / x) < 1e-14);
    CHECK_THROWS_AS(spherical_hankel2(0, 0.0), SingularityError);
    CHECK(spherical_bessel_j(0, 0.0) == doctest::Approx(1.0));
    CHECK(spherical_bessel_j(3, 0.0) == 0.0);
}

TEST_CASE("Wigner 3j symbols agree with GSL")
{
    test::Rng rng(13);
    int nonzero = 0;
    for (int trial = 0; trial < 3000; ++trial)
    {
        const int j1 = rng.integer(0, 10), j2 = rng.integer(0, 10), j3 = rng.integer(0, 20);
        const int m1 = rng.integer(-j1, j1), m2 = rng.integer(-j2, j2);
        const int m3 = -m1 - m2;
        const double got = wigner3j(j1, j2, j3, m1, m2, m3);
        const double want = (std::abs(m3) <= j3) ? gsl_3j(j1, j2, j3, m1, m2, m3) : 0.0;
        CHECK(std::abs(got - want) < 1e-14);
        nonzero += want != 0.0;
    }
    CHECK(nonzero > 300);
}

TEST_CASE("Wigner 3j permutation symmetries and selection rules")
{
    test::Rng rng(14);
    int checked = 0;
    while (checked < 500)
    {
        const int j1 = rng.integer(0, 8), j2 = rng.integer(0, 8);
        const int j3 = rng.integer(std::abs(j1 - j2), j1 + j2);
        const int m1 = rng.integer(-j1, j1), m2 = rng.integer(-j2, j2), m3 = -m1 - m2;
        if (std::abs(m3) > j3)
            continue;
        ++checked;
        const double w = wigner3j(j1, j2, j3, m1, m2, m3);
        CHECK(std::abs(wigner3j(j2, j3, j1, m2, m3, m1) - w) < 1e-15);
        CHECK(std::abs(wigner3j(j3, j1, j2, m3, m1, m2) - w) < 1e-15);
        const double sign = ((j1 + j2 + j3) % 2) ? -1.0 : 1.0;
        CHECK(std::abs(wigner3j(j2, j1, j3, m2, m1, m3) - sign * w) < 1e-15);
        CHECK(std::abs(wigner3j(j1, j2, j3, -m1, -m2, -m3) - sign * w) < 1e-15);
    }
    CHECK(wigner3j(1, 1, 3, 0, 0, 0) == 0.0); // triangle
    CHECK(wigner3j(1, 1, 1, 0, 0, 0) == 0.0); // odd sum with zero m
    CHECK(wigner3j(2, 2, 2, 1, 1, 1) == 0.0); // m sum
    CHECK(wigner3j(0, 0, 0, 0, 0, 0) == doctest::Approx(1.0));
}

TEST_CASE("Wigner tables match direct evaluation")
{
    const WignerTable table(4, 3);
    CHECK(table.max_l() == 7);
    for (int n = 0; n <= 4; ++n)
        for (int v = 0; v <= 3; ++v)
            for (int l = 0; l <= 7; ++l)
            {
                CHECK(table.w1(n, v, l) == wigner3j(n, v, l, 0, 0, 0));
                for (int m = -n; m <= n; ++m)
                    for (int u = -v; u <= v; ++u)
                    {
                        const double want = wigner3j(n, v, l, -m, u, m - u);
                        CHECK(table.w2(n, v, l, m, u) == want);
                        CHECK(table.w2_unchecked(n, v, l, m, u) == want);
                    }
            }
    CHECK_THROWS_AS(table.w1(5, 0, 5), DomainError);
    CHECK_THROWS_AS(WignerTable(-1, 2), DomainError);
    CHECK_THROWS_AS(WignerTable(10, 10, 1024), ResourceError);
    CHECK(WignerTable::required_bytes(4, 3) == table.memory_bytes());
}

TEST_CASE("Cartesian to spherical conversion")
{
    const Spherical s = to_spherical(0.0, 0.0, 2.0);
    CHECK(s.r == doctest::Approx(2.0));
    CHECK(s.theta == doctest::Approx(0.0));
    const Spherical t = to_spherical(-1.0, 0.0, 0.0);
    CHECK(t.theta == doctest::Approx(pi / 2));
    CHECK(t.phi == doctest::Approx(pi));
    const Spherical u = to_spherical(0.0, -3.0, -3.0);
    CHECK(u.r == doctest::Approx(std::sqrt(18.0)));
    CHECK(u.theta == doctest::Approx(3 * pi / 4));
    CHECK(u.phi == doctest::Approx(-pi / 2));
}

TEST_CASE("sphere grids")
{
    const SphereGrid f = fibonacci_grid(128);
    CHECK(f.directions.size() == 128);
    CHECK(f.weights.empty());
    const SphereGrid g = gauss_legendre_grid(4, 9);
    CHECK(g.directions.size() == 36);
    double sum = 0.0;
    for (double w : g.weights)
        sum += w;
    CHECK(sum == doctest::Approx(4 * pi).epsilon(1e-14));
    std::vector<double> x, w;
    gauss_legendre_nodes(1, x, w);
    CHECK(x.size() == 1);
    CHECK(w[0] == doctest::Approx(2.0));
}
