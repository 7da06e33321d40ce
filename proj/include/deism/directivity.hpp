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

#ifndef DEISM_DIRECTIVITY_HPP
#define DEISM_DIRECTIVITY_HPP

#include "deism/sph_core.hpp"
#include "deism/sphere_grid.hpp"

#include <span>
#include <vector>

namespace deism
{
    struct Medium
    {
        double speed_of_sound = 343.0; // [m/s]
        double density = 1.2;          // [kg/m^3]

        void validate() const;
        double wavenumber(double frequency_hz) const noexcept { return 2.0 * pi * frequency_hz / speed_of_sound; }
    };

    // Spherical-harmonic coefficients for a single wavenumber, stored at sh_index(n, m).
    struct ShCoefficients
    {
        int max_order = 0;
        std::vector<cdouble> values = std::vector<cdouble>(1);

        static ShCoefficients zeros(int max_order);

        cdouble operator()(int n, int m) const { return values[sh_index(n, m)]; }
        cdouble &operator()(int n, int m) { return values[sh_index(n, m)]; }

        // Copy truncated or zero-padded to another maximum order.
        ShCoefficients resized(int new_max_order) const;
    };

    enum class DirectivityKind
    {
        source,
        receiver
    };

    // Directivity coefficients C_{n,m}(k) of a transducer on a frequency grid. The field radiated
    // outside the transparent sphere of radius r0 is
    //
    //   P(r, theta, phi) = sum_{n,m} C_{n,m}(k) h^(2)_n(k r) Y_{n,m}(theta, phi).
    //
    // Receiver directivities hold the coefficients of the reciprocal (transmitting) problem; the
    // weights applied at reception follow from receiver_weights_from_reciprocity().
    class Directivity
    {
    public:
        Directivity() = default;

        // Throws ConfigError on inconsistent sizes, unsorted or non-positive frequencies, r0 < 0
        // or non-finite coefficients.
        Directivity(DirectivityKind kind, double r0, std::vector<double> frequencies_hz,
                    std::vector<ShCoefficients> coefficients);

        DirectivityKind kind() const noexcept { return kind_; }
        double r0() const noexcept { return r0_; }
        int max_order() const noexcept { return max_order_; }
        const std::vector<double> &frequencies() const noexcept { return frequencies_; }
        std::size_t size() const noexcept { return frequencies_.size(); }
        const ShCoefficients &at(std::size_t frequency_index) const { return coefficients_.at(frequency_index); }
        const std::vector<ShCoefficients> &coefficients() const noexcept { return coefficients_; }

    private:
        DirectivityKind kind_ = DirectivityKind::source;
        double r0_ = 0.0;
        int max_order_ = 0;
        std::vector<double> frequencies_;
        std::vector<ShCoefficients> coefficients_;
    };

    // Pressure sampled on a sphere of radius r0. pressure is row-major (frequency x direction).
    struct SampledSphereField
    {
        double r0 = 0.0;
        std::vector<Direction> directions;
        std::vector<double> frequencies;
        std::vector<cdouble> pressure;

        cdouble at(std::size_t frequency_index, std::size_t direction_index) const
        {
            return pressure[frequency_index * directions.size() + direction_index];
        }
        // Throws ConfigError: r0 <= 0, duplicate directions, size mismatch, non-finite values.
        void validate() const;
    };

    struct WaveSpectrumFit
    {
        int max_order = 0;
        std::vector<ShCoefficients> spectrum;  // P_{n,m}(k, r0) per frequency
        std::vector<double> relative_residual; // |A P - p| / |p| per frequency (0 for p = 0)
        double condition_number = 1.0;         // of the direction matrix
    };

    // Condition numbers above this emit a warning; fits still proceed.
    inline constexpr double fit_condition_warning = 1e8;

    // Least-squares expansion of the sampled pressure in spherical harmonics up to order N.
    // Throws DomainError when J < (N+1)^2, ConditioningError for a rank-deficient grid.
    WaveSpectrumFit fit_wave_spectrum(const SampledSphereField &field, int max_order);

    // C_{n,m} = P_{n,m} / h^(2)_n(k r0). Throws DomainError when k r0 <= 0 and ConditioningError
    // when |h^(2)_n(k r0)| < hankel_floor.
    ShCoefficients wave_spectrum_to_coefficients(const ShCoefficients &spectrum, double r0, double k,
                                                 double hankel_floor = 1e-12);

    // Fit followed by Hankel division on the field's own frequency grid.
    Directivity directivity_from_field(const SampledSphereField &field, int max_order, const Medium &medium,
                                       DirectivityKind kind, WaveSpectrumFit *fit_out = nullptr);

    // D_{v,u} = i (-1)^u / k * C_{v,-u}.
    ShCoefficients receiver_weights_from_reciprocity(const ShCoefficients &receiver_coefficients, double k);
    // Inverse map: C_{v,u} = -i k (-1)^u D_{v,-u}.
    ShCoefficients coefficients_from_receiver_weights(const ShCoefficients &weights, double k);

    // C_{0,0} = -i k / sqrt(4 pi): a point source whose field is e^{-ikd} / (4 pi d).
    ShCoefficients monopole_source_coefficients(double k);

    // Omnidirectional observation point displaced by (d_y, theta_y, phi_y) from the local origin:
    // C_{v,u} = -i k j_v(k d_y) Y*_{v,u}(theta_y, phi_y), v <= ceil(k d_y), capped at max_order_cap
    // when it is non-negative.
    ShCoefficients point_receiver_coefficients(double k, double d_y, double theta_y, double phi_y,
                                               int max_order_cap = -1);

    // ceil(k r0).
    int truncation_order(double k, double r0);

    // C'_{n,m} = C_{n,m} e^{-i m delta}: the pattern turned by +delta about the z axis.
    ShCoefficients rotate_azimuth(const ShCoefficients &c, double delta_phi);
    Directivity rotate_azimuth(const Directivity &d, double delta_phi);

    // sum_{n,m} C_{n,m} h^(2)_n(k r) Y_{n,m}(theta, phi). Warns when r < r0, throws
    // SingularityError at r = 0.
    cdouble evaluate_exterior_field(const ShCoefficients &c, double r, double theta, double phi, double k,
                                    double r0 = 0.0);

    // Wave spectrum on a sphere of radius r_meas: C_{n,m} h^(2)_n(k r_meas).
    ShCoefficients extrapolate_to_radius(const ShCoefficients &c, double r_meas, double k);

    // Grid-wide builders.
    Directivity monopole_directivity(const std::vector<double> &frequencies, const Medium &medium,
                                     DirectivityKind kind);
    Directivity point_receiver_directivity(const std::vector<double> &frequencies, const Medium &medium,
                                           double d_y, double theta_y, double phi_y, int max_order_cap);

    // Samples a directivity's exterior field on the given directions at radius r (test fixtures,
    // synthetic measurement data).
    SampledSphereField sample_directivity(const Directivity &d, const Medium &medium,
                                          const std::vector<Direction> &directions, double r);
}

#endif
