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

#include "deism/directivity.hpp"
#include "deism/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace deism
{
    void Medium::validate() const
    {
        if (!(speed_of_sound > 0.0) || !std::isfinite(speed_of_sound))
            throw ConfigError("speed of sound must be positive");
        if (!(density > 0.0) || !std::isfinite(density))
            throw ConfigError("density must be positive");
    }

    ShCoefficients ShCoefficients::zeros(int max_order)
    {
        if (max_order < 0)
            throw DomainError("coefficient order must be non-negative");
        return {max_order, std::vector<cdouble>(sh_count(max_order))};
    }

    ShCoefficients ShCoefficients::resized(int new_max_order) const
    {
        ShCoefficients out = zeros(new_max_order);
        const std::size_t n = std::min(values.size(), out.values.size());
        std::copy_n(values.begin(), n, out.values.begin());
        return out;
    }

    namespace
    {
        void check_frequencies(const std::vector<double> &f, const char *what)
        {
            for (std::size_t i = 0; i < f.size(); ++i)
            {
                if (!(f[i] > 0.0) || !std::isfinite(f[i]))
                    throw ConfigError(std::string(what) + ": frequencies must be positive and finite");
                if (i > 0 && !(f[i] > f[i - 1]))
                    throw ConfigError(std::string(what) + ": frequencies must be strictly increasing");
            }
        }
    }

    Directivity::Directivity(DirectivityKind kind, double r0, std::vector<double> frequencies_hz,
                             std::vector<ShCoefficients> coefficients)
        : kind_(kind), r0_(r0), frequencies_(std::move(frequencies_hz)), coefficients_(std::move(coefficients))
    {
        if (!(r0_ >= 0.0) || !std::isfinite(r0_))
            throw ConfigError("directivity: r0 must be non-negative");
        check_frequencies(frequencies_, "directivity");
        if (frequencies_.size() != coefficients_.size())
            throw ConfigError("directivity: one coefficient set per frequency required");
        max_order_ = coefficients_.empty() ? 0 : coefficients_.front().max_order;
        for (const auto &c : coefficients_)
        {
            if (c.max_order != max_order_ || c.values.size() != sh_count(max_order_))
                throw ConfigError("directivity: all frequencies must share one maximum order");
            for (const auto &v : c.values)
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                    throw ConfigError("directivity: coefficients must be finite");
        }
    }

    void SampledSphereField::validate() const
    {
        if (!(r0 > 0.0) || !std::isfinite(r0))
            throw ConfigError("sampled field: r0 must be positive");
        check_frequencies(frequencies, "sampled field");
        if (pressure.size() != frequencies.size() * directions.size())
            throw ConfigError("sampled field: pressure matrix must be frequencies x directions");
        for (const auto &p : pressure)
            if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
                throw ConfigError("sampled field: pressure must be finite");

        std::vector<std::array<double, 3>> unit;
        unit.reserve(directions.size());
        for (const auto &d : directions)
            unit.push_back({std::sin(d.theta) * std::cos(d.phi), std::sin(d.theta) * std::sin(d.phi),
                            std::cos(d.theta)});
        for (std::size_t i = 0; i < unit.size(); ++i)
            for (std::size_t j = i + 1; j < unit.size(); ++j)
            {
                const double dx = unit[i][0] - unit[j][0];
                const double dy = unit[i][1] - unit[j][1];
                const double dz = unit[i][2] - unit[j][2];
                if (dx * dx + dy * dy + dz * dz < 1e-24)
                    throw ConfigError("sampled field: duplicate direction at indices " + std::to_string(i) +
                                      " and " + std::to_string(j));
            }
    }

    WaveSpectrumFit fit_wave_spectrum(const SampledSphereField &field, int max_order)
    {
        if (max_order < 0)
            throw DomainError("fit order must be non-negative");
        field.validate();

        const std::size_t num_dirs = field.directions.size();
        const std::size_t num_coeffs = sh_count(max_order);
        if (num_dirs < num_coeffs)
            throw DomainError("fit of order " + std::to_string(max_order) + " needs at least " +
                              std::to_string(num_coeffs) + " directions, got " + std::to_string(num_dirs));

        Eigen::MatrixXcd a(num_dirs, num_coeffs);
        std::vector<cdouble> y(num_coeffs);
        for (std::size_t j = 0; j < num_dirs; ++j)
        {
            spherical_harmonics_all(max_order, field.directions[j].theta, field.directions[j].phi, y);
            for (std::size_t c = 0; c < num_coeffs; ++c)
                a(j, c) = y[c];
        }

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto &sv = svd.singularValues();
        const double s_max = sv(0);
        const double s_min = sv(sv.size() - 1);
        const double cond = s_min > 0.0 ? s_max / s_min : std::numeric_limits<double>::infinity();
        if (!(s_min > 1e-12 * s_max))
        {
            std::ostringstream msg;
            msg << "direction matrix is rank deficient for order " << max_order << " (condition number " << cond
                << ")";
            throw ConditioningError(msg.str(), cond);
        }
        if (cond > fit_condition_warning)
        {
            std::ostringstream msg;
            msg << "ill-conditioned direction matrix (condition number " << cond << ")";
            warn(msg.str());
        }

        const std::size_t num_freqs = field.frequencies.size();
        Eigen::MatrixXcd b(num_dirs, num_freqs);
        for (std::size_t f = 0; f < num_freqs; ++f)
            for (std::size_t j = 0; j < num_dirs; ++j)
                b(j, f) = field.at(f, j);
        const Eigen::MatrixXcd x = svd.solve(b);
        const Eigen::MatrixXcd r = a * x - b;

        WaveSpectrumFit fit;
        fit.max_order = max_order;
        fit.condition_number = cond;
        fit.spectrum.reserve(num_freqs);
        fit.relative_residual.reserve(num_freqs);
        for (std::size_t f = 0; f < num_freqs; ++f)
        {
            ShCoefficients p = ShCoefficients::zeros(max_order);
            for (std::size_t c = 0; c < num_coeffs; ++c)
                p.values[c] = x(c, f);
            fit.spectrum.push_back(std::move(p));
            const double norm_b = b.col(f).norm();
            fit.relative_residual.push_back(norm_b > 0.0 ? r.col(f).norm() / norm_b : 0.0);
        }
        return fit;
    }

    ShCoefficients wave_spectrum_to_coefficients(const ShCoefficients &spectrum, double r0, double k,
                                                 double hankel_floor)
    {
        const double x = k * r0;
        if (!(x > 0.0) || !std::isfinite(x))
            throw DomainError("wave spectrum conversion requires k r0 > 0");
        std::vector<cdouble> h(static_cast<std::size_t>(spectrum.max_order) + 1);
        spherical_hankel2_all(spectrum.max_order, x, h);

        ShCoefficients c = ShCoefficients::zeros(spectrum.max_order);
        for (int n = 0; n <= spectrum.max_order; ++n)
        {
            if (!(std::abs(h[n]) >= hankel_floor))
            {
                std::ostringstream msg;
                msg << "|h_" << n << "(k r0)| below floor at k = " << k;
                throw ConditioningError(msg.str(), 1.0 / std::abs(h[n]));
            }
            for (int m = -n; m <= n; ++m)
                c(n, m) = spectrum(n, m) / h[n];
        }
        return c;
    }

    Directivity directivity_from_field(const SampledSphereField &field, int max_order, const Medium &medium,
                                       DirectivityKind kind, WaveSpectrumFit *fit_out)
    {
        medium.validate();
        WaveSpectrumFit fit = fit_wave_spectrum(field, max_order);
        std::vector<ShCoefficients> coeffs;
        coeffs.reserve(field.frequencies.size());
        for (std::size_t f = 0; f < field.frequencies.size(); ++f)
            coeffs.push_back(
                wave_spectrum_to_coefficients(fit.spectrum[f], field.r0, medium.wavenumber(field.frequencies[f])));
        if (fit_out)
            *fit_out = std::move(fit);
        return Directivity(kind, field.r0, field.frequencies, std::move(coeffs));
    }

    ShCoefficients receiver_weights_from_reciprocity(const ShCoefficients &c, double k)
    {
        if (!(k > 0.0))
            throw DomainError("reciprocity weights require k > 0");
        ShCoefficients d = ShCoefficients::zeros(c.max_order);
        for (int v = 0; v <= c.max_order; ++v)
            for (int u = -v; u <= v; ++u)
                d(v, u) = imag_unit * ((u % 2) ? -1.0 : 1.0) / k * c(v, -u);
        return d;
    }

    ShCoefficients coefficients_from_receiver_weights(const ShCoefficients &d, double k)
    {
        if (!(k > 0.0))
            throw DomainError("reciprocity weights require k > 0");
        ShCoefficients c = ShCoefficients::zeros(d.max_order);
        for (int v = 0; v <= d.max_order; ++v)
            for (int u = -v; u <= v; ++u)
                c(v, u) = -imag_unit * k * ((u % 2) ? -1.0 : 1.0) * d(v, -u);
        return c;
    }

    ShCoefficients monopole_source_coefficients(double k)
    {
        if (!(k > 0.0))
            throw DomainError("monopole coefficients require k > 0");
        ShCoefficients c = ShCoefficients::zeros(0);
        c(0, 0) = -imag_unit * k / std::sqrt(4.0 * pi);
        return c;
    }

    int truncation_order(double k, double r0)
    {
        if (!(k >= 0.0) || !(r0 >= 0.0))
            throw DomainError("truncation order requires k, r0 >= 0");
        return static_cast<int>(std::ceil(k * r0));
    }

    ShCoefficients point_receiver_coefficients(double k, double d_y, double theta_y, double phi_y,
                                               int max_order_cap)
    {
        if (!(k > 0.0))
            throw DomainError("point receiver coefficients require k > 0");
        if (!(d_y >= 0.0))
            throw DomainError("point receiver offset must be non-negative");
        int order = truncation_order(k, d_y);
        if (max_order_cap >= 0)
            order = std::min(order, max_order_cap);

        std::vector<double> j(static_cast<std::size_t>(order) + 1);
        spherical_bessel_j_all(order, k * d_y, j);
        const auto y = spherical_harmonics_all(order, theta_y, phi_y);

        ShCoefficients c = ShCoefficients::zeros(order);
        for (int v = 0; v <= order; ++v)
            for (int u = -v; u <= v; ++u)
                c(v, u) = -imag_unit * k * j[v] * std::conj(y[sh_index(v, u)]);
        return c;
    }

    ShCoefficients rotate_azimuth(const ShCoefficients &c, double delta_phi)
    {
        ShCoefficients out = c;
        for (int n = 0; n <= c.max_order; ++n)
            for (int m = -n; m <= n; ++m)
                if (m != 0)
                    out(n, m) = c(n, m) * std::polar(1.0, -m * delta_phi);
        return out;
    }

    Directivity rotate_azimuth(const Directivity &d, double delta_phi)
    {
        std::vector<ShCoefficients> coeffs;
        coeffs.reserve(d.size());
        for (const auto &c : d.coefficients())
            coeffs.push_back(rotate_azimuth(c, delta_phi));
        return Directivity(d.kind(), d.r0(), d.frequencies(), std::move(coeffs));
    }

    cdouble evaluate_exterior_field(const ShCoefficients &c, double r, double theta, double phi, double k,
                                    double r0)
    {
        if (!(r > 0.0))
            throw SingularityError("exterior field evaluation at r = 0");
        if (r < r0)
        {
            std::ostringstream msg;
            msg << "exterior field evaluated at r = " << r << " inside the transparent sphere r0 = " << r0;
            warn(msg.str());
        }
        std::vector<cdouble> h(static_cast<std::size_t>(c.max_order) + 1);
        spherical_hankel2_all(c.max_order, k * r, h);
        const auto y = spherical_harmonics_all(c.max_order, theta, phi);
        cdouble p = 0.0;
        for (int n = 0; n <= c.max_order; ++n)
        {
            cdouble angular = 0.0;
            for (int m = -n; m <= n; ++m)
                angular += c(n, m) * y[sh_index(n, m)];
            p += h[n] * angular;
        }
        return p;
    }

    ShCoefficients extrapolate_to_radius(const ShCoefficients &c, double r_meas, double k)
    {
        if (!(r_meas > 0.0))
            throw DomainError("measurement radius must be positive");
        std::vector<cdouble> h(static_cast<std::size_t>(c.max_order) + 1);
        spherical_hankel2_all(c.max_order, k * r_meas, h);
        ShCoefficients out = ShCoefficients::zeros(c.max_order);
        for (int n = 0; n <= c.max_order; ++n)
            for (int m = -n; m <= n; ++m)
                out(n, m) = c(n, m) * h[n];
        return out;
    }

    Directivity monopole_directivity(const std::vector<double> &frequencies, const Medium &medium,
                                     DirectivityKind kind)
    {
        medium.validate();
        std::vector<ShCoefficients> coeffs;
        coeffs.reserve(frequencies.size());
        for (double f : frequencies)
            coeffs.push_back(monopole_source_coefficients(medium.wavenumber(f)));
        return Directivity(kind, 0.0, frequencies, std::move(coeffs));
    }

    Directivity point_receiver_directivity(const std::vector<double> &frequencies, const Medium &medium,
                                           double d_y, double theta_y, double phi_y, int max_order_cap)
    {
        medium.validate();
        std::vector<ShCoefficients> coeffs;
        coeffs.reserve(frequencies.size());
        int order = 0;
        for (double f : frequencies)
        {
            coeffs.push_back(point_receiver_coefficients(medium.wavenumber(f), d_y, theta_y, phi_y, max_order_cap));
            order = std::max(order, coeffs.back().max_order);
        }
        for (auto &c : coeffs)
            c = c.resized(order);
        return Directivity(DirectivityKind::receiver, d_y, frequencies, std::move(coeffs));
    }

    SampledSphereField sample_directivity(const Directivity &d, const Medium &medium,
                                          const std::vector<Direction> &directions, double r)
    {
        SampledSphereField field;
        field.r0 = r;
        field.directions = directions;
        field.frequencies = d.frequencies();
        field.pressure.reserve(d.size() * directions.size());
        for (std::size_t f = 0; f < d.size(); ++f)
        {
            const double k = medium.wavenumber(d.frequencies()[f]);
            for (const auto &dir : directions)
                field.pressure.push_back(evaluate_exterior_field(d.at(f), r, dir.theta, dir.phi, k, d.r0()));
        }
        return field;
    }
}
