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

#include "deism/ism_baselines.hpp"
#include "deism/error.hpp"
#include "random_util.hpp"

#include <cmath>
#include <random>

namespace deism
{
    namespace
    {
        void check_grid(const std::vector<double> &frequencies)
        {
            if (frequencies.empty())
                throw ConfigError("request has no frequencies");
            for (std::size_t i = 0; i < frequencies.size(); ++i)
                if (!(frequencies[i] > 0.0) || (i > 0 && !(frequencies[i] > frequencies[i - 1])))
                    throw ConfigError("frequencies must be positive and strictly increasing");
        }

        RtfSpectrum reduce(const std::vector<double> &frequencies, const std::vector<std::vector<cdouble>> &partials,
                           MethodTag tag)
        {
            RtfSpectrum s;
            s.method = tag;
            s.frequencies = frequencies;
            s.values.assign(frequencies.size(), cdouble{});
            for (const auto &part : partials)
                for (std::size_t f = 0; f < part.size(); ++f)
                    s.values[f] += part[f];
            return s;
        }
    }

    cdouble greens_function(double d, double k)
    {
        if (!(d > 0.0))
            throw SingularityError("Green's function at zero distance");
        return std::polar(1.0 / (4.0 * pi * d), -k * d);
    }

    cdouble rtf_ism_omni(std::span<const ImageRecord> images, double k)
    {
        cdouble h{};
        for (const auto &rec : images)
            h += rec.attenuation * greens_function(rec.distance, k);
        return h;
    }

    cdouble rtf_ism_omni(const RoomSpec &room, const Vec3 &src, const Vec3 &rcv, int max_reflection_order, double k)
    {
        const auto images = generate_images(room, src, rcv, max_reflection_order);
        return rtf_ism_omni(images, k);
    }

    RtfSpectrum rtf_ism_omni(const Scene &scene, const std::vector<double> &frequencies,
                             const ExecutionOptions &execution)
    {
        check_grid(frequencies);
        const auto images = scene.images();
        std::vector<double> ks;
        for (double f : frequencies)
            ks.push_back(scene.room.medium.wavenumber(f));
        std::vector<std::vector<cdouble>> partials(chunk_count(images.size(), execution.chunk_size),
                                                   std::vector<cdouble>(frequencies.size()));
        run_chunks(images.size(), execution,
                   [&](std::size_t chunk, std::size_t begin, std::size_t end)
                   {
                       auto &part = partials[chunk];
                       for (std::size_t i = begin; i < end; ++i)
                           for (std::size_t f = 0; f < ks.size(); ++f)
                               part[f] += images[i].attenuation * greens_function(images[i].distance, ks[f]);
                   });
        return reduce(frequencies, partials, MethodTag::ism_omni);
    }

    cdouble rtf_gism(const ShCoefficients &source, const ObservationOffset &offset,
                     std::span<const ImageRecord> images, double k, const CouplingContext &ctx)
    {
        if (!(offset.d_y >= 0.0))
            throw DomainError("observation offset must be non-negative");
        int vmax = static_cast<int>(std::ceil(k * offset.d_y));
        if (offset.max_order_cap >= 0)
            vmax = std::min(vmax, offset.max_order_cap);
        std::vector<double> jv(static_cast<std::size_t>(vmax) + 1);
        spherical_bessel_j_all(vmax, k * offset.d_y, jv);
        const auto yv = spherical_harmonics_all(vmax, offset.theta_y, offset.phi_y);
        cdouble h{};
        for (int v = 0; v <= vmax; ++v)
            for (int u = -v; u <= v; ++u)
            {
                const cdouble rcv = jv[static_cast<std::size_t>(v)] * yv[sh_index(v, u)];
                for (int n = 0; n <= source.max_order; ++n)
                    for (int m = -n; m <= n; ++m)
                        h += source(n, m) * reverberant_coupling(n, m, v, u, images, k, ctx) * rcv;
            }
        return h;
    }

    RtfSpectrum rtf_gism(const Scene &scene, const Directivity &source, const ObservationOffset &offset,
                         const std::vector<double> &frequencies)
    {
        check_grid(frequencies);
        require_same_grid(source.frequencies(), frequencies, "source directivity");
        const auto images = scene.images();
        const Medium &medium = scene.room.medium;
        int vmax = static_cast<int>(std::ceil(medium.wavenumber(frequencies.back()) * offset.d_y));
        if (offset.max_order_cap >= 0)
            vmax = std::min(vmax, offset.max_order_cap);
        const CouplingContext ctx(source.max_order(), vmax);
        RtfSpectrum s;
        s.method = MethodTag::gism;
        s.frequencies = frequencies;
        for (std::size_t f = 0; f < frequencies.size(); ++f)
        {
            const ShCoefficients cs = rotate_azimuth(source.at(f), scene.source.yaw);
            s.values.push_back(rtf_gism(cs, offset, images, medium.wavenumber(frequencies[f]), ctx));
        }
        return s;
    }

    std::vector<double> fsrr_path_signs(std::size_t path_count, const FsrrConfig &config)
    {
        std::mt19937_64 rng(config.rng_seed);
        std::vector<double> out(path_count, 1.0);
        for (double &b : out)
        {
            switch (config.sign_mode)
            {
            case FsrrSignMode::random_sign:
                b = detail::coin(rng) ? -1.0 : 1.0;
                break;
            case FsrrSignMode::uniform_interval:
                b = detail::uniform(rng, -1.0, 1.0);
                break;
            case FsrrSignMode::all_plus:
                break;
            }
        }
        return out;
    }

    RtfSpectrum rtf_fsrr(const Scene &scene, const Directivity &source, const Directivity &receiver,
                         const std::vector<double> &frequencies, const FsrrConfig &config,
                         const ExecutionOptions &execution)
    {
        check_grid(frequencies);
        require_same_grid(source.frequencies(), frequencies, "source directivity");
        require_same_grid(receiver.frequencies(), frequencies, "receiver directivity");
        if (!(config.measurement_radius > 0.0))
            throw ConfigError("FSRR measurement radius must be positive");
        const auto images = scene.images();
        const auto signs = fsrr_path_signs(images.size(), config);
        const Medium &medium = scene.room.medium;
        const int nn = source.max_order();
        const int vv = receiver.max_order();

        std::vector<double> ks;
        std::vector<ShCoefficients> cs, cr;
        for (std::size_t f = 0; f < frequencies.size(); ++f)
        {
            const double k = medium.wavenumber(frequencies[f]);
            ks.push_back(k);
            cs.push_back(
                extrapolate_to_radius(rotate_azimuth(source.at(f), scene.source.yaw), config.measurement_radius, k));
            cr.push_back(extrapolate_to_radius(rotate_azimuth(receiver.at(f), scene.receiver.yaw),
                                               config.measurement_radius, k));
        }

        std::vector<std::vector<cdouble>> partials(chunk_count(images.size(), execution.chunk_size),
                                                   std::vector<cdouble>(frequencies.size()));
        run_chunks(images.size(), execution,
                   [&](std::size_t chunk, std::size_t begin, std::size_t end)
                   {
                       auto &part = partials[chunk];
                       std::vector<cdouble> ys(sh_count(nn)), yr(sh_count(vv));
                       for (std::size_t i = begin; i < end; ++i)
                       {
                           const ImageRecord &rec = images[i];
                           const double d = norm(rec.r_to_sI);
                           if (!(d > 0.0))
                               throw SingularityError("zero-length reflection path");
                           const Spherical ds = to_spherical(rec.s_to_rI_rev[0], rec.s_to_rI_rev[1], rec.s_to_rI_rev[2]);
                           const Spherical dr = to_spherical(rec.r_to_sI[0], rec.r_to_sI[1], rec.r_to_sI[2]);
                           spherical_harmonics_all(nn, ds.theta, ds.phi, ys);
                           spherical_harmonics_all(vv, dr.theta, dr.phi, yr);
                           const double gain = signs[i] * rec.attenuation / d;
                           for (std::size_t f = 0; f < ks.size(); ++f)
                           {
                               cdouble s{};
                               cdouble r{};
                               for (std::size_t j = 0; j < ys.size(); ++j)
                                   s += cs[f].values[j] * ys[j];
                               for (std::size_t j = 0; j < yr.size(); ++j)
                                   r += cr[f].values[j] * yr[j];
                               part[f] += gain * std::polar(1.0, -ks[f] * d) * s * r;
                           }
                       }
                   });
        return reduce(frequencies, partials, MethodTag::fsrr);
    }
}
