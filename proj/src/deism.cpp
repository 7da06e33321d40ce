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

#include "deism/deism.hpp"
#include "deism/error.hpp"
#include "deism/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace deism
{
    namespace
    {
        // Coefficients with both parts below this are structural zeros.
        constexpr double negligible = 1e-300;

        cdouble ipow(int n) noexcept
        {
            switch (((n % 4) + 4) % 4)
            {
            case 0:
                return {1.0, 0.0};
            case 1:
                return {0.0, 1.0};
            case 2:
                return {-1.0, 0.0};
            default:
                return {0.0, -1.0};
            }
        }

        double parity(int n) noexcept { return (n & 1) ? -1.0 : 1.0; }

        bool is_negligible(cdouble c) noexcept
        {
            return std::abs(c.real()) < negligible && std::abs(c.imag()) < negligible;
        }

        // Complex products without the NaN-recovery path of operator*.
        inline cdouble mul(cdouble a, cdouble b) noexcept
        {
            return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
        }

        Spherical direction_of(const Vec3 &v) { return to_spherical(v[0], v[1], v[2]); }

        void check_mode(int n, int m, int max_order, const char *what)
        {
            if (n < 0 || n > max_order || std::abs(m) > n)
                throw DomainError(std::string(what) + " mode (" + std::to_string(n) + ", " + std::to_string(m) +
                                  ") outside the coupling context");
        }

        void require_positive_k(double k)
        {
            if (!(k > 0.0) || !std::isfinite(k))
                throw DomainError("wavenumber must be positive");
        }

        bool is_direct(const ImageRecord &rec) noexcept
        {
            return rec.p == Index3{0, 0, 0} && rec.q == Index3{0, 0, 0};
        }

        // Everything the engines need, fixed before the path loop starts.
        struct Prepared
        {
            std::vector<ImageRecord> images;
            std::vector<double> k;
            std::vector<ShCoefficients> source;
            std::vector<ShCoefficients> receiver;
            int n_max = 0;
            int v_max = 0;
        };

        ShCoefficients truncated(const ShCoefficients &c, int order)
        {
            ShCoefficients out = c;
            for (int n = std::max(order + 1, 0); n <= c.max_order; ++n)
                for (int m = -n; m <= n; ++m)
                    out(n, m) = 0.0;
            return out;
        }

        Prepared prepare(const DeismRequest &req)
        {
            req.validate();
            Prepared out;
            out.images = req.scene.images();
            if (req.direct_path_override)
                std::erase_if(out.images, is_direct);
            out.n_max = req.source.max_order();
            out.v_max = req.receiver.max_order();
            const Medium &medium = req.scene.room.medium;
            for (std::size_t f = 0; f < req.frequencies.size(); ++f)
            {
                const double k = medium.wavenumber(req.frequencies[f]);
                out.k.push_back(k);
                ShCoefficients cs = rotate_azimuth(req.source.at(f), req.scene.source.yaw);
                ShCoefficients cr = rotate_azimuth(req.receiver.at(f), req.scene.receiver.yaw);
                if (req.adaptive_truncation)
                {
                    if (req.source.r0() > 0.0)
                        cs = truncated(cs, truncation_order(k, req.source.r0()));
                    if (req.receiver.r0() > 0.0)
                        cr = truncated(cr, truncation_order(k, req.receiver.r0()));
                }
                out.source.push_back(std::move(cs));
                out.receiver.push_back(std::move(cr));
            }
            return out;
        }

        RtfSpectrum finish(const DeismRequest &req, std::vector<std::vector<cdouble>> &partials, MethodTag tag)
        {
            RtfSpectrum s;
            s.method = tag;
            s.frequencies = req.frequencies;
            s.values.assign(req.frequencies.size(), cdouble{});
            for (const auto &part : partials)
                for (std::size_t f = 0; f < part.size(); ++f)
                    s.values[f] += part[f];
            if (req.direct_path_override)
                for (std::size_t f = 0; f < s.values.size(); ++f)
                    s.values[f] += (*req.direct_path_override)[f];
            return s;
        }

        DeismCounters sum_counters(const std::vector<DeismCounters> &parts)
        {
            DeismCounters total;
            for (const auto &c : parts)
            {
                total.paths += c.paths;
                total.inner_iterations += c.inner_iterations;
            }
            return total;
        }

        // W1 W2 xi for every (n, v, m, u), stored over l = |n-v| .. n+v with l innermost.
        class CouplingKernel
        {
        public:
            CouplingKernel(const CouplingContext &ctx)
                : n_max_(ctx.max_source_order()), v_max_(ctx.max_receiver_order()),
                  offsets_(static_cast<std::size_t>(n_max_ + 1) * (v_max_ + 1) * (2 * n_max_ + 1) * (2 * v_max_ + 1))
            {
                const WignerTable &w = ctx.wigner();
                for (int n = 0; n <= n_max_; ++n)
                    for (int v = 0; v <= v_max_; ++v)
                        for (int m = -n; m <= n; ++m)
                            for (int u = -v; u <= v; ++u)
                            {
                                offsets_[slot(n, v, m, u)] = values_.size();
                                for (int l = std::abs(n - v); l <= n + v; ++l)
                                {
                                    const double xi = std::sqrt((2.0 * n + 1.0) * (2.0 * v + 1.0) * (2.0 * l + 1.0) /
                                                                (4.0 * pi));
                                    values_.push_back(w.w1_unchecked(n, v, l) * w.w2_unchecked(n, v, l, m, u) * xi);
                                }
                            }
            }

            const double *segment(int n, int v, int m, int u) const noexcept
            {
                return values_.data() + offsets_[slot(n, v, m, u)];
            }

        private:
            std::size_t slot(int n, int v, int m, int u) const noexcept
            {
                return ((static_cast<std::size_t>(n) * (v_max_ + 1) + v) * (2 * n_max_ + 1) + (m + n_max_)) *
                           (2 * v_max_ + 1) +
                       (u + v_max_);
            }

            int n_max_;
            int v_max_;
            std::vector<std::size_t> offsets_;
            std::vector<double> values_;
        };

        DeismResult full_engine(const DeismRequest &req, const EngineOptions &options)
        {
            const Prepared prep = prepare(req);
            const int nn = prep.n_max;
            const int vv = prep.v_max;
            const int ll = nn + vv;
            const std::size_t freq_count = prep.k.size();
            const CouplingContext ctx(nn, vv);
            const CouplingKernel kernel(ctx);

            // Path-independent factors: i^{-n} C_s(n,m) and i^v (-1)^u C_r(v,-u).
            std::vector<std::vector<cdouble>> src_base(freq_count), rcv_vec(freq_count);
            for (std::size_t f = 0; f < freq_count; ++f)
            {
                src_base[f].resize(sh_count(nn));
                rcv_vec[f].resize(sh_count(vv));
                for (int n = 0; n <= nn; ++n)
                    for (int m = -n; m <= n; ++m)
                        src_base[f][sh_index(n, m)] = ipow(-n) * prep.source[f](n, m);
                for (int v = 0; v <= vv; ++v)
                    for (int u = -v; u <= v; ++u)
                        rcv_vec[f][sh_index(v, u)] = ipow(v) * parity(u) * prep.receiver[f](v, -u);
            }

            const std::size_t chunks = chunk_count(prep.images.size(), options.execution.chunk_size);
            std::vector<std::vector<cdouble>> partials(chunks, std::vector<cdouble>(freq_count));
            std::vector<DeismCounters> counters(chunks);

            run_chunks(prep.images.size(), options.execution,
                       [&](std::size_t chunk, std::size_t begin, std::size_t end)
                       {
                           const std::size_t row = static_cast<std::size_t>(ll) + 1;
                           std::vector<cdouble> y(sh_count(ll));
                           std::vector<cdouble> h(row);
                           std::vector<double> b_re((2 * ll + 1) * row);
                           std::vector<double> b_im((2 * ll + 1) * row);
                           std::vector<cdouble> svec(sh_count(nn));
                           auto &part = partials[chunk];
                           DeismCounters count;

                           for (std::size_t i = begin; i < end; ++i)
                           {
                               const ImageRecord &rec = prep.images[i];
                               if (!(rec.distance > 0.0))
                                   throw SingularityError("zero-length reflection path");
                               const Spherical dir = direction_of(rec.sI_to_r);
                               spherical_harmonics_all(ll, dir.theta, dir.phi, y);

                               for (std::size_t f = 0; f < freq_count; ++f)
                               {
                                   const double k = prep.k[f];
                                   spherical_hankel2_all(ll, k * rec.distance, h);
                                   for (int mu = -ll; mu <= ll; ++mu)
                                   {
                                       double *re = b_re.data() + static_cast<std::size_t>(mu + ll) * row;
                                       double *im = b_im.data() + static_cast<std::size_t>(mu + ll) * row;
                                       for (int l = 0; l <= ll; ++l)
                                       {
                                           cdouble b{};
                                           if (std::abs(mu) <= l)
                                               b = mul(ipow(l) * h[static_cast<std::size_t>(l)], y[sh_index(l, mu)]);
                                           re[l] = b.real();
                                           im[l] = b.imag();
                                       }
                                   }

                                   // Source vector over the mirrored mode m' = (-1)^{px+py} m.
                                   for (int n = 0; n <= nn; ++n)
                                       for (int mp = -n; mp <= n; ++mp)
                                       {
                                           const int m = CouplingContext::mirrored_mode(rec.p, mp);
                                           svec[sh_index(n, mp)] = src_base[f][sh_index(n, m)] *
                                                                   (CouplingContext::mirror_sign(rec.p, n, m) *
                                                                    parity(mp));
                                       }

                                   const auto &rv = rcv_vec[f];
                                   cdouble total{};
                                   std::uint64_t trips = 0;
                                   for (int n = 0; n <= nn; ++n)
                                       for (int mp = -n; mp <= n; ++mp)
                                       {
                                           const cdouble s = svec[sh_index(n, mp)];
                                           if (is_negligible(s))
                                               continue;
                                           cdouble acc{};
                                           for (int v = 0; v <= vv; ++v)
                                           {
                                               const int lo = std::abs(n - v);
                                               const int len = n + v - lo + 1;
                                               for (int u = -v; u <= v; ++u)
                                               {
                                                   const cdouble r = rv[sh_index(v, u)];
                                                   if (is_negligible(r))
                                                       continue;
                                                   const std::size_t base =
                                                       static_cast<std::size_t>(mp - u + ll) * row + lo;
                                                   const double *t = kernel.segment(n, v, mp, u);
                                                   const double *re = b_re.data() + base;
                                                   const double *im = b_im.data() + base;
                                                   double dre = 0.0;
                                                   double dim = 0.0;
                                                   for (int j = 0; j < len; ++j)
                                                   {
                                                       dre += t[j] * re[j];
                                                       dim += t[j] * im[j];
                                                   }
                                                   trips += static_cast<std::uint64_t>(len);
                                                   acc += mul(r, {dre, dim});
                                               }
                                           }
                                           total += mul(s, acc);
                                       }
                                   const cdouble pref = cdouble(0.0, 4.0 * pi * rec.attenuation / k);
                                   part[f] += mul(pref, total);
                                   ++count.paths;
                                   count.inner_iterations += trips;
                               }
                           }
                           counters[chunk] = count;
                       });

            return {finish(req, partials, MethodTag::deism), sum_counters(counters)};
        }

        DeismResult lc_engine(const DeismRequest &req, const EngineOptions &options)
        {
            const Prepared prep = prepare(req);
            const int nn = prep.n_max;
            const int vv = prep.v_max;
            const std::size_t freq_count = prep.k.size();
            const std::size_t ns = sh_count(nn);
            const std::size_t nr = sh_count(vv);

            std::vector<std::vector<cdouble>> src_w(freq_count), rcv_w(freq_count);
            for (std::size_t f = 0; f < freq_count; ++f)
            {
                src_w[f].resize(ns);
                rcv_w[f].resize(nr);
                for (int n = 0; n <= nn; ++n)
                    for (int m = -n; m <= n; ++m)
                        src_w[f][sh_index(n, m)] = ipow(n) * prep.source[f](n, m);
                for (int v = 0; v <= vv; ++v)
                    for (int u = -v; u <= v; ++u)
                        rcv_w[f][sh_index(v, u)] = ipow(v) * prep.receiver[f](v, u);
            }

            const std::size_t chunks = chunk_count(prep.images.size(), options.execution.chunk_size);
            std::vector<std::vector<cdouble>> partials(chunks, std::vector<cdouble>(freq_count));
            std::vector<DeismCounters> counters(chunks);
            const bool pairs = options.lc_contraction == LcContraction::mode_pairs;

            run_chunks(prep.images.size(), options.execution,
                       [&](std::size_t chunk, std::size_t begin, std::size_t end)
                       {
                           std::vector<cdouble> ys(ns), yr(nr), a(ns);
                           std::vector<double> b_re(nr), b_im(nr);
                           auto &part = partials[chunk];
                           DeismCounters count;

                           for (std::size_t i = begin; i < end; ++i)
                           {
                               const ImageRecord &rec = prep.images[i];
                               const double d = norm(rec.r_to_sI);
                               if (!(d > 0.0))
                                   throw SingularityError("zero-length reflection path");
                               const Spherical ds = direction_of(rec.s_to_rI_rev);
                               const Spherical dr = direction_of(rec.r_to_sI);
                               spherical_harmonics_all(nn, ds.theta, ds.phi, ys);
                               spherical_harmonics_all(vv, dr.theta, dr.phi, yr);

                               for (std::size_t f = 0; f < freq_count; ++f)
                               {
                                   const double k = prep.k[f];
                                   cdouble product{};
                                   if (pairs)
                                   {
                                       for (std::size_t j = 0; j < ns; ++j)
                                           a[j] = mul(src_w[f][j], ys[j]);
                                       for (std::size_t j = 0; j < nr; ++j)
                                       {
                                           const cdouble b = mul(rcv_w[f][j], yr[j]);
                                           b_re[j] = b.real();
                                           b_im[j] = b.imag();
                                       }
                                       double pr = 0.0;
                                       double pi_ = 0.0;
                                       std::uint64_t trips = 0;
                                       for (std::size_t j = 0; j < ns; ++j)
                                       {
                                           if (is_negligible(src_w[f][j]))
                                               continue;
                                           const double ar = a[j].real();
                                           const double ai = a[j].imag();
                                           for (std::size_t t = 0; t < nr; ++t)
                                           {
                                               pr += ar * b_re[t] - ai * b_im[t];
                                               pi_ += ar * b_im[t] + ai * b_re[t];
                                           }
                                           trips += nr;
                                       }
                                       product = {pr, pi_};
                                       count.inner_iterations += trips;
                                   }
                                   else
                                   {
                                       cdouble s{};
                                       cdouble r{};
                                       for (std::size_t j = 0; j < ns; ++j)
                                           s += mul(src_w[f][j], ys[j]);
                                       for (std::size_t j = 0; j < nr; ++j)
                                           r += mul(rcv_w[f][j], yr[j]);
                                       product = mul(s, r);
                                       count.inner_iterations += ns + nr;
                                   }
                                   const double kd = k * d;
                                   const cdouble spread = std::polar(1.0 / kd, -kd);
                                   const cdouble pref = spread * (-rec.attenuation * 4.0 * pi / k);
                                   part[f] += mul(pref, product);
                                   ++count.paths;
                               }
                           }
                           counters[chunk] = count;
                       });

            return {finish(req, partials, MethodTag::deism_lc), sum_counters(counters)};
        }
    }

    CouplingContext::CouplingContext(int max_source_order, int max_receiver_order, std::size_t memory_budget)
        : table_(max_source_order, max_receiver_order, memory_budget)
    {
    }

    int CouplingContext::mirror_sign(const Index3 &p, int n, int m) noexcept
    {
        const int e = (p[1] + p[2]) * m + p[2] * n;
        return (e & 1) ? -1 : 1;
    }

    int CouplingContext::mirrored_mode(const Index3 &p, int m) noexcept { return ((p[0] + p[1]) & 1) ? -m : m; }

    cdouble single_path_coupling(int n, int m, int v, int u, const Spherical &x0, double k,
                                 const CouplingContext &ctx)
    {
        check_mode(n, m, ctx.max_source_order(), "source");
        check_mode(v, u, ctx.max_receiver_order(), "receiver");
        require_positive_k(k);
        if (!(x0.r > 0.0))
            throw SingularityError("mode coupling across a zero-length translation");
        const int mu = m - u;
        std::vector<cdouble> h(static_cast<std::size_t>(n + v) + 1);
        spherical_hankel2_all(n + v, k * x0.r, h);
        const WignerTable &w = ctx.wigner();
        cdouble sum{};
        for (int l = std::abs(n - v); l <= n + v; ++l)
        {
            if (std::abs(mu) > l)
                continue;
            const double xi = std::sqrt((2.0 * n + 1.0) * (2.0 * v + 1.0) * (2.0 * l + 1.0) / (4.0 * pi));
            sum += ipow(l) * h[static_cast<std::size_t>(l)] * spherical_harmonic({l, mu}, x0.theta, x0.phi) *
                   (w.w1(n, v, l) * w.w2(n, v, l, m, u) * xi);
        }
        return 4.0 * pi * ipow(v - n) * parity(m) * sum;
    }

    cdouble reverberant_coupling(int n, int m, int v, int u, std::span<const ImageRecord> images, double k,
                                 const CouplingContext &ctx)
    {
        if (images.empty())
            throw DomainError("reverberant coupling needs at least one image");
        cdouble gamma{};
        for (const ImageRecord &rec : images)
        {
            const Spherical x0 = direction_of(rec.sI_to_r);
            const int mp = CouplingContext::mirrored_mode(rec.p, m);
            gamma += rec.attenuation * CouplingContext::mirror_sign(rec.p, n, m) *
                     single_path_coupling(n, mp, v, u, x0, k, ctx);
        }
        return gamma;
    }

    cdouble reference_deism(const ShCoefficients &source, const ShCoefficients &receiver,
                            std::span<const ImageRecord> images, double k, const CouplingContext &ctx)
    {
        cdouble h{};
        for (int n = 0; n <= source.max_order; ++n)
            for (int m = -n; m <= n; ++m)
                for (int v = 0; v <= receiver.max_order; ++v)
                    for (int u = -v; u <= v; ++u)
                    {
                        const cdouble alpha_t =
                            cdouble(0.0, parity(u) / k) * reverberant_coupling(n, m, v, u, images, k, ctx);
                        h += source(n, m) * alpha_t * receiver(v, -u);
                    }
        return h;
    }

    cdouble single_path_lc(const ImageRecord &image, const ShCoefficients &source, const ShCoefficients &receiver,
                           double k)
    {
        require_positive_k(k);
        const double d = norm(image.r_to_sI);
        if (!(d > 0.0))
            throw SingularityError("zero-length reflection path");
        const Spherical ds = direction_of(image.s_to_rI_rev);
        const Spherical dr = direction_of(image.r_to_sI);
        const auto ys = spherical_harmonics_all(source.max_order, ds.theta, ds.phi);
        const auto yr = spherical_harmonics_all(receiver.max_order, dr.theta, dr.phi);
        cdouble s{};
        for (int n = 0; n <= source.max_order; ++n)
            for (int m = -n; m <= n; ++m)
                s += ipow(n) * source(n, m) * ys[sh_index(n, m)];
        cdouble r{};
        for (int v = 0; v <= receiver.max_order; ++v)
            for (int u = -v; u <= v; ++u)
                r += ipow(v) * receiver(v, u) * yr[sh_index(v, u)];
        const double kd = k * d;
        return -image.attenuation * (4.0 * pi / k) * std::polar(1.0 / kd, -kd) * s * r;
    }

    MirrorIdentityDeviation mirror_sh_identity_deviation(const ImageRecord &image, int n, int m)
    {
        SphIndex{n, m}.validate();
        const Spherical fwd = direction_of(image.sI_to_r);
        const Spherical rev = direction_of(image.s_to_rI_rev);
        const Spherical back = direction_of(image.r_to_sI);
        const int mp = CouplingContext::mirrored_mode(image.p, m);
        MirrorIdentityDeviation out;
        out.mirror = std::abs(double(CouplingContext::mirror_sign(image.p, n, m)) *
                                  spherical_harmonic({n, mp}, fwd.theta, fwd.phi) -
                              spherical_harmonic({n, m}, rev.theta, rev.phi));
        out.opposite = std::abs(spherical_harmonic({n, -m}, fwd.theta, fwd.phi) -
                                parity(n) * spherical_harmonic({n, -m}, back.theta, back.phi));
        return out;
    }

    bool mirror_sh_identity_check(const ImageRecord &image, int n, int m, double tolerance)
    {
        const auto dev = mirror_sh_identity_deviation(image, n, m);
        return dev.mirror <= tolerance && dev.opposite <= tolerance;
    }

    void DeismRequest::validate() const
    {
        scene.validate();
        if (frequencies.empty())
            throw ConfigError("request has no frequencies");
        for (std::size_t i = 0; i < frequencies.size(); ++i)
        {
            if (!(frequencies[i] > 0.0) || !std::isfinite(frequencies[i]))
                throw ConfigError("frequencies must be positive and finite");
            if (i > 0 && !(frequencies[i] > frequencies[i - 1]))
                throw ConfigError("frequencies must be strictly increasing");
        }
        if (source.kind() != DirectivityKind::source)
            throw ConfigError("source directivity has kind 'receiver'");
        if (receiver.kind() != DirectivityKind::receiver)
            throw ConfigError("receiver directivity has kind 'source'");
        require_same_grid(source.frequencies(), frequencies, "source directivity");
        require_same_grid(receiver.frequencies(), frequencies, "receiver directivity");
        if (direct_path_override)
        {
            if (direct_path_override->size() != frequencies.size())
                throw ConfigError("direct-path override has " + std::to_string(direct_path_override->size()) +
                                  " values for " + std::to_string(frequencies.size()) + " frequencies");
            for (cdouble c : *direct_path_override)
                if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                    throw ConfigError("direct-path override contains non-finite values");
            return;
        }
        Vec3 d;
        for (int a = 0; a < 3; ++a)
            d[a] = scene.receiver.position[a] - scene.source.position[a];
        const double dist = norm(d);
        if (!(dist > source.r0() + receiver.r0()))
            throw ConfigError("transparent spheres overlap: source-receiver distance " + std::to_string(dist) +
                              " m does not exceed r0_source + r0_receiver = " +
                              std::to_string(source.r0() + receiver.r0()) +
                              " m; supply a direct-path override");
    }

    DeismResult run_deism(const DeismRequest &request, const EngineOptions &options)
    {
        return request.method == DeismMethod::full ? full_engine(request, options) : lc_engine(request, options);
    }

    DeismResult rtf_deism(const DeismRequest &request, const EngineOptions &options)
    {
        return full_engine(request, options);
    }

    DeismResult rtf_deism_lc(const DeismRequest &request, const EngineOptions &options)
    {
        return lc_engine(request, options);
    }

    ReciprocityReport reciprocity_diagnostic(const DeismRequest &request, const EngineOptions &options)
    {
        DeismRequest reverse = request;
        std::swap(reverse.scene.source, reverse.scene.receiver);
        reverse.source = Directivity(DirectivityKind::source, request.receiver.r0(), request.receiver.frequencies(),
                                     request.receiver.coefficients());
        reverse.receiver = Directivity(DirectivityKind::receiver, request.source.r0(), request.source.frequencies(),
                                       request.source.coefficients());
        ReciprocityReport report;
        report.forward = run_deism(request, options).spectrum;
        report.reverse = run_deism(reverse, options).spectrum;
        report.relative_l2 = relative_l2(report.forward, report.reverse);
        return report;
    }
}
