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

#ifndef DEISM_DEISM_HPP
#define DEISM_DEISM_HPP

#include "deism/directivity.hpp"
#include "deism/parallel.hpp"
#include "deism/room.hpp"
#include "deism/spectrum.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace deism
{
    // Wigner tables plus the truncation orders they were built for.
    class CouplingContext
    {
    public:
        CouplingContext(int max_source_order, int max_receiver_order,
                        std::size_t memory_budget = WignerTable::default_memory_budget);

        int max_source_order() const noexcept { return table_.max_n(); }
        int max_receiver_order() const noexcept { return table_.max_v(); }
        const WignerTable &wigner() const noexcept { return table_; }

        // (-1)^{(p_y + p_z) m + p_z n}
        static int mirror_sign(const Index3 &p, int n, int m) noexcept;
        // (-1)^{p_x + p_y} m
        static int mirrored_mode(const Index3 &p, int m) noexcept;

    private:
        WignerTable table_;
    };

    // Free-field coupling between source mode (n, m) and receiver mode (v, u) across the
    // translation x0 = (d, theta, phi):
    //
    //   alpha = 4 pi i^{v-n} (-1)^m sum_l i^l h^(2)_l(k d) Y_{l,m-u}(theta, phi) W1 W2 xi
    //
    // Throws DomainError for indices outside the context, SingularityError for d = 0.
    cdouble single_path_coupling(int n, int m, int v, int u, const Spherical &x0, double k,
                                 const CouplingContext &ctx);

    // gamma = sum over images of beta (-1)^{(p_y+p_z)m + p_z n} alpha^{n,m'}_{v,u}(R^{sI->r}).
    // Throws DomainError for an empty list.
    cdouble reverberant_coupling(int n, int m, int v, int u, std::span<const ImageRecord> images, double k,
                                 const CouplingContext &ctx);

    // Reference contraction sum C_s(n,m) (i (-1)^u / k) gamma C_r(v,-u) built from
    // reverberant_coupling, without any of the engine's caching. Slow; meant for cross-checks.
    cdouble reference_deism(const ShCoefficients &source, const ShCoefficients &receiver,
                            std::span<const ImageRecord> images, double k, const CouplingContext &ctx);

    // Far-field contribution of one path:
    //
    //   -beta (4 pi / k) e^{-ikd} / (k d) [sum i^n C_s(n,m) Y_{n,m}(rev. direction)]
    //                                      [sum i^v C_r(v,u) Y_{v,u}(receiver -> image direction)]
    //
    // Throws SingularityError for a zero-length path.
    cdouble single_path_lc(const ImageRecord &image, const ShCoefficients &source, const ShCoefficients &receiver,
                           double k);

    struct MirrorIdentityDeviation
    {
        double mirror = 0.0;   // |Lambda Y_{n,m'}(sI->r) - Y_{n,m}(reversed s->rI)|
        double opposite = 0.0; // |Y_{n,-m}(sI->r) - (-1)^n Y_{n,-m}(r->sI)|
    };
    MirrorIdentityDeviation mirror_sh_identity_deviation(const ImageRecord &image, int n, int m);
    bool mirror_sh_identity_check(const ImageRecord &image, int n, int m, double tolerance = 1e-12);

    enum class DeismMethod
    {
        full,
        lc
    };

    // How the far-field engine contracts the two per-path sums. factored forms both sums and
    // multiplies them; mode_pairs accumulates every (n,m,v,u) product. Results agree to rounding.
    enum class LcContraction
    {
        factored,
        mode_pairs
    };

    struct DeismRequest
    {
        Scene scene;
        Directivity source;   // kind source, rotated by the source yaw inside the engine
        Directivity receiver; // kind receiver, rotated by the receiver yaw
        std::vector<double> frequencies;
        DeismMethod method = DeismMethod::full;
        // Replaces the direct-path term, one value per frequency. Lifts the overlap check.
        std::optional<std::vector<cdouble>> direct_path_override;
        // Drop coefficients above ceil(k r0) at each frequency.
        bool adaptive_truncation = false;

        // Throws ConfigError for grid mismatches, wrong directivity kinds, overlapping spheres
        // without an override, and invalid geometry.
        void validate() const;
    };

    struct DeismCounters
    {
        std::uint64_t paths = 0;            // path-frequency evaluations
        std::uint64_t inner_iterations = 0; // innermost loop trips
    };

    struct EngineOptions
    {
        ExecutionOptions execution;
        LcContraction lc_contraction = LcContraction::factored;
    };

    struct DeismResult
    {
        RtfSpectrum spectrum;
        DeismCounters counters;
    };

    // Dispatches on request.method.
    DeismResult run_deism(const DeismRequest &request, const EngineOptions &options = {});
    // Full mode coupling, whatever request.method says.
    DeismResult rtf_deism(const DeismRequest &request, const EngineOptions &options = {});
    // Far-field approximation, whatever request.method says.
    DeismResult rtf_deism_lc(const DeismRequest &request, const EngineOptions &options = {});

    // Swaps the devices (positions, yaws and directivities, each directivity changing role) and
    // compares the two spectra. Physically expected to be small, not guaranteed.
    struct ReciprocityReport
    {
        RtfSpectrum forward;
        RtfSpectrum reverse;
        double relative_l2 = 0.0;
    };
    ReciprocityReport reciprocity_diagnostic(const DeismRequest &request, const EngineOptions &options = {});
}

#endif
