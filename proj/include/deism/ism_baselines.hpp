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

#ifndef DEISM_ISM_BASELINES_HPP
#define DEISM_ISM_BASELINES_HPP

#include "deism/deism.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace deism
{
    // e^{-ikd} / (4 pi d). Throws SingularityError for d = 0.
    cdouble greens_function(double d, double k);

    // sum over images of beta G(|R^{sI->r}|, k).
    cdouble rtf_ism_omni(std::span<const ImageRecord> images, double k);
    cdouble rtf_ism_omni(const RoomSpec &room, const Vec3 &src, const Vec3 &rcv, int max_reflection_order, double k);
    RtfSpectrum rtf_ism_omni(const Scene &scene, const std::vector<double> &frequencies,
                             const ExecutionOptions &execution = {});

    // Observation point at (d_y, theta_y, phi_y) from the receiver position.
    struct ObservationOffset
    {
        double d_y = 0.0;
        double theta_y = 0.0;
        double phi_y = 0.0;
        int max_order_cap = -1; // caps V = ceil(k d_y) when non-negative
    };

    // sum C_s(n,m) gamma^{n,m}_{v,u} j_v(k d_y) Y_{v,u}(theta_y, phi_y), V = ceil(k d_y). The
    // context must cover the source order and V.
    cdouble rtf_gism(const ShCoefficients &source, const ObservationOffset &offset,
                     std::span<const ImageRecord> images, double k, const CouplingContext &ctx);
    // Source directivity rotated by the source yaw; the offset is in room coordinates.
    RtfSpectrum rtf_gism(const Scene &scene, const Directivity &source, const ObservationOffset &offset,
                         const std::vector<double> &frequencies);

    enum class FsrrSignMode
    {
        random_sign,      // B = +1 or -1 with equal probability
        uniform_interval, // B uniform in [-1, 1]
        all_plus          // B = +1
    };

    struct FsrrConfig
    {
        std::uint64_t rng_seed = 0;
        double measurement_radius = 1.0; // [m]
        FsrrSignMode sign_mode = FsrrSignMode::random_sign;
    };

    // One B per path, drawn serially from mt19937_64(seed) in image order.
    std::vector<double> fsrr_path_signs(std::size_t path_count, const FsrrConfig &config);

    // sum B beta e^{-ikd}/d [sum C~_s Y(reversed s->rI)] [sum C~_r Y(r->sI)], with C~ the
    // coefficients carried to the measurement radius. The directivities' r0 plays no role.
    RtfSpectrum rtf_fsrr(const Scene &scene, const Directivity &source, const Directivity &receiver,
                         const std::vector<double> &frequencies, const FsrrConfig &config,
                         const ExecutionOptions &execution = {});
}

#endif
