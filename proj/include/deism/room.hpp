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

#ifndef DEISM_ROOM_HPP
#define DEISM_ROOM_HPP

#include "deism/directivity.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace deism
{
    using Vec3 = std::array<double, 3>;
    using Index3 = std::array<int, 3>;

    // Shoebox room with one uniform, real, frequency-independent normalized impedance.
    struct RoomSpec
    {
        Vec3 dimensions{4.0, 3.0, 2.5}; // (Lx, Ly, Lz) [m]
        double zeta = 18.0;
        Medium medium;

        // Throws ConfigError for non-positive or non-finite dimensions or zeta.
        void validate() const;
    };

    struct TransducerPose
    {
        Vec3 position{};
        double yaw = 0.0; // rotation about +z [rad], 0 faces +x
    };

    // Throws ConfigError unless 0 < position_a < L_a on every axis. label names the pose in the message.
    void validate_pose(const TransducerPose &pose, const RoomSpec &room, std::string_view label);

    // One reflection path. p in {0,1}^3 selects mirroring, q counts room-cell shifts.
    struct ImageRecord
    {
        Index3 p{};
        Index3 q{};
        Vec3 image_position{}; // x^{sI}_{p,q}
        Vec3 sI_to_r{};        // receiver minus source image
        Vec3 r_to_sI{};        // exactly -sI_to_r
        Index3 p_rev{};        // reversed-path indices
        Index3 q_rev{};
        Vec3 s_to_rI_rev{};    // source to receiver image along the reversed path
        double distance = 0.0; // |sI_to_r|
        double attenuation = 1.0;
        int reflection_order = 0;
    };

    Vec3 image_position(const Index3 &p, const Index3 &q, const Vec3 &src, const RoomSpec &room);

    struct PathVectors
    {
        Vec3 sI_to_r{}; // x_r - x^{sI}_{p,q}
        Vec3 s_to_rI{}; // x^{rI}_{p,q} - x_s, receiver mirrored with the same (p, q)
    };
    PathVectors path_vectors(const Index3 &p, const Index3 &q, const Vec3 &src, const Vec3 &rcv,
                             const RoomSpec &room);

    struct IndexPair
    {
        Index3 p{};
        Index3 q{};
    };

    // Per axis: odd |2q-p| keeps (p, q). Even |2q-p| maps to (p', q') with 2q - p = p' - 2q' and
    // q' = floor((p - 2q) / 2).
    IndexPair reversed_path_indices(const Index3 &p, const Index3 &q);

    // |2q_x - p_x| + |2q_y - p_y| + |2q_z - p_z|.
    int reflection_order(const Index3 &p, const Index3 &q) noexcept;

    enum class AngleConvention
    {
        absolute,        // theta_a = arccos(|R_a| / |R|), always in [0, pi/2]
        signed_component // theta_a = arccos(R_a / |R|)
    };

    // Incidence angles on the walls normal to x, y and z. Throws DomainError for a zero vector.
    Vec3 incident_angles(const Vec3 &r, AngleConvention convention = AngleConvention::absolute);

    // (zeta cos(theta) - 1) / (zeta cos(theta) + 1). Throws DomainError for zeta <= 0 and
    // SingularityError when the denominator vanishes.
    double reflection_coefficient(double zeta, double theta);

    // beta_x1^|q_x - p_x| beta_x2^|q_x| beta_y1^|q_y - p_y| ... with the coefficient of each axis
    // taken from that axis' incidence angle. Walls "1" sit at a = 0, walls "2" at a = L_a.
    double path_attenuation(const Index3 &p, const Index3 &q, const Vec3 &angles, double zeta);

    struct ImageOptions
    {
        AngleConvention angles = AngleConvention::absolute;
        // Half-width N_m of the q cube. Negative derives ceil((N_o + 1) / 2), which covers every
        // image of order <= N_o. A smaller explicit value drops images, as some references do.
        int cube_half_width = -1;
    };

    int default_cube_half_width(int max_reflection_order) noexcept;

    // Every image with reflection order <= max_reflection_order, sorted by
    // (order, q_z, q_y, q_x, p_z, p_y, p_x). Validates room and poses.
    std::vector<ImageRecord> generate_images(const RoomSpec &room, const Vec3 &src, const Vec3 &rcv,
                                             int max_reflection_order, const ImageOptions &options = {});

    // The single direct path between two points in free field (no room, attenuation 1).
    ImageRecord direct_path_image(const Vec3 &src, const Vec3 &rcv);

    // Geometry shared by every RTF method.
    struct Scene
    {
        RoomSpec room;
        TransducerPose source;
        TransducerPose receiver;
        int max_reflection_order = 25;
        ImageOptions image_options;
        // Direct path only, without walls or the inside-room check. The medium still applies.
        bool free_field = false;

        // Throws ConfigError for invalid room, poses or order.
        void validate() const;
        std::vector<ImageRecord> images() const;
    };

    double norm(const Vec3 &v) noexcept;
}

#endif
