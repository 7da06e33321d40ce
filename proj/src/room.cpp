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

#include "deism/room.hpp"
#include "deism/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <tuple>

namespace deism
{
    namespace
    {
        const char *axis_name(int a) { return a == 0 ? "x" : (a == 1 ? "y" : "z"); }

        ImageRecord make_record(const Index3 &p, const Index3 &q, const Vec3 &image, const Vec3 &sI_to_r,
                                const Vec3 &s_to_rI_rev, const IndexPair &rev)
        {
            ImageRecord rec;
            rec.p = p;
            rec.q = q;
            rec.image_position = image;
            rec.sI_to_r = sI_to_r;
            for (int a = 0; a < 3; ++a)
                rec.r_to_sI[a] = -sI_to_r[a];
            rec.p_rev = rev.p;
            rec.q_rev = rev.q;
            rec.s_to_rI_rev = s_to_rI_rev;
            rec.distance = norm(sI_to_r);
            rec.reflection_order = reflection_order(p, q);
            return rec;
        }
    }

    double norm(const Vec3 &v) noexcept { return std::hypot(v[0], v[1], v[2]); }

    void RoomSpec::validate() const
    {
        for (int a = 0; a < 3; ++a)
            if (!(dimensions[a] > 0.0) || !std::isfinite(dimensions[a]))
                throw ConfigError(std::string("room dimension L") + axis_name(a) + " must be positive");
        if (!(zeta > 0.0) || !std::isfinite(zeta))
            throw ConfigError("impedance zeta must be positive");
        medium.validate();
    }

    void validate_pose(const TransducerPose &pose, const RoomSpec &room, std::string_view label)
    {
        for (int a = 0; a < 3; ++a)
        {
            const double x = pose.position[a];
            if (!(x > 0.0 && x < room.dimensions[a]))
                throw ConfigError(std::string(label) + " position " + axis_name(a) + " = " + std::to_string(x) +
                                  " is not strictly inside (0, " + std::to_string(room.dimensions[a]) + ")");
        }
        if (!std::isfinite(pose.yaw))
            throw ConfigError(std::string(label) + " yaw must be finite");
    }

    Vec3 image_position(const Index3 &p, const Index3 &q, const Vec3 &src, const RoomSpec &room)
    {
        Vec3 out;
        for (int a = 0; a < 3; ++a)
            out[a] = src[a] - 2.0 * p[a] * src[a] + 2.0 * q[a] * room.dimensions[a];
        return out;
    }

    PathVectors path_vectors(const Index3 &p, const Index3 &q, const Vec3 &src, const Vec3 &rcv,
                             const RoomSpec &room)
    {
        PathVectors out;
        for (int a = 0; a < 3; ++a)
        {
            const double l2 = 2.0 * q[a] * room.dimensions[a];
            out.sI_to_r[a] = rcv[a] - src[a] + 2.0 * p[a] * src[a] - l2;
            out.s_to_rI[a] = rcv[a] - src[a] - 2.0 * p[a] * rcv[a] + l2;
        }
        return out;
    }

    IndexPair reversed_path_indices(const Index3 &p, const Index3 &q)
    {
        IndexPair out;
        for (int a = 0; a < 3; ++a)
        {
            const int s = 2 * q[a] - p[a];
            if (std::abs(s) % 2 == 1)
            {
                out.p[a] = p[a];
                out.q[a] = q[a];
                continue;
            }
            const int num = p[a] - 2 * q[a];
            const int qq = num >= 0 ? num / 2 : -((-num + 1) / 2);
            out.q[a] = qq;
            out.p[a] = s + 2 * qq;
        }
        return out;
    }

    int reflection_order(const Index3 &p, const Index3 &q) noexcept
    {
        return std::abs(2 * q[0] - p[0]) + std::abs(2 * q[1] - p[1]) + std::abs(2 * q[2] - p[2]);
    }

    Vec3 incident_angles(const Vec3 &r, AngleConvention convention)
    {
        const double len = norm(r);
        if (!(len > 0.0))
            throw DomainError("incident angles need a non-zero path vector");
        Vec3 out;
        for (int a = 0; a < 3; ++a)
        {
            const double c = convention == AngleConvention::absolute ? std::abs(r[a]) / len : r[a] / len;
            out[a] = std::acos(std::clamp(c, -1.0, 1.0));
        }
        return out;
    }

    double reflection_coefficient(double zeta, double theta)
    {
        if (!(zeta > 0.0))
            throw DomainError("impedance zeta must be positive");
        const double zc = zeta * std::cos(theta);
        if (zc + 1.0 == 0.0)
            throw SingularityError("reflection coefficient is singular at zeta cos(theta) = -1");
        return (zc - 1.0) / (zc + 1.0);
    }

    double path_attenuation(const Index3 &p, const Index3 &q, const Vec3 &angles, double zeta)
    {
        double beta = 1.0;
        for (int a = 0; a < 3; ++a)
        {
            const int hits1 = std::abs(q[a] - p[a]);
            const int hits2 = std::abs(q[a]);
            if (hits1 + hits2 == 0)
                continue;
            beta *= std::pow(reflection_coefficient(zeta, angles[a]), hits1 + hits2);
        }
        return beta;
    }

    int default_cube_half_width(int max_reflection_order) noexcept { return (max_reflection_order + 2) / 2; }

    std::vector<ImageRecord> generate_images(const RoomSpec &room, const Vec3 &src, const Vec3 &rcv,
                                             int max_reflection_order, const ImageOptions &options)
    {
        room.validate();
        validate_pose({src, 0.0}, room, "source");
        validate_pose({rcv, 0.0}, room, "receiver");
        if (max_reflection_order < 0)
            throw ConfigError("maximum reflection order must be non-negative");
        const int nm =
            options.cube_half_width >= 0 ? options.cube_half_width : default_cube_half_width(max_reflection_order);

        std::vector<ImageRecord> out;
        for (int qx = -nm; qx <= nm; ++qx)
            for (int qy = -nm; qy <= nm; ++qy)
                for (int qz = -nm; qz <= nm; ++qz)
                    for (int px = 0; px <= 1; ++px)
                        for (int py = 0; py <= 1; ++py)
                            for (int pz = 0; pz <= 1; ++pz)
                            {
                                const Index3 p{px, py, pz};
                                const Index3 q{qx, qy, qz};
                                if (reflection_order(p, q) > max_reflection_order)
                                    continue;
                                const auto vecs = path_vectors(p, q, src, rcv, room);
                                const IndexPair rev = reversed_path_indices(p, q);
                                const auto rev_vecs = path_vectors(rev.p, rev.q, src, rcv, room);
                                ImageRecord rec = make_record(p, q, image_position(p, q, src, room), vecs.sI_to_r,
                                                              rev_vecs.s_to_rI, rev);
                                if (rec.reflection_order > 0)
                                    rec.attenuation = path_attenuation(
                                        p, q, incident_angles(rec.sI_to_r, options.angles), room.zeta);
                                out.push_back(rec);
                            }

        const auto key = [](const ImageRecord &r)
        { return std::tuple(r.reflection_order, r.q[2], r.q[1], r.q[0], r.p[2], r.p[1], r.p[0]); };
        std::sort(out.begin(), out.end(), [&](const ImageRecord &a, const ImageRecord &b) { return key(a) < key(b); });
        return out;
    }

    ImageRecord direct_path_image(const Vec3 &src, const Vec3 &rcv)
    {
        Vec3 d;
        for (int a = 0; a < 3; ++a)
            d[a] = rcv[a] - src[a];
        return make_record({0, 0, 0}, {0, 0, 0}, src, d, d, {});
    }

    void Scene::validate() const
    {
        if (max_reflection_order < 0)
            throw ConfigError("maximum reflection order must be non-negative");
        if (free_field)
        {
            room.medium.validate();
            for (int a = 0; a < 3; ++a)
                if (!std::isfinite(source.position[a]) || !std::isfinite(receiver.position[a]))
                    throw ConfigError("transducer positions must be finite");
            return;
        }
        room.validate();
        validate_pose(source, room, "source");
        validate_pose(receiver, room, "receiver");
    }

    std::vector<ImageRecord> Scene::images() const
    {
        validate();
        if (free_field)
            return {direct_path_image(source.position, receiver.position)};
        return generate_images(room, source.position, receiver.position, max_reflection_order, image_options);
    }
}
