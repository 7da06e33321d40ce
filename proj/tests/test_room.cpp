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
#include "deism/room.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <set>
#include <tuple>

using namespace deism;

namespace
{
    // Walls crossed by the unfolded straight ray from the image to the receiver along one axis:
    // the integer multiples of L strictly between the two coordinates.
    int unfolded_wall_hits(double from, double to, double length)
    {
        const double lo = std::min(from, to), hi = std::max(from, to);
        int hits = 0;
        for (long k = static_cast<long>(std::floor(lo / length)) - 1; k <= static_cast<long>(std::ceil(hi / length)) + 1;
             ++k)
        {
            const double wall = static_cast<double>(k) * length;
            hits += (wall > lo && wall < hi);
        }
        return hits;
    }

    std::size_t brute_force_count(int max_order)
    {
        std::size_t count = 0;
        const int bound = max_order + 3;
        for (int qx = -bound; qx <= bound; ++qx)
            for (int qy = -bound; qy <= bound; ++qy)
                for (int qz = -bound; qz <= bound; ++qz)
                    for (int p = 0; p < 8; ++p)
                    {
                        const int hits = std::abs(2 * qx - (p & 1)) + std::abs(2 * qy - ((p >> 1) & 1)) +
                                         std::abs(2 * qz - ((p >> 2) & 1));
                        count += hits <= max_order;
                    }
        return count;
    }

    RoomSpec random_room(test::Rng &rng)
    {
        RoomSpec room;
        room.dimensions = {rng.uniform(2.0, 8.0), rng.uniform(2.0, 6.0), rng.uniform(2.0, 4.0)};
        room.zeta = rng.uniform(2.0, 40.0);
        return room;
    }

    Vec3 random_point(test::Rng &rng, const RoomSpec &room)
    {
        return {rng.uniform(0.05, 0.95) * room.dimensions[0], rng.uniform(0.05, 0.95) * room.dimensions[1],
                rng.uniform(0.05, 0.95) * room.dimensions[2]};
    }
}

TEST_CASE("image counts match brute-force enumeration")
{
    const RoomSpec room;
    const Vec3 src{1.1, 1.1, 1.3}, rcv{2.9, 1.9, 1.3};
    const std::size_t frozen[] = {1, 7, 25, 63};
    for (int order = 0; order <= 3; ++order)
    {
        const auto images = generate_images(room, src, rcv, order);
        CHECK(images.size() == brute_force_count(order));
        CHECK(images.size() == frozen[order]);
    }
}

TEST_CASE("image list is unique and sorted by order, q and p")
{
    const RoomSpec room;
    const auto images = generate_images(room, {1.0, 1.0, 1.0}, {3.0, 2.0, 1.5}, 6);
    std::set<std::tuple<int, int, int, int, int, int>> seen;
    for (std::size_t i = 0; i < images.size(); ++i)
    {
        const auto &r = images[i];
        CHECK(seen.emplace(r.p[0], r.p[1], r.p[2], r.q[0], r.q[1], r.q[2]).second);
        CHECK(r.reflection_order == reflection_order(r.p, r.q));
        if (i > 0)
        {
            const auto &a = images[i - 1];
            CHECK(std::tuple(a.reflection_order, a.q[2], a.q[1], a.q[0], a.p[2], a.p[1], a.p[0]) <
                  std::tuple(r.reflection_order, r.q[2], r.q[1], r.q[0], r.p[2], r.p[1], r.p[0]));
        }
    }
    CHECK(images.front().reflection_order == 0);
    CHECK(images.front().attenuation == 1.0);
}

TEST_CASE("attenuation exponents equal unfolded wall-hit counts")
{
    test::Rng rng(31);
    for (int path = 0; path < 50; ++path)
    {
        const RoomSpec room = random_room(rng);
        const Vec3 src = random_point(rng, room), rcv = random_point(rng, room);
        Index3 p{}, q{};
        for (int a = 0; a < 3; ++a)
        {
            p[a] = rng.integer(0, 1);
            q[a] = rng.integer(-3, 3);
        }
        const Vec3 img = image_position(p, q, src, room);
        const PathVectors v = path_vectors(p, q, src, rcv, room);
        const Vec3 angles = incident_angles(v.sI_to_r);
        double expected = 1.0;
        int total = 0;
        for (int a = 0; a < 3; ++a)
        {
            const int hits = unfolded_wall_hits(img[a], rcv[a], room.dimensions[a]);
            CHECK(hits == std::abs(q[a] - p[a]) + std::abs(q[a]));
            expected *= std::pow(reflection_coefficient(room.zeta, angles[a]), hits);
            total += hits;
        }
        CHECK(total == reflection_order(p, q));
        CHECK(path_attenuation(p, q, angles, room.zeta) == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("generated records carry consistent geometry")
{
    test::Rng rng(32);
    const RoomSpec room = random_room(rng);
    const Vec3 src = random_point(rng, room), rcv = random_point(rng, room);
    for (const auto &r : generate_images(room, src, rcv, 4))
    {
        const Vec3 img = image_position(r.p, r.q, src, room);
        for (int a = 0; a < 3; ++a)
        {
            CHECK(r.image_position[a] == img[a]);
            CHECK(r.sI_to_r[a] == doctest::Approx(rcv[a] - img[a]));
            CHECK(r.r_to_sI[a] == -r.sI_to_r[a]);
        }
        CHECK(r.distance == doctest::Approx(norm(r.sI_to_r)));
        // The reversed path has the same length.
        CHECK(norm(r.s_to_rI_rev) == doctest::Approx(r.distance).epsilon(1e-12));
        if (r.reflection_order > 0)
            CHECK(r.attenuation == doctest::Approx(path_attenuation(r.p, r.q, incident_angles(r.sI_to_r), room.zeta)));
    }
}

TEST_CASE("reversed path indices")
{
    for (int p = 0; p < 8; ++p)
        for (int qx = -2; qx <= 2; ++qx)
        {
            const Index3 pp{p & 1, (p >> 1) & 1, (p >> 2) & 1};
            const Index3 q{qx, -qx, 1};
            const IndexPair rev = reversed_path_indices(pp, q);
            CHECK(rev.p == pp);
            for (int a = 0; a < 3; ++a)
                CHECK(rev.q[a] == (pp[a] == 1 ? q[a] : -q[a]));
            CHECK(reflection_order(rev.p, rev.q) == reflection_order(pp, q));
        }
}

TEST_CASE("reflection coefficient")
{
    const double beta = reflection_coefficient(18.0, 0.0);
    CHECK(beta == doctest::Approx(17.0 / 19.0).epsilon(1e-15));
    CHECK(1.0 - beta * beta == doctest::Approx(0.1994).epsilon(0.005));
    CHECK(reflection_coefficient(18.0, pi / 2) == doctest::Approx(-1.0));
    CHECK(reflection_coefficient(1.0, 0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(reflection_coefficient(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(reflection_coefficient(1.0, pi), SingularityError);
}

TEST_CASE("incident angles")
{
    const Vec3 a = incident_angles({2.0, 0.0, 0.0});
    CHECK(a[0] == doctest::Approx(0.0));
    CHECK(a[1] == doctest::Approx(pi / 2));
    const Vec3 b = incident_angles({-1.0, 1.0, 0.0});
    CHECK(b[0] == doctest::Approx(pi / 4));
    const Vec3 c = incident_angles({-1.0, 1.0, 0.0}, AngleConvention::signed_component);
    CHECK(c[0] == doctest::Approx(3 * pi / 4));
    CHECK_THROWS_AS(incident_angles({0.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("cube half width option restricts q")
{
    const RoomSpec room;
    CHECK(default_cube_half_width(0) == 1);
    CHECK(default_cube_half_width(25) == 13);
    ImageOptions narrow;
    narrow.cube_half_width = 0;
    const auto images = generate_images(room, {1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}, 3, narrow);
    CHECK(images.size() == 8);
    for (const auto &r : images)
        CHECK(r.q == Index3{0, 0, 0});
}

TEST_CASE("room and pose validation")
{
    RoomSpec room;
    CHECK_NOTHROW(room.validate());
    room.dimensions[1] = 0.0;
    CHECK_THROWS_AS(room.validate(), ConfigError);
    room = RoomSpec{};
    room.zeta = -1.0;
    CHECK_THROWS_AS(room.validate(), ConfigError);
    room = RoomSpec{};
    CHECK_THROWS_AS(validate_pose({{4.0, 1.0, 1.0}, 0.0}, room, "source"), ConfigError);
    CHECK_THROWS_AS(validate_pose({{1.0, 1.0, 1.0}, std::nan("")}, room, "source"), ConfigError);
    CHECK_THROWS_AS(generate_images(room, {1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}, -1), ConfigError);
    CHECK_THROWS_AS(generate_images(room, {1.0, 1.0, 1.0}, {2.0, 2.0, 9.0}, 1), ConfigError);
}

TEST_CASE("free-field scenes hold only the direct path")
{
    Scene scene;
    scene.free_field = true;
    scene.source.position = {0.0, 0.0, 0.0};
    scene.receiver.position = {50.0, 0.0, 0.0};
    const auto images = scene.images();
    REQUIRE(images.size() == 1);
    CHECK(images[0].distance == 50.0);
    CHECK(images[0].attenuation == 1.0);
    scene.free_field = false;
    CHECK_THROWS_AS(scene.images(), ConfigError);
}
