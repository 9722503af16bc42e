// SPDX-License-Identifier: Apache-2.0
//
// leoris - active-RIS assisted LEO satellite downlink simulator and optimizer
// Copyright (C) 2026 The leoris authors
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

#include "leoris/geometry.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace leoris;
using Catch::Approx;

TEST_CASE("orbital speed from the scenario constants")
{
    const SceneConfig c;
    // closed form sqrt(mu / r) in km/s
    REQUIRE(orbital_speed(c) / 1e3 == Approx(7.1163).margin(1e-3));

    // finite difference of propagated positions
    const double h = 1e-3;
    const double fd = (propagate_orbit(c, 1.0 + h) - propagate_orbit(c, 1.0 - h)).norm() / (2 * h);
    REQUIRE(fd / 1e3 == Approx(std::sqrt(3.986004e5 / 7871.0)).margin(1e-6));
}

TEST_CASE("anomaly swept over the period")
{
    const SceneConfig c;
    REQUIRE(angular_rate(c) * c.period == Approx(7.1163 / 7871.0 * 100.0).epsilon(1e-4));
    REQUIRE(angular_rate(c) * c.period == Approx(0.09041).margin(1e-5));
}

TEST_CASE("t = 0 sits at the start anomaly")
{
    SceneConfig c;
    const Vec3 p0 = propagate_orbit(c, 0.0);
    REQUIRE((p0 - orbit_position(c, start_anomaly(c))).norm() == 0.0);
    c.initial_anomaly = 0.01;
    REQUIRE((propagate_orbit(c, 0.0) - orbit_position(c, 0.01)).norm() == 0.0);
}

TEST_CASE("orbit stays on its circle")
{
    const SceneConfig c;
    const Vec3 centre(0.0, 0.0, -kEarthRadius);
    for (double t : {0.0, 13.0, 57.5, 100.0})
        REQUIRE((propagate_orbit(c, t) - centre).norm() == Approx(c.orbit_radius).epsilon(1e-12));
}

TEST_CASE("RIS to user distance")
{
    const SceneConfig c;
    const SlotGeometry g = slot_geometry(c, 0.0);
    REQUIRE(g.d_ru == Approx(std::sqrt(80.0 * 80.0 + 65.5 * 65.5)).epsilon(1e-12));
    REQUIRE(g.d_ru == Approx(103.40).margin(0.01));
    // static endpoints: l_ru does not move
    const SlotGeometry g2 = slot_geometry(c, 42.0);
    REQUIRE((g.l_ru - g2.l_ru).norm() == 0.0);
    REQUIRE(g.l_ru.norm() == Approx(1.0).epsilon(1e-14));
    REQUIRE(g.l_sr.norm() == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("satellite straight above the RIS")
{
    SceneConfig c;
    c.ris_pos = Vec3(0.0, 0.0, 65.5);
    const SlotGeometry g = slot_geometry(c, 0.0, 0.0);
    // l_sr points from the RIS towards the satellite
    REQUIRE((g.l_sr - Vec3(0.0, 0.0, 1.0)).norm() < 1e-12);
}

TEST_CASE("line of sight blockage")
{
    const Vec3 user(0, 0, 0), obstacle(0, -100, 250);
    REQUIRE_FALSE(is_blocked(Vec3(0, 0, 550000), user, obstacle, 250.0));
    // crossing height at y = -100: 100 * 1e3 / 1e6 = 0.1 m
    REQUIRE(is_blocked(Vec3(0, -1e6, 1e3), user, obstacle, 250.0));
    // crossing exactly at the wall top
    REQUIRE_FALSE(is_blocked(Vec3(0, -1024, 2560), user, obstacle, 250.0));
    REQUIRE(is_blocked(Vec3(0, -1024, 2559.9), user, obstacle, 250.0));
}

TEST_CASE("start anomaly is the blockage onset")
{
    const SceneConfig c;
    const double th = blockage_onset_anomaly(c);
    REQUIRE(is_blocked(orbit_position(c, th), c.user_pos, c.obstacle_pos, c.obstacle_height));
    // a hair closer to zenith the user sees the satellite
    REQUIRE_FALSE(is_blocked(orbit_position(c, th * (1.0 - 1e-6)), c.user_pos, c.obstacle_pos, c.obstacle_height));
}

TEST_CASE("radiation pattern")
{
    const Vec3 z(0, 0, 1);
    REQUIRE(radiation_pattern(z, z, 1.0) == 1.0);
    const Vec3 l = Vec3(0.0, std::sqrt(1 - 0.25), -0.5).normalized();
    REQUIRE(radiation_pattern(z, l, 1.0) == 0.0);
    const Vec3 q = Vec3(std::sqrt(1 - 0.0625), 0.0, 0.25);
    REQUIRE(radiation_pattern(z, q, 1.0) == Approx(0.25).epsilon(1e-14));

    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 2000; ++i)
    {
        const Vec3 r = Vec3(nd(gen), nd(gen), nd(gen)).normalized();
        const Vec3 s = Vec3(nd(gen), nd(gen), nd(gen)).normalized();
        const double beta = std::abs(nd(gen)) * 3.0;
        const double f = radiation_pattern(r, s, beta);
        REQUIRE(f >= 0.0);
        REQUIRE(f <= 1.0);
    }
}

TEST_CASE("slot count must be an integer")
{
    SceneConfig c;
    c.period = 10.5;
    REQUIRE_THROWS(c.slot_count());
    c.period = 20.0;
    REQUIRE(c.slot_count() == 20);
}
