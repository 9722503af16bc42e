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

#pragma once

#include "leoris/types.hpp"

#include <optional>

namespace leoris
{

// Physical layout of the canyon scene and the satellite orbit.
// All lengths are in meters, times in seconds, angles in radians.
struct SceneConfig
{
    Vec3 user_pos{0.0, 0.0, 0.0};
    Vec3 obstacle_pos{0.0, -100.0, 250.0};
    Vec3 ris_pos{0.0, 80.0, 65.5};
    double obstacle_height = 250.0;

    double carrier_freq = 2.0e9;         // Hz
    double orbit_radius = 7871.0e3;      // distance from Earth center
    double kepler_mu = 3.986004e14;      // m^3/s^2
    double altitude = 550.0e3;           // nominal, informational only
    double period = 100.0;               // communication period T
    double slot_len = 1.0;               // unit slot delta
    double radiation_exponent = 1.0;     // beta

    // Orbital anomaly at t = 0, measured from the user's zenith towards -y.
    // When unset the anomaly of LoS blockage onset is used.
    std::optional<double> initial_anomaly;

    double wavelength() const { return kSpeedOfLight / carrier_freq; }

    // Number of unit slots T/delta. Throws if T is not an integer multiple of delta.
    int slot_count() const;

    void validate() const;
};

struct SlotGeometry
{
    Vec3 sat_pos;
    double d_sr = 0.0;
    double d_ru = 0.0;
    Vec3 l_sr; // unit, RIS -> satellite
    Vec3 l_ru; // unit, RIS -> user
    bool los_blocked = false;
};

double orbital_speed(const SceneConfig &config);  // m/s
double angular_rate(const SceneConfig &config);   // rad/s

// Anomaly at which the user->satellite segment first meets the obstacle wall,
// found by bisection on is_blocked. Returned on the blocked side of the boundary.
double blockage_onset_anomaly(const SceneConfig &config);

// Override if present, else blockage_onset_anomaly().
double start_anomaly(const SceneConfig &config);

// Satellite position at anomaly theta on the circular orbit in the y-z plane.
Vec3 orbit_position(const SceneConfig &config, double anomaly);

Vec3 propagate_orbit(const SceneConfig &config, double t);
Vec3 propagate_orbit(const SceneConfig &config, double t, double theta0);

// Vertical wall at y = obstacle_pos.y of height obstacle_height, infinite in x.
// A crossing exactly at the wall top is not blocked.
bool is_blocked(const Vec3 &sat_pos, const Vec3 &user_pos, const Vec3 &obstacle_pos, double obstacle_height);

// Normalized power radiation pattern (r^T l)^beta on the front side, 0 behind.
double radiation_pattern(const Vec3 &r, const Vec3 &l, double beta);

// Elevation of target seen from observer, radians.
double elevation_angle(const Vec3 &observer, const Vec3 &target);

double slot_time(const SceneConfig &config, int slot);

SlotGeometry slot_geometry(const SceneConfig &config, double t);
SlotGeometry slot_geometry(const SceneConfig &config, double t, double theta0);

} // namespace leoris
