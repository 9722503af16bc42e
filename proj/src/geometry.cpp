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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leoris
{

int SceneConfig::slot_count() const
{
    if (!(slot_len > 0.0))
        throw std::invalid_argument("slot_len must be positive");
    const double ratio = period / slot_len;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
        throw std::invalid_argument("period must be a positive integer multiple of slot_len");
    return static_cast<int>(rounded);
}

void SceneConfig::validate() const
{
    if (!(carrier_freq > 0.0))
        throw std::invalid_argument("carrier_freq must be positive");
    if (!(orbit_radius > kEarthRadius))
        throw std::invalid_argument("orbit_radius must exceed the Earth radius");
    if (!(kepler_mu > 0.0))
        throw std::invalid_argument("kepler_mu must be positive");
    if (!(radiation_exponent >= 0.0))
        throw std::invalid_argument("radiation_exponent must be non-negative");
    if (!user_pos.allFinite() || !obstacle_pos.allFinite() || !ris_pos.allFinite())
        throw std::invalid_argument("scene positions must be finite");
    slot_count();
}

double orbital_speed(const SceneConfig &config)
{
    return std::sqrt(config.kepler_mu / config.orbit_radius);
}

double angular_rate(const SceneConfig &config)
{
    return orbital_speed(config) / config.orbit_radius;
}

Vec3 orbit_position(const SceneConfig &config, double anomaly)
{
    const double ro = config.orbit_radius;
    return {0.0, -ro * std::sin(anomaly), ro * std::cos(anomaly) - kEarthRadius};
}

double blockage_onset_anomaly(const SceneConfig &config)
{
    auto blocked = [&](double th)
    { return is_blocked(orbit_position(config, th), config.user_pos, config.obstacle_pos, config.obstacle_height); };

    if (blocked(0.0))
        return 0.0;

    // Coarse scan towards the horizon for the first blocked anomaly.
    const double step = 1e-3;
    double lo = 0.0, hi = -1.0;
    for (double th = step; th < 0.5 * kPi; th += step)
    {
        if (blocked(th))
        {
            hi = th;
            break;
        }
        lo = th;
    }
    if (hi < 0.0)
        return 0.0; // the wall never shadows this orbit

    while (hi - lo > 1e-13)
    {
        const double mid = 0.5 * (lo + hi);
        if (blocked(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double start_anomaly(const SceneConfig &config)
{
    return config.initial_anomaly ? *config.initial_anomaly : blockage_onset_anomaly(config);
}

Vec3 propagate_orbit(const SceneConfig &config, double t, double theta0)
{
    return orbit_position(config, theta0 + angular_rate(config) * t);
}

Vec3 propagate_orbit(const SceneConfig &config, double t)
{
    return propagate_orbit(config, t, start_anomaly(config));
}

bool is_blocked(const Vec3 &sat_pos, const Vec3 &user_pos, const Vec3 &obstacle_pos, double obstacle_height)
{
    const double dy = sat_pos.y() - user_pos.y();
    if (dy == 0.0)
        return false;
    const double s = (obstacle_pos.y() - user_pos.y()) / dy;
    if (s <= 0.0 || s > 1.0)
        return false;
    const double z = user_pos.z() + s * (sat_pos.z() - user_pos.z());
    return z < obstacle_height;
}

double radiation_pattern(const Vec3 &r, const Vec3 &l, double beta)
{
    const double c = r.dot(l);
    if (c < 0.0)
        return 0.0;
    return std::pow(std::min(c, 1.0), beta);
}

double elevation_angle(const Vec3 &observer, const Vec3 &target)
{
    const Vec3 d = target - observer;
    return std::atan2(d.z(), std::hypot(d.x(), d.y()));
}

double slot_time(const SceneConfig &config, int slot)
{
    return slot * config.slot_len;
}

SlotGeometry slot_geometry(const SceneConfig &config, double t, double theta0)
{
    SlotGeometry g;
    g.sat_pos = propagate_orbit(config, t, theta0);
    const Vec3 to_sat = g.sat_pos - config.ris_pos;
    const Vec3 to_user = config.user_pos - config.ris_pos;
    g.d_sr = to_sat.norm();
    g.d_ru = to_user.norm();
    g.l_sr = to_sat / g.d_sr;
    g.l_ru = to_user / g.d_ru;
    g.los_blocked = is_blocked(g.sat_pos, config.user_pos, config.obstacle_pos, config.obstacle_height);
    return g;
}

SlotGeometry slot_geometry(const SceneConfig &config, double t)
{
    return slot_geometry(config, t, start_anomaly(config));
}

} // namespace leoris
