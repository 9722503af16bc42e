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

#include "leoris/channel.hpp"
#include "leoris/geometry.hpp"
#include "leoris/link.hpp"

#include <cstdint>
#include <vector>

namespace leoris
{

// One seeded realization of the whole communication period: geometry and
// channels of every unit slot plus the resolved link constants.
struct Scenario
{
    SceneConfig scene;
    FadingParams fading;
    LinkConstants link;
    std::vector<SlotGeometry> geometry;
    std::vector<ChannelRealization> channels;
    std::uint64_t seed = 0;

    int slots() const { return static_cast<int>(channels.size()); }
    int elements() const { return fading.elements(); }
    int antennas() const { return fading.sat_antennas; }
};

Scenario make_scenario(const SceneConfig &scene, const FadingParams &fading, const LinkParams &link,
                       std::uint64_t seed);

// Same channels and geometry with different link constants (passive RIS, other E_max).
Scenario with_link(const Scenario &base, const LinkConstants &link);

} // namespace leoris
