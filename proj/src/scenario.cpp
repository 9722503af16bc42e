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

#include "leoris/scenario.hpp"

namespace leoris
{

Scenario make_scenario(const SceneConfig &scene, const FadingParams &fading, const LinkParams &link,
                       std::uint64_t seed)
{
    scene.validate();
    fading.validate();
    Scenario s;
    s.scene = scene;
    s.fading = fading;
    s.link = link_constants(scene, link);
    s.geometry = slot_geometries(scene);
    s.channels = generate_channels(scene, fading, s.geometry, seed);
    s.seed = seed;
    return s;
}

Scenario with_link(const Scenario &base, const LinkConstants &link)
{
    Scenario s = base;
    s.link = link;
    return s;
}

} // namespace leoris
