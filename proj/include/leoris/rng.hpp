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

#include <array>
#include <cstdint>
#include <utility>

namespace leoris
{

// Streams of the counter-based generator. Every random quantity in the
// simulator is addressed by (seed, stream, slot, index) so draws do not
// depend on evaluation order or thread count.
enum class RngStream : std::uint32_t
{
    SatRisPhase = 1,
    RisUserPhase = 2,
    RainAttenuation = 3,
    InitialPhase = 4,
    GaussianRandomization = 5,
    BaselineBeam = 6,
    TestDraw = 99,
};

// Philox4x32-10 (Salmon et al., SC'11) keyed by a 64-bit seed.
class CounterRng
{
  public:
    explicit CounterRng(std::uint64_t seed = 0) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::array<std::uint32_t, 4> block(RngStream stream, std::uint64_t slot, std::uint64_t index) const;

    // Uniform on [0, 1) with 53 random bits.
    double uniform(RngStream stream, std::uint64_t slot, std::uint64_t index) const;

    // Two independent uniforms on [0, 1) from one counter block.
    std::pair<double, double> uniform_pair(RngStream stream, std::uint64_t slot, std::uint64_t index) const;

    // Standard normal via Box-Muller on one counter block.
    double normal(RngStream stream, std::uint64_t slot, std::uint64_t index) const;

    // Circularly-symmetric complex normal with unit variance, packed as (re, im).
    std::pair<double, double> complex_normal(RngStream stream, std::uint64_t slot, std::uint64_t index) const;

    // Uniform phase on [0, 2 pi).
    double phase(RngStream stream, std::uint64_t slot, std::uint64_t index) const;

  private:
    std::uint64_t seed_;
};

} // namespace leoris
