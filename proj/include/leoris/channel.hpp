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

#include "leoris/geometry.hpp"
#include "leoris/rng.hpp"
#include "leoris/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace leoris
{

struct FadingParams
{
    double rician_kappa = 3.0;
    double rain_mu = -0.6;     // mean of ln(xi_dB)
    double rain_sigma2 = 0.4;  // variance of ln(xi_dB)
    int sat_antennas = 4;      // L
    int ris_rows = 6;          // M
    int ris_cols = 6;          // N

    // Satellite beam gain per RIS element; empty means all ones.
    std::vector<double> beam_gain;

    // Use the free-space power term C_ru itself as the aRIS-User amplitude
    // instead of sqrt(C_ru).
    bool literal_ru_amplitude = false;

    int elements() const { return ris_rows * ris_cols; }
    void validate() const;
};

struct ChannelRealization
{
    int slot = 0;   // global unit-slot index n = b K + k
    double xi = 1.0; // rain attenuation of this slot (linear power factor)
    CMat H_sr;      // MN x L
    CVec H_ru;      // MN
};

// Free-space loss (lambda / (4 pi d))^2.
double path_loss(double lambda, double d);

// ln(xi_dB) ~ Normal(mu, sigma2), xi = 10^(xi_dB / 10) >= 1.
double sample_rain_attenuation(const FadingParams &params, const CounterRng &rng, std::uint64_t slot);

CMat gen_sat_ris_channel(const SlotGeometry &geom, const FadingParams &params, const SceneConfig &config,
                         const CounterRng &rng, std::uint64_t slot);

CVec gen_ris_user_channel(const SlotGeometry &geom, const FadingParams &params, const SceneConfig &config,
                          const CounterRng &rng, std::uint64_t slot);

ChannelRealization realize_slot(const SlotGeometry &geom, const FadingParams &params, const SceneConfig &config,
                                const CounterRng &rng, int slot);

std::vector<SlotGeometry> slot_geometries(const SceneConfig &config);

// All T/delta slots; OpenMP across slots.
std::vector<ChannelRealization> generate_channels(const SceneConfig &config, const FadingParams &params,
                                                  const std::vector<SlotGeometry> &geometry, std::uint64_t seed);

// Serial reference of generate_channels, kept for equivalence tests and benchmarks.
std::vector<ChannelRealization> generate_channels_serial(const SceneConfig &config, const FadingParams &params,
                                                         const std::vector<SlotGeometry> &geometry,
                                                         std::uint64_t seed);

// Text channel dump:
//   leoris-channels 1
//   slots <count> elements <MN> antennas <L>
//   then per slot:
//     slot <n> xi <xi>
//     MN rows of H_sr, each L pairs "re im"
//     one row of H_ru with MN pairs "re im"
// Numbers are written with 17 significant digits so a reload is exact.
void write_channel_dump(std::ostream &os, const std::vector<ChannelRealization> &channels);
std::vector<ChannelRealization> read_channel_dump(std::istream &is);

} // namespace leoris
