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
#include "leoris/types.hpp"

#include <limits>
#include <span>
#include <vector>

namespace leoris
{

// How a_max given in dB maps to an amplitude bound.
enum class AmplitudeDb
{
    Power,     // 10^(dB/20): the bound on amplitude whose power gain is dB
    Amplitude, // 10^(dB/10)
};

// Link budget in the units the scenario is usually quoted in.
struct LinkParams
{
    double p_s_dbw = 15.0;
    double g_s_db = 24.5;
    double g_u_db = 10.0;
    double g_r_db = 5.0; // placeholder RIS element gain
    double sigma1_dbw = -110.0; // RIS thermal noise power
    double sigma2_dbw = -129.0; // user noise power
    double p_c_dbm = -10.0;     // per-element switching and control power
    double eta = 1.25;          // reciprocal amplifier efficiency
    double a_max_db = 10.0;
    AmplitudeDb a_max_mode = AmplitudeDb::Power;
    double e_max = std::numeric_limits<double>::infinity(); // J

    void validate() const;
};

struct LinkConstants
{
    double c1 = 0.0;
    double c2 = 0.0;
    double g_r = 0.0, g_u = 0.0, g_s = 0.0;
    double p_s = 0.0;       // W
    double sigma1_sq = 0.0; // W
    double sigma2_sq = 0.0; // W
    double eta = 0.0;
    double p_c = 0.0;       // W
    double a_max = 1.0;     // amplitude
    double e_max = std::numeric_limits<double>::infinity();
    double slot_len = 1.0;  // s
    double beta = 1.0;      // radiation exponent
};

double db_to_linear(double db);
double dbm_to_watt(double dbm);

LinkConstants link_constants(const SceneConfig &config, const LinkParams &params);

// Passive reflector: unit amplitude bound, no RIS thermal noise and no
// amplification energy. Switching energy is kept.
LinkConstants passive_constants(const LinkConstants &active);

// Diagonal of the RIS reflection matrix, A e^{j phi} per element.
struct RisState
{
    CVec coeffs;
};

struct SolutionBundle
{
    int K = 0;
    int B = 0;
    std::vector<CVec> w;     // B*K transmit beams, slot n = b K + k
    std::vector<CVec> theta; // B RIS reflection diagonals
    Vec3 r = Vec3::UnitZ();  // RIS orientation
    double avg_rate = 0.0;
    double energy = 0.0;

    int slots() const { return B * K; }
    int interval_of(int slot) const { return slot / K; }
};

// Received signal amplitude (without the symbol) and noise power of one slot.
struct SlotTerms
{
    cplx signal{0.0, 0.0};
    double noise = 0.0;

    double snr() const { return std::norm(signal) / noise; }
};

SlotTerms slot_terms(const CVec &w, const CVec &theta, const Vec3 &r, const CMat &H_sr, const CVec &H_ru,
                     const Vec3 &l_sr, const Vec3 &l_ru, const LinkConstants &lc);

double snr(const CVec &w, const CVec &theta, const Vec3 &r, const CMat &H_sr, const CVec &H_ru, const Vec3 &l_sr,
           const Vec3 &l_ru, const LinkConstants &lc);

double instantaneous_rate(double gamma);
double average_rate(std::span<const double> rates, int B, int K);

// Per-slot powers times the slot length plus B M N P_C switching energy.
double total_energy(const SolutionBundle &bundle, const std::vector<ChannelRealization> &channels,
                    const std::vector<SlotGeometry> &geometry, const LinkConstants &lc);

double switching_energy(int B, int elements, const LinkConstants &lc);

std::vector<double> slot_rates(const SolutionBundle &bundle, const std::vector<ChannelRealization> &channels,
                               const std::vector<SlotGeometry> &geometry, const LinkConstants &lc);

} // namespace leoris
