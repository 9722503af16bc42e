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

#include "leoris/rng.hpp"
#include "leoris/types.hpp"

#include <cmath>

namespace leoris
{

namespace
{

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key)
{
    for (int round = 0; round < 10; ++round)
    {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo)
{
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 21) ^ (lo >> 11);
    return static_cast<double>(bits & ((1ull << 53) - 1)) * 0x1.0p-53;
}

} // namespace

std::array<std::uint32_t, 4> CounterRng::block(RngStream stream, std::uint64_t slot, std::uint64_t index) const
{
    // Slot and stream share one counter word pair; slots above 2^32 are not used.
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
        static_cast<std::uint32_t>(slot), static_cast<std::uint32_t>(stream)};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    return philox4x32_10(ctr, key);
}

std::pair<double, double> CounterRng::uniform_pair(RngStream stream, std::uint64_t slot, std::uint64_t index) const
{
    const auto b = block(stream, slot, index);
    return {to_unit(b[0], b[1]), to_unit(b[2], b[3])};
}

double CounterRng::uniform(RngStream stream, std::uint64_t slot, std::uint64_t index) const
{
    return uniform_pair(stream, slot, index).first;
}

double CounterRng::normal(RngStream stream, std::uint64_t slot, std::uint64_t index) const
{
    const auto [u1, u2] = uniform_pair(stream, slot, index);
    const double radius = std::sqrt(-2.0 * std::log1p(-u1)); // 1 - u1 in (0, 1]
    return radius * std::cos(2.0 * kPi * u2);
}

std::pair<double, double> CounterRng::complex_normal(RngStream stream, std::uint64_t slot, std::uint64_t index) const
{
    const auto [u1, u2] = uniform_pair(stream, slot, index);
    const double radius = std::sqrt(-std::log1p(-u1));
    return {radius * std::cos(2.0 * kPi * u2), radius * std::sin(2.0 * kPi * u2)};
}

double CounterRng::phase(RngStream stream, std::uint64_t slot, std::uint64_t index) const
{
    return 2.0 * kPi * uniform(stream, slot, index);
}

} // namespace leoris
