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

#include "leoris/channel.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace leoris
{

void FadingParams::validate() const
{
    if (!(rician_kappa >= 0.0))
        throw std::invalid_argument("rician_kappa must be non-negative");
    if (!(rain_sigma2 >= 0.0))
        throw std::invalid_argument("rain_sigma2 must be non-negative");
    if (sat_antennas < 1 || ris_rows < 1 || ris_cols < 1)
        throw std::invalid_argument("L, M and N must be at least 1");
    if (!beam_gain.empty() && static_cast<int>(beam_gain.size()) != elements())
        throw std::invalid_argument("beam_gain must have M*N entries");
    for (double g : beam_gain)
        if (!(g >= 0.0))
            throw std::invalid_argument("beam_gain entries must be non-negative");
}

double path_loss(double lambda, double d)
{
    if (!(d > 0.0))
        throw std::domain_error("path_loss: distance must be positive");
    const double a = lambda / (4.0 * kPi * d);
    return a * a;
}

double sample_rain_attenuation(const FadingParams &params, const CounterRng &rng, std::uint64_t slot)
{
    const double g = params.rain_mu + std::sqrt(params.rain_sigma2) * rng.normal(RngStream::RainAttenuation, slot, 0);
    const double xi_db = std::exp(g);
    return std::pow(10.0, xi_db / 10.0);
}

CMat gen_sat_ris_channel(const SlotGeometry &geom, const FadingParams &params, const SceneConfig &config,
                         const CounterRng &rng, std::uint64_t slot)
{
    const int mn = params.elements();
    const int L = params.sat_antennas;
    const double amp = std::sqrt(path_loss(config.wavelength(), geom.d_sr) / sample_rain_attenuation(params, rng, slot));

    CMat H(mn, L);
    for (int i = 0; i < mn; ++i)
    {
        const double gain = params.beam_gain.empty() ? 1.0 : std::sqrt(params.beam_gain[i]);
        for (int l = 0; l < L; ++l)
            H(i, l) = std::polar(amp * gain, rng.phase(RngStream::SatRisPhase, slot, static_cast<std::uint64_t>(i) * L + l));
    }
    return H;
}

CVec gen_ris_user_channel(const SlotGeometry &geom, const FadingParams &params, const SceneConfig &config,
                          const CounterRng &rng, std::uint64_t slot)
{
    const int mn = params.elements();
    const double c_ru = path_loss(config.wavelength(), geom.d_ru);
    const double amp = params.literal_ru_amplitude ? c_ru : std::sqrt(c_ru);

    // kappa = inf gives the pure LoS limit.
    double los = 1.0, nlos = 0.0;
    if (std::isfinite(params.rician_kappa))
    {
        los = std::sqrt(params.rician_kappa / (params.rician_kappa + 1.0));
        nlos = std::sqrt(1.0 / (params.rician_kappa + 1.0));
    }

    CVec h(mn);
    for (int i = 0; i < mn; ++i)
        h(i) = los * amp + nlos * std::polar(amp, rng.phase(RngStream::RisUserPhase, slot, i));
    return h;
}

ChannelRealization realize_slot(const SlotGeometry &geom, const FadingParams &params, const SceneConfig &config,
                                const CounterRng &rng, int slot)
{
    ChannelRealization c;
    c.slot = slot;
    c.xi = sample_rain_attenuation(params, rng, slot);
    c.H_sr = gen_sat_ris_channel(geom, params, config, rng, slot);
    c.H_ru = gen_ris_user_channel(geom, params, config, rng, slot);
    return c;
}

std::vector<SlotGeometry> slot_geometries(const SceneConfig &config)
{
    const int n = config.slot_count();
    const double theta0 = start_anomaly(config);
    std::vector<SlotGeometry> out;
    out.reserve(n);
    for (int s = 0; s < n; ++s)
        out.push_back(slot_geometry(config, slot_time(config, s), theta0));
    return out;
}

std::vector<ChannelRealization> generate_channels(const SceneConfig &config, const FadingParams &params,
                                                  const std::vector<SlotGeometry> &geometry, std::uint64_t seed)
{
    params.validate();
    const CounterRng rng(seed);
    const int n = static_cast<int>(geometry.size());
    std::vector<ChannelRealization> out(n);
#pragma omp parallel for schedule(static)
    for (int s = 0; s < n; ++s)
        out[s] = realize_slot(geometry[s], params, config, rng, s);
    return out;
}

std::vector<ChannelRealization> generate_channels_serial(const SceneConfig &config, const FadingParams &params,
                                                         const std::vector<SlotGeometry> &geometry,
                                                         std::uint64_t seed)
{
    params.validate();
    const CounterRng rng(seed);
    std::vector<ChannelRealization> out;
    out.reserve(geometry.size());
    for (int s = 0; s < static_cast<int>(geometry.size()); ++s)
        out.push_back(realize_slot(geometry[s], params, config, rng, s));
    return out;
}

void write_channel_dump(std::ostream &os, const std::vector<ChannelRealization> &channels)
{
    const int mn = channels.empty() ? 0 : static_cast<int>(channels.front().H_sr.rows());
    const int L = channels.empty() ? 0 : static_cast<int>(channels.front().H_sr.cols());
    os << "leoris-channels 1\n";
    os << "slots " << channels.size() << " elements " << mn << " antennas " << L << "\n";
    os << std::setprecision(17);
    for (const auto &c : channels)
    {
        if (c.H_sr.rows() != mn || c.H_sr.cols() != L || c.H_ru.size() != mn)
            throw std::invalid_argument("write_channel_dump: inconsistent channel dimensions");
        os << "slot " << c.slot << " xi " << c.xi << "\n";
        for (int i = 0; i < mn; ++i)
        {
            for (int l = 0; l < L; ++l)
                os << (l ? " " : "") << c.H_sr(i, l).real() << " " << c.H_sr(i, l).imag();
            os << "\n";
        }
        for (int i = 0; i < mn; ++i)
            os << (i ? " " : "") << c.H_ru(i).real() << " " << c.H_ru(i).imag();
        os << "\n";
    }
}

std::vector<ChannelRealization> read_channel_dump(std::istream &is)
{
    auto expect = [&](const std::string &word)
    {
        std::string tok;
        if (!(is >> tok) || tok != word)
            throw std::runtime_error("read_channel_dump: expected '" + word + "'");
    };
    expect("leoris-channels");
    int version = 0;
    is >> version;
    if (version != 1)
        throw std::runtime_error("read_channel_dump: unsupported version");
    std::size_t count = 0;
    int mn = 0, L = 0;
    expect("slots");
    is >> count;
    expect("elements");
    is >> mn;
    expect("antennas");
    is >> L;

    std::vector<ChannelRealization> out(count);
    for (auto &c : out)
    {
        expect("slot");
        is >> c.slot;
        expect("xi");
        is >> c.xi;
        c.H_sr.resize(mn, L);
        c.H_ru.resize(mn);
        double re = 0.0, im = 0.0;
        for (int i = 0; i < mn; ++i)
            for (int l = 0; l < L; ++l)
            {
                is >> re >> im;
                c.H_sr(i, l) = {re, im};
            }
        for (int i = 0; i < mn; ++i)
        {
            is >> re >> im;
            c.H_ru(i) = {re, im};
        }
        if (!is)
            throw std::runtime_error("read_channel_dump: truncated record");
    }
    return out;
}

} // namespace leoris
