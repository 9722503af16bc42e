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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace leoris;
using Catch::Approx;

TEST_CASE("free-space loss")
{
    const double lambda = kSpeedOfLight / 2e9;
    REQUIRE(lambda == Approx(0.14990).margin(1e-5));
    const double a = lambda / (4.0 * kPi * 550000.0);
    REQUIRE(path_loss(lambda, 550000.0) == Approx(a * a).epsilon(1e-14));
    REQUIRE(path_loss(lambda, 550000.0) == Approx(4.71e-16).epsilon(2e-3));
    REQUIRE(10 * std::log10(path_loss(lambda, 550000.0)) == Approx(-153.3).margin(0.05));
    REQUIRE(path_loss(lambda, 2 * 550000.0) / path_loss(lambda, 550000.0) == Approx(0.25).epsilon(1e-14));
    REQUIRE(path_loss(4 * kPi * 3.0, 3.0) == Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rain attenuation limits and statistics")
{
    FadingParams p;
    p.rain_sigma2 = 0.0;
    const CounterRng rng(7);
    const double xi_db = std::exp(-0.6);
    REQUIRE(xi_db == Approx(0.5488).margin(1e-4));
    REQUIRE(sample_rain_attenuation(p, rng, 0) == Approx(std::pow(10.0, xi_db / 10.0)).epsilon(1e-14));
    REQUIRE(sample_rain_attenuation(p, rng, 0) == Approx(1.1347).margin(1e-4));

    p.rain_mu = -60.0;
    REQUIRE(sample_rain_attenuation(p, rng, 3) == Approx(1.0).margin(1e-15));

    FadingParams q;
    double mean = 0.0, var = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
    {
        const double g = std::log(10.0 * std::log10(sample_rain_attenuation(q, rng, i)));
        mean += g;
        var += g * g;
    }
    mean /= n;
    var = var / n - mean * mean;
    REQUIRE(mean == Approx(-0.6).margin(0.01));
    REQUIRE(var == Approx(0.4).margin(0.01));
}

namespace
{

SlotGeometry geom()
{
    return slot_geometry(SceneConfig{}, 3.0);
}

} // namespace

TEST_CASE("sat-RIS entry magnitudes")
{
    SceneConfig c;
    FadingParams p;
    p.beam_gain.assign(p.elements(), 0.0);
    for (int i = 0; i < p.elements(); ++i)
        p.beam_gain[i] = 0.5 + 0.05 * i;
    const CounterRng rng(11);
    const SlotGeometry g = geom();
    const CMat H = gen_sat_ris_channel(g, p, c, rng, 5);
    const double xi = sample_rain_attenuation(p, rng, 5);
    for (int i = 0; i < H.rows(); ++i)
        for (int l = 0; l < H.cols(); ++l)
            REQUIRE(std::abs(H(i, l)) ==
                    Approx(std::sqrt(path_loss(c.wavelength(), g.d_sr)) / std::sqrt(xi) * std::sqrt(p.beam_gain[i]))
                        .epsilon(1e-12));

    FadingParams flat;
    flat.rain_mu = -60.0;
    flat.rain_sigma2 = 0.0;
    const CMat F = gen_sat_ris_channel(g, flat, c, rng, 5);
    REQUIRE(F.cwiseAbs().maxCoeff() == Approx(std::sqrt(path_loss(c.wavelength(), g.d_sr))).epsilon(1e-12));
    REQUIRE(F.cwiseAbs().minCoeff() == Approx(std::sqrt(path_loss(c.wavelength(), g.d_sr))).epsilon(1e-12));
}

TEST_CASE("seeded determinism")
{
    SceneConfig c;
    FadingParams p;
    const SlotGeometry g = geom();
    const CMat a = gen_sat_ris_channel(g, p, c, CounterRng(1), 9);
    const CMat b = gen_sat_ris_channel(g, p, c, CounterRng(1), 9);
    const CMat d = gen_sat_ris_channel(g, p, c, CounterRng(2), 9);
    REQUIRE((a - b).norm() == 0.0);
    REQUIRE((a - d).norm() > 0.0);
}

TEST_CASE("Rician RIS-user channel")
{
    SceneConfig c;
    const SlotGeometry g = geom();
    const double amp = std::sqrt(path_loss(c.wavelength(), g.d_ru));

    FadingParams los;
    los.rician_kappa = std::numeric_limits<double>::infinity();
    const CVec h = gen_ris_user_channel(g, los, c, CounterRng(4), 0);
    for (int i = 0; i < h.size(); ++i)
        REQUIRE(h(i) == cplx(amp, 0.0));

    FadingParams nlos;
    nlos.rician_kappa = 0.0;
    const CVec h0 = gen_ris_user_channel(g, nlos, c, CounterRng(4), 0);
    for (int i = 0; i < h0.size(); ++i)
        REQUIRE(std::abs(h0(i)) == Approx(amp).epsilon(1e-12));

    FadingParams k3;
    k3.ris_rows = 1;
    k3.ris_cols = 1;
    const CounterRng rng(5);
    cplx mean{0.0, 0.0};
    const int n = 100000;
    for (int s = 0; s < n; ++s)
        mean += gen_ris_user_channel(g, k3, c, rng, s)(0);
    mean /= static_cast<double>(n);
    REQUIRE(mean.real() == Approx(std::sqrt(0.75) * amp).epsilon(0.01));
    REQUIRE(std::abs(mean.imag()) < 0.01 * amp);

    FadingParams lit;
    lit.literal_ru_amplitude = true;
    lit.rician_kappa = std::numeric_limits<double>::infinity();
    REQUIRE(gen_ris_user_channel(g, lit, c, CounterRng(4), 0)(0).real() == Approx(amp * amp).epsilon(1e-12));
}

TEST_CASE("parallel and serial generation agree bit for bit")
{
    SceneConfig c;
    c.period = 20;
    FadingParams p;
    const auto geo = slot_geometries(c);
    const auto par = generate_channels(c, p, geo, 17);
    const auto ser = generate_channels_serial(c, p, geo, 17);
    REQUIRE(par.size() == ser.size());
    for (std::size_t n = 0; n < par.size(); ++n)
    {
        REQUIRE(par[n].slot == ser[n].slot);
        REQUIRE(par[n].xi == ser[n].xi);
        REQUIRE((par[n].H_sr - ser[n].H_sr).norm() == 0.0);
        REQUIRE((par[n].H_ru - ser[n].H_ru).norm() == 0.0);
    }
    // call order does not matter: a single slot regenerated alone is identical
    const auto one = realize_slot(geo[13], p, c, CounterRng(17), 13);
    REQUIRE((one.H_sr - par[13].H_sr).norm() == 0.0);
}

TEST_CASE("channel dump round trip")
{
    SceneConfig c;
    c.period = 3;
    FadingParams p;
    p.ris_rows = p.ris_cols = 2;
    const auto geo = slot_geometries(c);
    const auto ch = generate_channels(c, p, geo, 8);
    std::stringstream ss;
    write_channel_dump(ss, ch);
    const auto back = read_channel_dump(ss);
    REQUIRE(back.size() == ch.size());
    for (std::size_t n = 0; n < ch.size(); ++n)
    {
        REQUIRE(back[n].xi == ch[n].xi);
        REQUIRE((back[n].H_sr - ch[n].H_sr).norm() == 0.0);
        REQUIRE((back[n].H_ru - ch[n].H_ru).norm() == 0.0);
    }
}

TEST_CASE("fading parameter validation")
{
    FadingParams p;
    p.sat_antennas = 0;
    REQUIRE_THROWS(p.validate());
    FadingParams q;
    q.beam_gain = {1.0, 2.0};
    REQUIRE_THROWS(q.validate());
}
