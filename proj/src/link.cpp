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

#include "leoris/link.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace leoris
{

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double dbm_to_watt(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

void LinkParams::validate() const
{
    const double fields[] = {p_s_dbw, g_s_db, g_u_db, g_r_db, sigma1_dbw, sigma2_dbw, p_c_dbm, a_max_db};
    for (double f : fields)
        if (!std::isfinite(f))
            throw std::invalid_argument("link parameter missing or not finite");
    if (!(eta >= 0.0))
        throw std::invalid_argument("eta must be non-negative");
    if (!(a_max_db >= 0.0))
        throw std::invalid_argument("a_max must be at least 0 dB (amplitude >= 1)");
    if (!(e_max > 0.0))
        throw std::invalid_argument("E_max must be positive");
}

LinkConstants link_constants(const SceneConfig &config, const LinkParams &params)
{
    params.validate();
    LinkConstants lc;
    lc.g_r = db_to_linear(params.g_r_db);
    lc.g_u = db_to_linear(params.g_u_db);
    lc.g_s = db_to_linear(params.g_s_db);
    lc.p_s = db_to_linear(params.p_s_dbw);
    lc.sigma1_sq = db_to_linear(params.sigma1_dbw);
    lc.sigma2_sq = db_to_linear(params.sigma2_dbw);
    lc.p_c = dbm_to_watt(params.p_c_dbm);
    lc.eta = params.eta;
    lc.a_max = params.a_max_mode == AmplitudeDb::Power ? std::pow(10.0, params.a_max_db / 20.0)
                                                       : std::pow(10.0, params.a_max_db / 10.0);
    lc.e_max = params.e_max;
    lc.slot_len = config.slot_len;
    lc.beta = config.radiation_exponent;

    // The transmit symbol has unit power, so it does not appear in c1.
    lc.c1 = std::sqrt(kPi * lc.g_r * lc.g_u * lc.g_s * lc.p_s);
    const double lambda = config.wavelength();
    lc.c2 = std::sqrt(4.0 * kPi / (lambda * lambda) * lc.g_r * lc.g_u);
    return lc;
}

LinkConstants passive_constants(const LinkConstants &active)
{
    LinkConstants p = active;
    p.a_max = 1.0;
    p.sigma1_sq = 0.0;
    p.eta = 0.0;
    return p;
}

SlotTerms slot_terms(const CVec &w, const CVec &theta, const Vec3 &r, const CMat &H_sr, const CVec &H_ru,
                     const Vec3 &l_sr, const Vec3 &l_ru, const LinkConstants &lc)
{
    const Eigen::Index mn = H_sr.rows();
    if (H_sr.cols() != w.size() || H_ru.size() != mn || theta.size() != mn)
        throw std::invalid_argument("slot_terms: dimension mismatch");

    SlotTerms t;
    t.noise = lc.sigma2_sq;
    const double f_sr = radiation_pattern(r, l_sr, lc.beta);
    const double f_ru = radiation_pattern(r, l_ru, lc.beta);
    if (f_sr <= 0.0 || f_ru <= 0.0)
        return t; // back-side incidence: no reflected signal, no RIS noise at the user

    const CVec hw = H_sr * w;
    cplx cascade{0.0, 0.0};
    double ris_noise = 0.0;
    for (Eigen::Index i = 0; i < mn; ++i)
    {
        cascade += std::conj(H_ru(i)) * theta(i) * hw(i);
        ris_noise += std::norm(H_ru(i)) * std::norm(theta(i));
    }
    t.signal = lc.c1 * std::sqrt(f_sr * f_ru) * cascade;
    t.noise += lc.c2 * lc.c2 * f_ru * ris_noise * lc.sigma1_sq;
    return t;
}

double snr(const CVec &w, const CVec &theta, const Vec3 &r, const CMat &H_sr, const CVec &H_ru, const Vec3 &l_sr,
           const Vec3 &l_ru, const LinkConstants &lc)
{
    return slot_terms(w, theta, r, H_sr, H_ru, l_sr, l_ru, lc).snr();
}

double instantaneous_rate(double gamma)
{
    if (gamma < 0.0 || std::isnan(gamma))
        throw std::domain_error("instantaneous_rate: negative SNR");
    return std::log2(1.0 + gamma);
}

double average_rate(std::span<const double> rates, int B, int K)
{
    if (B < 1 || K < 1 || rates.size() != static_cast<std::size_t>(B) * K)
        throw std::invalid_argument("average_rate: expected B*K rates");
    return std::accumulate(rates.begin(), rates.end(), 0.0) / (static_cast<double>(B) * K);
}

double switching_energy(int B, int elements, const LinkConstants &lc)
{
    return static_cast<double>(B) * elements * lc.p_c;
}

double total_energy(const SolutionBundle &bundle, const std::vector<ChannelRealization> &channels,
                    const std::vector<SlotGeometry> &geometry, const LinkConstants &lc)
{
    if (static_cast<int>(bundle.w.size()) != bundle.slots() || static_cast<int>(bundle.theta.size()) != bundle.B ||
        channels.size() < bundle.w.size() || geometry.size() < bundle.w.size())
        throw std::invalid_argument("total_energy: bundle dimensions inconsistent");

    const int mn = static_cast<int>(channels.front().H_sr.rows());
    double energy = 0.0;
    for (int n = 0; n < bundle.slots(); ++n)
    {
        const CVec &theta = bundle.theta[bundle.interval_of(n)];
        const double f_sr = radiation_pattern(bundle.r, geometry[n].l_sr, lc.beta);
        const CVec reflected = theta.cwiseProduct(channels[n].H_sr * bundle.w[n]);
        const double amplified = lc.eta * lc.c1 * lc.c1 * f_sr * reflected.squaredNorm();
        const double noise = lc.eta * theta.squaredNorm() * lc.sigma1_sq;
        energy += (amplified + noise) * lc.slot_len;
    }
    return energy + switching_energy(bundle.B, mn, lc);
}

std::vector<double> slot_rates(const SolutionBundle &bundle, const std::vector<ChannelRealization> &channels,
                               const std::vector<SlotGeometry> &geometry, const LinkConstants &lc)
{
    std::vector<double> rates(bundle.slots());
    for (int n = 0; n < bundle.slots(); ++n)
    {
        const double g = snr(bundle.w[n], bundle.theta[bundle.interval_of(n)], bundle.r, channels[n].H_sr,
                             channels[n].H_ru, geometry[n].l_sr, geometry[n].l_ru, lc);
        rates[n] = instantaneous_rate(g);
    }
    return rates;
}

} // namespace leoris
