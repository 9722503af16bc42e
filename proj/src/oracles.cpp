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

#include "leoris/oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace leoris::oracle
{

double lambda_max(const CMat &C)
{
    Eigen::ComplexEigenSolver<CMat> es(C, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("oracle::lambda_max: eigen-solver failed");
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        best = std::max(best, es.eigenvalues()(i).real());
    return best;
}

std::array<double, 2> hermitian2x2_eigs(const CMat &A)
{
    if (A.rows() != 2 || A.cols() != 2)
        throw std::invalid_argument("oracle::hermitian2x2_eigs: expected 2x2");
    const double a = A(0, 0).real(), d = A(1, 1).real();
    const double b2 = std::norm(A(0, 1));
    const double mean = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b2);
    return {mean - rad, mean + rad};
}

double best_random_unit(const CMat &H, int samples, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    const Eigen::Index n = H.rows();
    double best = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s)
    {
        CVec w(n);
        for (Eigen::Index i = 0; i < n; ++i)
            w(i) = cplx(nd(gen), nd(gen));
        w /= w.norm();
        best = std::max(best, (w.adjoint() * H * w)(0, 0).real());
    }
    return best;
}

namespace
{

double pattern(const Vec3 &r, const Vec3 &l, double beta)
{
    const double c = r(0) * l(0) + r(1) * l(1) + r(2) * l(2);
    return c > 0.0 ? std::pow(c, beta) : 0.0;
}

// (H w)_i by explicit summation.
cplx row_times(const CMat &H, Eigen::Index i, const CVec &w)
{
    cplx s{0.0, 0.0};
    for (Eigen::Index l = 0; l < H.cols(); ++l)
        s += H(i, l) * w(l);
    return s;
}

} // namespace

Terms slot_terms(const CVec &w, const CVec &theta, const Vec3 &r, const CMat &H_sr, const CVec &H_ru,
                 const Vec3 &l_sr, const Vec3 &l_ru, const LinkConstants &lc)
{
    Terms t;
    const double f_sr = pattern(r, l_sr, lc.beta);
    const double f_ru = pattern(r, l_ru, lc.beta);
    cplx cascade{0.0, 0.0};
    double amplified_noise = 0.0;
    for (Eigen::Index i = 0; i < theta.size(); ++i)
    {
        cascade += std::conj(H_ru(i)) * theta(i) * row_times(H_sr, i, w);
        amplified_noise += std::norm(theta(i)) * std::norm(H_ru(i));
    }
    if (f_sr > 0.0 && f_ru > 0.0)
    {
        t.signal_power = lc.c1 * lc.c1 * f_sr * f_ru * std::norm(cascade);
        t.noise = lc.c2 * lc.c2 * f_ru * lc.sigma1_sq * amplified_noise;
    }
    t.noise += lc.sigma2_sq;
    return t;
}

double average_rate(const SolutionBundle &bundle, const Scenario &sc, const LinkConstants &lc)
{
    double sum = 0.0;
    for (int n = 0; n < bundle.B * bundle.K; ++n)
    {
        const Terms t = oracle::slot_terms(bundle.w[n], bundle.theta[n / bundle.K], bundle.r, sc.channels[n].H_sr,
                                   sc.channels[n].H_ru, sc.geometry[n].l_sr, sc.geometry[n].l_ru, lc);
        sum += std::log(1.0 + t.snr()) / std::log(2.0);
    }
    return sum / (bundle.B * bundle.K);
}

double energy(const SolutionBundle &bundle, const Scenario &sc, const LinkConstants &lc)
{
    const Eigen::Index mn = sc.channels.front().H_sr.rows();
    double e = 0.0;
    for (int b = 0; b < bundle.B; ++b)
        for (Eigen::Index i = 0; i < mn; ++i)
            e += lc.p_c;
    for (int n = 0; n < bundle.B * bundle.K; ++n)
    {
        const CVec &theta = bundle.theta[n / bundle.K];
        const double f_sr = pattern(bundle.r, sc.geometry[n].l_sr, lc.beta);
        double out_power = 0.0;
        for (Eigen::Index i = 0; i < mn; ++i)
        {
            const double a2 = std::norm(theta(i));
            out_power += a2 * (lc.c1 * lc.c1 * f_sr * std::norm(row_times(sc.channels[n].H_sr, i, bundle.w[n])) +
                               lc.sigma1_sq);
        }
        e += lc.eta * out_power * lc.slot_len;
    }
    return e;
}

BruteForce brute_force(const Scenario &sc, int K, int samples, int r_grid, std::uint64_t seed)
{
    const LinkConstants &lc = sc.link;
    const int slots = sc.slots();
    if (K < 1 || slots % K != 0)
        throw std::invalid_argument("oracle::brute_force: K must divide the slot count");
    const int B = slots / K;
    const int mn = sc.elements();

    // Per sample and slot: max_w |h^H Theta H_sr w|^2 = ||(h^H Theta H_sr)||^2 and sum |theta_i h_i|^2.
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    std::vector<double> gain(static_cast<std::size_t>(samples) * slots), noise(gain.size());
    for (int b = 0; b < B; ++b)
        for (int s = 0; s < samples; ++s)
        {
            CVec th(mn);
            for (int i = 0; i < mn; ++i)
                th(i) = std::polar(lc.a_max, phase(gen));
            for (int k = 0; k < K; ++k)
            {
                const int n = b * K + k;
                const auto &ch = sc.channels[n];
                double g = 0.0;
                for (Eigen::Index l = 0; l < ch.H_sr.cols(); ++l)
                {
                    cplx a{0.0, 0.0};
                    for (int i = 0; i < mn; ++i)
                        a += std::conj(ch.H_ru(i)) * th(i) * ch.H_sr(i, l);
                    g += std::norm(a);
                }
                double z = 0.0;
                for (int i = 0; i < mn; ++i)
                    z += std::norm(th(i) * ch.H_ru(i));
                gain[static_cast<std::size_t>(s) * slots + n] = g;
                noise[static_cast<std::size_t>(s) * slots + n] = z;
            }
        }

    BruteForce best;
    best.avg_rate = -1.0;
    for (int d = 0; d < r_grid; ++d)
    {
        const double ang = 2.0 * kPi * d / r_grid;
        const Vec3 r(0.0, std::cos(ang), std::sin(ang));
        bool front = true;
        for (int n = 0; n < slots && front; ++n)
            front = r.dot(sc.geometry[n].l_sr) >= 0.0 && r.dot(sc.geometry[n].l_ru) >= 0.0;
        if (!front)
            continue;
        // Given r the intervals decouple: pick the best sample per interval.
        double total = 0.0;
        for (int b = 0; b < B; ++b)
        {
            double bb = 0.0;
            for (int s = 0; s < samples; ++s)
            {
                double v = 0.0;
                for (int k = 0; k < K; ++k)
                {
                    const int n = b * K + k;
                    const double fs = pattern(r, sc.geometry[n].l_sr, lc.beta);
                    const double fr = pattern(r, sc.geometry[n].l_ru, lc.beta);
                    const std::size_t idx = static_cast<std::size_t>(s) * slots + n;
                    v += std::log2(1.0 + lc.c1 * lc.c1 * fs * fr * gain[idx] /
                                             (lc.c2 * lc.c2 * fr * lc.sigma1_sq * noise[idx] + lc.sigma2_sq));
                }
                bb = std::max(bb, v);
            }
            total += bb;
        }
        if (total / slots > best.avg_rate)
        {
            best.avg_rate = total / slots;
            best.r = r;
        }
    }
    return best;
}

double sphere_grid_max(const std::function<double(const Vec3 &)> &f, double step_deg, Vec3 *argmax)
{
    const double step = step_deg * kPi / 180.0;
    const int n_lat = static_cast<int>(std::round(kPi / step));
    const int n_lon = static_cast<int>(std::round(2.0 * kPi / step));
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a <= n_lat; ++a)
    {
        const double pol = a * step;
        for (int b = 0; b < n_lon; ++b)
        {
            const double az = b * step;
            const Vec3 r(std::sin(pol) * std::cos(az), std::sin(pol) * std::sin(az), std::cos(pol));
            const double v = f(r);
            if (v > best)
            {
                best = v;
                if (argmax)
                    *argmax = r;
            }
        }
    }
    return best;
}

double grid_max_1d(const std::function<double(double)> &f, double lo, double hi, int n, double *argmax)
{
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i)
    {
        const double x = lo + (hi - lo) * i / n;
        const double v = f(x);
        if (v > best)
        {
            best = v;
            if (argmax)
                *argmax = x;
        }
    }
    return best;
}

} // namespace leoris::oracle
