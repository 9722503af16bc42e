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

#include "leoris/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace leoris
{

namespace
{

int interval_count(const Scenario &sc, int K)
{
    if (K < 1 || sc.slots() % K != 0)
        throw std::invalid_argument("holding interval K must divide the number of slots");
    return sc.slots() / K;
}

double amplification_budget(const Scenario &sc, int B)
{
    return sc.link.e_max - switching_energy(B, sc.elements(), sc.link);
}

// Amplification energy of slot n for the bundle's variables.
double slot_energy(const Scenario &sc, const SolutionBundle &bundle, int n)
{
    const LinkConstants &lc = sc.link;
    const CVec &theta = bundle.theta[bundle.interval_of(n)];
    const double f_sr = radiation_pattern(bundle.r, sc.geometry[n].l_sr, lc.beta);
    const CVec reflected = theta.cwiseProduct(sc.channels[n].H_sr * bundle.w[n]);
    return lc.eta * lc.slot_len * (lc.c1 * lc.c1 * f_sr * reflected.squaredNorm() + theta.squaredNorm() * lc.sigma1_sq);
}

double interval_energy(const Scenario &sc, const SolutionBundle &bundle, int b)
{
    double e = 0.0;
    for (int k = 0; k < bundle.K; ++k)
        e += slot_energy(sc, bundle, b * bundle.K + k);
    return e;
}

// Budget left to interval b once switching and every other interval are paid for.
double interval_budget(const Scenario &sc, const SolutionBundle &bundle, int b)
{
    double others = 0.0;
    for (int j = 0; j < bundle.B; ++j)
        if (j != b)
            others += interval_energy(sc, bundle, j);
    return amplification_budget(sc, bundle.B) - others;
}

CVec random_phase_theta(const CounterRng &rng, RngStream stream, int b, int mn, double amplitude)
{
    CVec theta(mn);
    for (int i = 0; i < mn; ++i)
        theta(i) = std::polar(amplitude, rng.phase(stream, static_cast<std::uint64_t>(b), i));
    return theta;
}

void beamform_all(const Scenario &sc, SolutionBundle &bundle)
{
    for (int n = 0; n < bundle.slots(); ++n)
        bundle.w[n] = optimize_transmit_bf(sc.channels[n].H_sr, sc.channels[n].H_ru, bundle.theta[bundle.interval_of(n)]);
}

SolutionBundle skeleton(const Scenario &sc, int K)
{
    SolutionBundle b;
    b.K = K;
    b.B = interval_count(sc, K);
    b.w.assign(sc.slots(), CVec::Zero(sc.antennas()));
    b.theta.assign(b.B, CVec::Zero(sc.elements()));
    b.r = bisector_orientation(sc);
    return b;
}

} // namespace

bool objective_settled(double prev, double cur, const AoConfig &cfg)
{
    if (std::isnan(prev))
        return false;
    const double tol = cfg.relative_tol ? cfg.ao_tol * std::abs(cur) : cfg.ao_tol;
    return std::abs(cur - prev) <= tol;
}

void evaluate_bundle(const Scenario &sc, SolutionBundle &bundle)
{
    const std::vector<double> rates = slot_rates(bundle, sc.channels, sc.geometry, sc.link);
    bundle.avg_rate = average_rate(rates, bundle.B, bundle.K);
    bundle.energy = total_energy(bundle, sc.channels, sc.geometry, sc.link);
}

double uniform_amplitude_for_budget(const Scenario &sc, const SolutionBundle &bundle, double fraction)
{
    const LinkConstants &lc = sc.link;
    const double budget = amplification_budget(sc, bundle.B);
    if (!std::isfinite(budget))
        return lc.a_max;
    if (budget <= 0.0)
        return 0.0;
    // ||Theta H w||^2 <= a^2 ||H||_F^2 for unit w and |theta_i| = a.
    double s = 0.0;
    for (int n = 0; n < bundle.slots(); ++n)
    {
        const double f_sr = radiation_pattern(bundle.r, sc.geometry[n].l_sr, lc.beta);
        s += lc.eta * lc.slot_len *
             (lc.c1 * lc.c1 * f_sr * sc.channels[n].H_sr.squaredNorm() + sc.elements() * lc.sigma1_sq);
    }
    if (s <= 0.0)
        return lc.a_max;
    return std::min(lc.a_max, std::sqrt(fraction * budget / s));
}

SolutionBundle initial_bundle(const Scenario &sc, int K)
{
    SolutionBundle b = skeleton(sc, K);
    const double a = uniform_amplitude_for_budget(sc, b, 0.5);
    const CounterRng rng(sc.seed);
    for (int j = 0; j < b.B; ++j)
        b.theta[j] = random_phase_theta(rng, RngStream::InitialPhase, j, sc.elements(), a);
    beamform_all(sc, b);
    evaluate_bundle(sc, b);
    return b;
}

SolutionBundle partial_baseline(const Scenario &sc, int K)
{
    SolutionBundle b = skeleton(sc, K);
    const double a = uniform_amplitude_for_budget(sc, b, 1.0);
    const CounterRng rng(sc.seed);
    for (int j = 0; j < b.B; ++j)
        b.theta[j] = random_phase_theta(rng, RngStream::BaselineBeam, j, sc.elements(), a);
    beamform_all(sc, b);
    evaluate_bundle(sc, b);
    return b;
}

SolutionBundle unoptimized_baseline(const Scenario &sc, int K)
{
    SolutionBundle b = skeleton(sc, K);
    const double a = uniform_amplitude_for_budget(sc, b, 1.0);
    const CounterRng rng(sc.seed);
    for (int j = 0; j < b.B; ++j)
        b.theta[j] = random_phase_theta(rng, RngStream::BaselineBeam, j, sc.elements(), a);
    // Beam draws live past the Theta phase indices of the same stream.
    const std::uint64_t offset = 1ull << 32;
    for (int n = 0; n < b.slots(); ++n)
    {
        CVec w(sc.antennas());
        for (int l = 0; l < sc.antennas(); ++l)
        {
            const auto [re, im] = rng.complex_normal(RngStream::BaselineBeam, offset + n, l);
            w(l) = cplx(re, im);
        }
        b.w[n] = w / w.norm();
    }
    evaluate_bundle(sc, b);
    return b;
}

std::vector<CVec> sdr_gr_baseline(const Scenario &sc, const SolutionBundle &bundle, const AoConfig &cfg)
{
    SolutionBundle work = bundle;
    const CounterRng rng(sc.seed);
    for (int b = 0; b < work.B; ++b)
    {
        const RisIntervalData data = ris_interval_data(sc, work, b, interval_budget(sc, work, b));
        work.theta[b] = sdr_gr_interval(data, work.theta[b], cfg, rng, b).theta;
    }
    return work.theta;
}

AoReport alternating_optimize(const Scenario &sc, int K, const AoConfig &cfg, const SolutionBundle *warm)
{
    AoReport rep;
    SolutionBundle cur = warm ? *warm : initial_bundle(sc, K);
    if (cur.K != K || cur.B != interval_count(sc, K))
        throw std::invalid_argument("alternating_optimize: warm start has a different holding interval");
    if (amplification_budget(sc, cur.B) < 0.0)
        throw std::domain_error("alternating_optimize: energy budget below the switching energy");
    evaluate_bundle(sc, cur);

    const CounterRng rng(sc.seed);
    rep.objective.push_back(cur.avg_rate);
    rep.trace.push_back({0, "init", cur.avg_rate, 0.0, 0.0});

    auto accept = [&](const SolutionBundle &cand)
    { return cand.avg_rate >= cur.avg_rate && cand.energy <= sc.link.e_max; };

    for (int it = 1; it <= cfg.ao_max_iter; ++it)
    {
        const double start = cur.avg_rate;

        // w: per-slot eigen-beamformer, reverting the costliest slots if C4 breaks.
        {
            SolutionBundle cand = cur;
            beamform_all(sc, cand);
            evaluate_bundle(sc, cand);
            if (cand.energy > sc.link.e_max)
            {
                std::vector<int> order(cand.slots());
                std::iota(order.begin(), order.end(), 0);
                std::vector<double> increase(cand.slots());
                for (int n = 0; n < cand.slots(); ++n)
                    increase[n] = slot_energy(sc, cand, n) - slot_energy(sc, cur, n);
                std::sort(order.begin(), order.end(), [&](int a, int b) { return increase[a] > increase[b]; });
                for (int n : order)
                {
                    if (cand.energy <= sc.link.e_max)
                        break;
                    cand.w[n] = cur.w[n];
                    cand.energy -= increase[n];
                }
                evaluate_bundle(sc, cand);
            }
            if (accept(cand))
                cur = cand;
            rep.trace.push_back({it, "w", cur.avg_rate, 0.0, 0.0});
        }

        // Theta: one interval at a time against the remaining budget.
        {
            double last_rho = 0.0, last_res = 0.0;
            for (int b = 0; b < cur.B; ++b)
            {
                const RisIntervalData data = ris_interval_data(sc, cur, b, interval_budget(sc, cur, b));
                const RisResult rr = cfg.ris_method == RisMethod::PenaltySca
                                         ? optimize_ris_interval(data, cur.theta[b], cfg)
                                         : sdr_gr_interval(data, cur.theta[b], cfg, rng, b);
                rep.rounds.insert(rep.rounds.end(), rr.trace.begin(), rr.trace.end());
                rep.penalty_rounds += static_cast<int>(rr.trace.size());
                if (!rr.trace.empty())
                {
                    last_rho = rr.trace.back().rho;
                    last_res = rr.trace.back().rank_residual;
                }
                SolutionBundle cand = cur;
                cand.theta[b] = rr.theta;
                evaluate_bundle(sc, cand);
                if (accept(cand))
                    cur = cand;
            }
            rep.trace.push_back({it, "theta", cur.avg_rate, last_rho, last_res});
        }

        // r: lifted orientation subproblem.
        if (cfg.optimize_orientation)
        {
            const OrientationResult orr = optimize_orientation(sc, cur, cfg);
            rep.rounds.insert(rep.rounds.end(), orr.trace.begin(), orr.trace.end());
            rep.penalty_rounds += static_cast<int>(orr.trace.size());
            SolutionBundle cand = cur;
            cand.r = orr.r;
            evaluate_bundle(sc, cand);
            if (accept(cand))
                cur = cand;
            const double rho = orr.trace.empty() ? 0.0 : orr.trace.back().rho;
            const double res = orr.trace.empty() ? 0.0 : orr.trace.back().rank_residual;
            rep.trace.push_back({it, "r", cur.avg_rate, rho, res});
        }

        rep.objective.push_back(cur.avg_rate);
        rep.iterations = it;
        if (objective_settled(start, cur.avg_rate, cfg))
        {
            rep.converged = true;
            break;
        }
    }
    rep.bundle = cur;
    return rep;
}

void AoReport::write_trace_csv(std::ostream &os) const
{
    os << "iteration,block,objective,rho,rank_residual\n";
    os << std::setprecision(9);
    for (const auto &t : trace)
        os << t.iteration << ',' << t.block << ',' << t.objective << ',' << t.rho << ',' << t.rank_residual << '\n';
}

} // namespace leoris
