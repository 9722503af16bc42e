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

#include "leoris/link.hpp"
#include "leoris/rng.hpp"
#include "leoris/scenario.hpp"
#include "leoris/sdp.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace leoris
{

enum class RisMethod
{
    PenaltySca, // FP + SCA + rank-one penalty continuation
    SdrGr,      // FP + SCA relaxation, then Gaussian randomization
};

struct AoConfig
{
    // penalty continuation
    double rho0 = 1e-3;
    double rho_step = 10.0;
    double rho_max = 1e6;
    double rank_tol = 1e-6;
    int max_penalty_rounds = 30;

    // alternating optimization
    double ao_tol = 1e-3;
    bool relative_tol = true; // ao_tol scales with |objective| instead of absolute bits/s/Hz
    int ao_max_iter = 50;

    double sdp_tol = 1e-7;
    int sdp_max_iter = 100;

    RisMethod ris_method = RisMethod::PenaltySca;
    int gr_samples = 100;
    bool optimize_orientation = true;
};

// True when an objective moved from prev to cur by no more than the AO tolerance.
bool objective_settled(double prev, double cur, const AoConfig &cfg);

// ---- transmit beamforming -------------------------------------------------

// Principal eigenvector of H1 = (H_sr^H Theta^H h)(h^H Theta H_sr).
// For H1 = 0 any unit vector is optimal; e_1 is returned and *degenerate set.
CVec optimize_transmit_bf(const CMat &H_sr, const CVec &H_ru, const CVec &theta, bool *degenerate = nullptr);

// ---- fractional programming ----------------------------------------------

struct FpAux
{
    double v = 0.0;
    cplx mu{0.0, 0.0};
};

// v = gamma, then mu = sqrt(1 + v) s / (|s|^2 + d). Throws if d <= 0.
FpAux fp_update_aux(double gamma, cplx signal, double denom);

// sum_n log2(1 + v) + (-v + 2 sqrt(1 + v) Re(conj(mu) s) - |mu|^2 (|s|^2 + d)) / ln 2
double fp_surrogate(std::span<const SlotTerms> terms, std::span<const FpAux> aux);

// ---- RIS beamforming ------------------------------------------------------

// Everything the RIS subproblem of one holding interval needs, with w and r fixed.
struct RisIntervalData
{
    std::vector<CVec> g;        // conj(h) o (H_sr w), per slot
    std::vector<double> c4;     // c1 sqrt(F_sr F_ru)
    std::vector<RVec> noise_w;  // c2^2 F_ru sigma1^2 |h|^2
    std::vector<RVec> energy_w; // eta delta (c1^2 F_sr |H_sr w|^2 + sigma1^2)
    double sigma2_sq = 0.0;
    double a_max = 1.0;
    double budget = 0.0; // amplification energy allowed for this interval

    int slots() const { return static_cast<int>(g.size()); }
    int elements() const { return g.empty() ? 0 : static_cast<int>(g.front().size()); }

    SlotTerms terms(int k, const CVec &theta) const;
    double rate_sum(const CVec &theta) const; // sum over slots of log2(1 + gamma)
    double energy(const CVec &theta) const;
    RVec energy_diag() const; // summed energy weights
};

// budget: amplification energy available to interval b (E_max minus switching minus the other intervals).
RisIntervalData ris_interval_data(const Scenario &sc, const SolutionBundle &bundle, int b, double budget);

// Linearized FP surrogate in V = theta theta^H, normalized by its spectral
// norm, plus rho (u u^H - I) with u the principal eigenvector of Vq.
// Constraints: energy row, then MN diagonal bounds a_max^2.
SdpProblem build_ris_sdp(const RisIntervalData &data, std::span<const FpAux> aux, const CMat &Vq, double rho);

// sqrt(lambda_1) u_1, amplitudes clipped to a_max, entry 0 rotated to phase 0.
CVec recover_rank_one(const CMat &V, double a_max);

struct PenaltyRound
{
    int round = 0;
    double rho = 0.0;
    double rank_residual = 0.0; // (||V||_* - ||V||_2) / ||V||_*
    double surrogate = 0.0;     // FP surrogate value at the linearization point
    double rate_sum = 0.0;      // true objective of the recovered state
    SdpStatus status = SdpStatus::Optimal;
};

struct RisResult
{
    CVec theta;
    double rate_sum = 0.0;
    std::vector<PenaltyRound> trace;
    CMat V; // last lifted iterate
};

RisResult optimize_ris_interval(const RisIntervalData &data, const CVec &theta0, const AoConfig &cfg);

// Draws n_samples vectors with covariance V, scales each into the energy and
// amplitude constraints and returns the best. Falls back to recover_rank_one.
CVec gaussian_randomization(const CMat &V, const RisIntervalData &data, int n_samples, const CounterRng &rng,
                            std::uint64_t slot);

RisResult sdr_gr_interval(const RisIntervalData &data, const CVec &theta0, const AoConfig &cfg,
                          const CounterRng &rng, std::uint64_t slot);

// SDR + GR over every interval with w and r fixed.
std::vector<CVec> sdr_gr_baseline(const Scenario &sc, const SolutionBundle &bundle, const AoConfig &cfg);

// ---- orientation -----------------------------------------------------------

// Per-slot data of the orientation subproblem with w and Theta fixed.
struct OrientationData
{
    std::vector<Vec3> l_sr;
    Vec3 l_ru;
    std::vector<double> c8;   // c1 |h^H Theta H_sr w|
    std::vector<double> c9sq; // c2^2 sigma1^2 ||Theta^H h||^2
    std::vector<double> e6;   // eta delta c1^2 ||Theta H_sr w||^2
    double sigma2_sq = 0.0;
    double budget = 0.0; // bound on sum_n e6_n r^T l_sr,n
};

OrientationData orientation_data(const Scenario &sc, const SolutionBundle &bundle);

// Lifted R = [r; 1][r; 1]^T. Constraints: Tr(R) = 2, 0 <= r^T l_ru <= 1,
// 0 <= r^T l_sr,n <= 1 per slot, energy row, R_44 = 1.
SdpProblem build_orientation_sdp(const OrientationData &data, std::span<const FpAux> aux, const RMat &Rq,
                                 double rho);

// Principal eigenvector scaled to last component 1, first three normalized.
// Throws std::domain_error when R_44 < 0.5.
Vec3 recover_direction(const RMat &R);

// Moves r along the great circle towards the bisector of l_sr_mean and l_ru
// until r^T l >= 0 for every given direction. *projected reports a change.
Vec3 project_front(const Vec3 &r, const std::vector<Vec3> &l_sr, const Vec3 &l_ru, bool *projected = nullptr);

Vec3 bisector_orientation(const Scenario &sc);

struct OrientationResult
{
    Vec3 r;
    double avg_rate = 0.0;
    bool projected = false;
    std::vector<PenaltyRound> trace;
};

OrientationResult optimize_orientation(const Scenario &sc, const SolutionBundle &bundle, const AoConfig &cfg);

// ---- alternating optimization ----------------------------------------------

struct AoTraceRow
{
    int iteration = 0;
    std::string block; // init, w, theta, r
    double objective = 0.0;
    double rho = 0.0;
    double rank_residual = 0.0;
};

struct AoReport
{
    SolutionBundle bundle;
    std::vector<double> objective;   // average rate after every completed AO iteration, [0] is the start
    std::vector<AoTraceRow> trace;   // one row per block update
    std::vector<PenaltyRound> rounds; // every penalty round of every RIS / orientation solve
    int iterations = 0;
    int penalty_rounds = 0;
    bool converged = false;

    void write_trace_csv(std::ostream &os) const;
};

// Fills avg_rate and energy of the bundle from its variables.
void evaluate_bundle(const Scenario &sc, SolutionBundle &bundle);

// Theta: uniform amplitude using at most half the amplification budget,
// random phases; r: bisector; w: eigen-beamformer for that Theta.
SolutionBundle initial_bundle(const Scenario &sc, int K);

AoReport alternating_optimize(const Scenario &sc, int K, const AoConfig &cfg, const SolutionBundle *warm = nullptr);

// w optimized, Theta random phase at the largest amplitude the budget allows (capped at a_max), r bisector.
SolutionBundle partial_baseline(const Scenario &sc, int K);

// Random w, random-phase Theta as above, r bisector.
SolutionBundle unoptimized_baseline(const Scenario &sc, int K);

// Amplitude-only energy rescaling: largest uniform amplitude <= a_max with energy within budget.
double uniform_amplitude_for_budget(const Scenario &sc, const SolutionBundle &bundle, double fraction);

} // namespace leoris
