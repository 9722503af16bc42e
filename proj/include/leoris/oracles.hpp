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

// Brute-force reference computations. Written against the raw formulas with
// plain loops and a different eigen-algorithm so they share no code path with
// the optimized kernels they check.

#include "leoris/scenario.hpp"

#include <array>
#include <cstdint>
#include <functional>

namespace leoris::oracle
{

// Largest eigenvalue of a Hermitian matrix via the general complex Schur form.
double lambda_max(const CMat &C);

// Eigenvalues of a 2x2 Hermitian matrix from the characteristic quadratic, ascending.
std::array<double, 2> hermitian2x2_eigs(const CMat &A);

// max over `samples` random unit vectors w of w^H H w.
double best_random_unit(const CMat &H, int samples, std::uint64_t seed);

struct Terms
{
    double signal_power = 0.0;
    double noise = 0.0;
    double snr() const { return signal_power / noise; }
};

Terms slot_terms(const CVec &w, const CVec &theta, const Vec3 &r, const CMat &H_sr, const CVec &H_ru,
                 const Vec3 &l_sr, const Vec3 &l_ru, const LinkConstants &lc);

double average_rate(const SolutionBundle &bundle, const Scenario &sc, const LinkConstants &lc);

// Switching plus amplification energy, element by element.
double energy(const SolutionBundle &bundle, const Scenario &sc, const LinkConstants &lc);

struct BruteForce
{
    double avg_rate = 0.0;
    Vec3 r = Vec3::UnitZ();
};

// Random phases at a_max per interval, eigen-optimal w, r on a grid of the
// y-z great circle. Only meaningful without an energy budget and with beta = 1.
BruteForce brute_force(const Scenario &sc, int K, int samples, int r_grid, std::uint64_t seed);

// Maximum of f over a latitude-longitude grid of the unit sphere.
double sphere_grid_max(const std::function<double(const Vec3 &)> &f, double step_deg, Vec3 *argmax = nullptr);

// Maximum of f over n + 1 equispaced points of [lo, hi].
double grid_max_1d(const std::function<double(double)> &f, double lo, double hi, int n, double *argmax = nullptr);

} // namespace leoris::oracle
