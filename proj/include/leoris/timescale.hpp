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

#include "leoris/optimizer.hpp"
#include "leoris/scenario.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace leoris
{

enum class Scheme
{
    PenaltySca,
    SdrGr,
    Partial,
    Unoptimized,
    PassiveRis,
};

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string &name); // throws std::invalid_argument

struct SchemeResult
{
    SolutionBundle bundle;
    int ao_iterations = 0;
    int penalty_rounds = 0;
    bool converged = true;
};

// One scheme at a fixed holding interval K.
SchemeResult run_scheme(const Scenario &sc, int K, Scheme scheme, const AoConfig &cfg);

// Divisors of the slot count, largest first.
std::vector<int> holding_interval_candidates(int slots);

struct CandidateRecord
{
    int K = 0;
    int B = 0;
    SolutionBundle bundle;
    double avg_rate = 0.0;
    double energy = 0.0;
    bool feasible = false;
    int ao_iterations = 0;
    int penalty_rounds = 0;
};

struct HoldingSearch
{
    int best_K = 0;
    SolutionBundle best;
    std::vector<CandidateRecord> records;
    int stopped_at_K = 0; // first K whose switching energy alone exceeds E_max, 0 if none
};

class BudgetInfeasible : public std::runtime_error
{
  public:
    explicit BudgetInfeasible(double floor);
    double floor() const { return floor_; }

  private:
    double floor_;
};

// Descending scan over the candidates; stops at the first K whose switching
// energy B M N P_C exceeds E_max and returns the best feasible record.
// Throws BudgetInfeasible when even the largest K is out of budget.
HoldingSearch optimal_holding_interval(const Scenario &sc, std::vector<int> candidates, Scheme scheme,
                                       const AoConfig &cfg);

// factor times the energy of a penalty-SCA solve at calibration_K with no budget.
double calibrate_energy_budget(const Scenario &sc, int calibration_K, const AoConfig &cfg, double factor = 1.5);

} // namespace leoris
