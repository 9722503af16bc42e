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
#include "leoris/timescale.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace leoris
{

enum class SweepKind
{
    None,
    HoldingInterval,
    RisUserDistance, // meters between user and RIS
    ElementCount,    // M = N = value
    EnergyBudget,    // E_max in J
};

std::string to_string(SweepKind kind);
SweepKind sweep_from_string(const std::string &name);

enum class Profile
{
    Ci,    // T = 20 s, M = N = 4, 3 seeds
    Paper, // T = 100 s, M = N = 6, 10 seeds
};

Profile profile_from_string(const std::string &name);

struct ExperimentSpec
{
    std::string series = "default";
    SceneConfig scene;
    FadingParams fading;
    LinkParams link;
    AoConfig ao;

    std::vector<std::uint64_t> seeds{1};
    std::vector<int> k_candidates; // empty: every divisor of T/delta
    SweepKind sweep = SweepKind::None;
    std::vector<double> sweep_values;
    std::vector<Scheme> baselines{Scheme::PenaltySca};

    // E_max = factor * energy of an unconstrained penalty-SCA run at calibration_K.
    bool calibrate_e_max = false;
    int calibration_K = 10;
    double calibration_factor = 1.5;

    bool per_slot_rows = false;
    std::string output;

    // Throws ConfigError (see config.hpp) on the first violated rule.
    void validate() const;
};

// Defaults of the experiment section with the profile's period, array and seeds.
ExperimentSpec default_spec(Profile profile);

struct RunRow
{
    std::string series;
    std::uint64_t seed = 0;
    SweepKind sweep = SweepKind::None;
    double sweep_value = 0.0;
    Scheme baseline = Scheme::PenaltySca;
    int K = 0;
    int B = 0;
    double avg_rate = 0.0;
    double energy = 0.0;
    double e_max = 0.0;
    bool feasible = false;
    int ao_iterations = 0;
    int penalty_rounds = 0;
    std::string status = "ok";
    std::vector<double> slot_rates; // filled in per-slot mode
    double wall_seconds = 0.0;
    SolutionBundle bundle; // kept for independent energy re-checks
    std::vector<CandidateRecord> candidates; // holding-interval search only
};

struct AggregateRow
{
    std::string series;
    SweepKind sweep = SweepKind::None;
    double sweep_value = 0.0;
    Scheme baseline = Scheme::PenaltySca;
    int K = 0; // 0 when the selected K differs across seeds
    int B = 0;
    double mean_rate = 0.0;
    double std_rate = 0.0; // sample standard deviation over the ok runs
    double mean_energy = 0.0;
    double mean_e_max = 0.0;
    int feasible = 0; // feasible runs
    int runs = 0;
    std::string status = "ok";
};

struct ExperimentResult
{
    std::vector<RunRow> runs;
    std::vector<AggregateRow> aggregates;

    // The runs of one series, sweep point and baseline, in seed order.
    std::vector<const RunRow *> select(const std::string &series, Scheme baseline, double sweep_value) const;
    const AggregateRow *aggregate(const std::string &series, Scheme baseline, double sweep_value) const;
};

// Runs every (seed, sweep point) task on the OpenMP pool. Rows come out
// ordered by (seed, sweep point, baseline) regardless of completion order.
ExperimentResult run_experiment(const ExperimentSpec &spec);
ExperimentResult run_experiments(const std::vector<ExperimentSpec> &specs);

// Columns: kind,series,seed,sweep,sweep_value,baseline,K,B,slot,avg_rate,rate_std,
// energy,e_max,feasible,ao_iterations,penalty_rounds,status
void write_csv(std::ostream &os, const ExperimentResult &result, bool timestamp_header = true);
// Columns: series,seed,sweep_value,baseline,K,wall_seconds
void write_timing_csv(std::ostream &os, const ExperimentResult &result);

// Preset sweeps; series names carry the array size and mark reconstructed values.
std::vector<ExperimentSpec> preset_fig3(Profile profile);
std::vector<ExperimentSpec> preset_fig4(Profile profile);
std::vector<ExperimentSpec> preset_fig5(Profile profile);

// Scenario of one task: base configs with the sweep value applied.
Scenario task_scenario(const ExperimentSpec &spec, std::uint64_t seed, double sweep_value);

} // namespace leoris
