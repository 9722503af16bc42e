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

#include "leoris/experiment.hpp"

#include "leoris/config.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>
#include <set>

namespace leoris
{

std::string to_string(SweepKind kind)
{
    switch (kind)
    {
    case SweepKind::None:
        return "none";
    case SweepKind::HoldingInterval:
        return "holding-interval";
    case SweepKind::RisUserDistance:
        return "ris-user-distance";
    case SweepKind::ElementCount:
        return "element-count";
    case SweepKind::EnergyBudget:
        return "energy-budget";
    }
    return "unknown";
}

SweepKind sweep_from_string(const std::string &name)
{
    for (SweepKind k : {SweepKind::None, SweepKind::HoldingInterval, SweepKind::RisUserDistance,
                        SweepKind::ElementCount, SweepKind::EnergyBudget})
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("unknown sweep '" + name + "'");
}

Profile profile_from_string(const std::string &name)
{
    if (name == "ci")
        return Profile::Ci;
    if (name == "paper")
        return Profile::Paper;
    throw std::invalid_argument("unknown profile '" + name + "' (expected ci or paper)");
}

void ExperimentSpec::validate() const
{
    using Kind = ConfigError::Kind;
    int slots = 0;
    try
    {
        scene.validate();
        fading.validate();
        link.validate();
        slots = scene.slot_count();
    }
    catch (const ConfigError &)
    {
        throw;
    }
    catch (const std::exception &e)
    {
        throw ConfigError(Kind::Invalid, "", e.what());
    }
    if (seeds.empty())
        throw ConfigError(Kind::Invalid, "seeds", "seed list must not be empty");
    if (baselines.empty())
        throw ConfigError(Kind::Invalid, "baselines", "baseline set must not be empty");
    for (int K : k_candidates)
        if (K < 1 || slots % K != 0)
            throw ConfigError(Kind::Divisibility, "K_candidates",
                              std::to_string(K) + " does not divide T/delta = " + std::to_string(slots));
    if (sweep != SweepKind::None && sweep_values.empty())
        throw ConfigError(Kind::Invalid, "sweep_values", "a sweep needs at least one value");
    for (double v : sweep_values)
    {
        switch (sweep)
        {
        case SweepKind::None:
            break;
        case SweepKind::HoldingInterval:
            if (v != std::floor(v) || v < 1 || slots % static_cast<int>(v) != 0)
                throw ConfigError(Kind::Divisibility, "sweep_values",
                                  "holding interval " + std::to_string(v) + " does not divide T/delta");
            break;
        case SweepKind::ElementCount:
            if (v != std::floor(v) || v < 1)
                throw ConfigError(Kind::Invalid, "sweep_values", "element counts must be positive integers");
            if (!fading.beam_gain.empty())
                throw ConfigError(Kind::Invalid, "beam_gain", "cannot be fixed while sweeping the element count");
            break;
        case SweepKind::RisUserDistance:
        case SweepKind::EnergyBudget:
            if (!(v > 0.0))
                throw ConfigError(Kind::Invalid, "sweep_values", "distances and budgets must be positive");
            break;
        }
    }
    if (calibrate_e_max)
    {
        if (calibration_K < 1 || slots % calibration_K != 0)
            throw ConfigError(Kind::Divisibility, "calibration_K",
                              std::to_string(calibration_K) + " does not divide T/delta = " + std::to_string(slots));
        if (!(calibration_factor > 0.0))
            throw ConfigError(Kind::Invalid, "calibration_factor", "must be positive");
    }
    if (ao.max_penalty_rounds < 1 || ao.ao_max_iter < 1 || ao.sdp_max_iter < 1 || ao.gr_samples < 1)
        throw ConfigError(Kind::Invalid, "", "iteration limits and gr_samples must be positive");
    if (!(ao.rho0 > 0.0) || !(ao.rho_step >= 1.0) || !(ao.rho_max >= ao.rho0))
        throw ConfigError(Kind::Invalid, "rho0", "need rho0 > 0, rho_step >= 1 and rho_max >= rho0");
}

ExperimentSpec default_spec(Profile profile)
{
    ExperimentSpec s;
    if (profile == Profile::Ci)
    {
        s.scene.period = 20.0;
        s.fading.ris_rows = s.fading.ris_cols = 4;
        s.seeds = {1, 2, 3};
        s.calibration_K = 5;
    }
    else
    {
        s.scene.period = 100.0;
        s.fading.ris_rows = s.fading.ris_cols = 6;
        s.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        s.calibration_K = 10;
    }
    return s;
}

Scenario task_scenario(const ExperimentSpec &spec, std::uint64_t seed, double sweep_value)
{
    SceneConfig scene = spec.scene;
    FadingParams fading = spec.fading;
    LinkParams link = spec.link;
    switch (spec.sweep)
    {
    case SweepKind::RisUserDistance:
    {
        const Vec3 dir = (scene.ris_pos - scene.user_pos).normalized();
        scene.ris_pos = scene.user_pos + sweep_value * dir;
        break;
    }
    case SweepKind::ElementCount:
        fading.ris_rows = fading.ris_cols = static_cast<int>(sweep_value);
        break;
    case SweepKind::EnergyBudget:
        link.e_max = sweep_value;
        break;
    default:
        break;
    }
    return make_scenario(scene, fading, link, seed);
}

namespace
{

std::string clean(std::string s)
{
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

std::vector<RunRow> run_task(const ExperimentSpec &spec, std::uint64_t seed, double value)
{
    std::vector<RunRow> rows;
    for (Scheme s : spec.baselines)
    {
        RunRow r;
        r.series = spec.series;
        r.seed = seed;
        r.sweep = spec.sweep;
        r.sweep_value = value;
        r.baseline = s;
        rows.push_back(std::move(r));
    }

    Scenario sc;
    try
    {
        sc = task_scenario(spec, seed, value);
        if (spec.calibrate_e_max && spec.sweep != SweepKind::EnergyBudget)
        {
            LinkConstants lc = sc.link;
            lc.e_max = calibrate_energy_budget(sc, spec.calibration_K, spec.ao, spec.calibration_factor);
            sc = with_link(sc, lc);
        }
    }
    catch (const std::exception &e)
    {
        for (auto &r : rows)
            r.status = "error: " + clean(e.what());
        return rows;
    }

    int fixed_K = 0;
    if (spec.sweep == SweepKind::HoldingInterval)
        fixed_K = static_cast<int>(value);
    else if (spec.k_candidates.size() == 1)
        fixed_K = spec.k_candidates.front();

    for (auto &row : rows)
    {
        const auto t0 = std::chrono::steady_clock::now();
        row.e_max = sc.link.e_max;
        const LinkConstants lc = row.baseline == Scheme::PassiveRis ? passive_constants(sc.link) : sc.link;
        try
        {
            if (fixed_K > 0)
            {
                row.K = fixed_K;
                row.B = sc.slots() / fixed_K;
                if (switching_energy(row.B, sc.elements(), sc.link) > sc.link.e_max)
                    throw BudgetInfeasible(switching_energy(row.B, sc.elements(), sc.link));
                const SchemeResult res = run_scheme(sc, fixed_K, row.baseline, spec.ao);
                row.bundle = res.bundle;
                row.ao_iterations = res.ao_iterations;
                row.penalty_rounds = res.penalty_rounds;
                if (!res.converged)
                    row.status = "max-iter";
            }
            else
            {
                HoldingSearch hs = optimal_holding_interval(sc, spec.k_candidates, row.baseline, spec.ao);
                row.K = hs.best_K;
                row.B = sc.slots() / hs.best_K;
                row.bundle = hs.best;
                for (const auto &c : hs.records)
                {
                    if (c.K == hs.best_K)
                    {
                        row.ao_iterations = c.ao_iterations;
                        row.penalty_rounds = c.penalty_rounds;
                    }
                }
                row.candidates = std::move(hs.records);
                if (hs.stopped_at_K > 0)
                    row.status = "ok; stopped at K=" + std::to_string(hs.stopped_at_K);
            }
            row.avg_rate = row.bundle.avg_rate;
            row.energy = row.bundle.energy;
            row.feasible = row.energy <= row.e_max;
            if (spec.per_slot_rows)
                row.slot_rates = slot_rates(row.bundle, sc.channels, sc.geometry, lc);
        }
        catch (const BudgetInfeasible &e)
        {
            row.status = "budget-infeasible: " + clean(e.what());
            row.feasible = false;
        }
        catch (const std::exception &e)
        {
            row.status = "error: " + clean(e.what());
            row.feasible = false;
        }
        row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return rows;
}

bool usable(const RunRow &r)
{
    return r.status == "ok" || r.status == "max-iter" || r.status.rfind("ok;", 0) == 0;
}

void aggregate(ExperimentResult &res, const ExperimentSpec &spec, const std::vector<double> &points)
{
    for (double v : points)
    {
        for (Scheme s : spec.baselines)
        {
            AggregateRow a;
            a.series = spec.series;
            a.sweep = spec.sweep;
            a.sweep_value = v;
            a.baseline = s;
            std::vector<double> rates;
            std::set<int> ks;
            double energy = 0.0, e_max = 0.0;
            for (const RunRow *r : res.select(spec.series, s, v))
            {
                ++a.runs;
                if (!usable(*r))
                    continue;
                rates.push_back(r->avg_rate);
                ks.insert(r->K);
                energy += r->energy;
                e_max += r->e_max;
                a.feasible += r->feasible ? 1 : 0;
            }
            const double n = static_cast<double>(rates.size());
            if (!rates.empty())
            {
                for (double x : rates)
                    a.mean_rate += x;
                a.mean_rate /= n;
                if (rates.size() > 1)
                {
                    double ss = 0.0;
                    for (double x : rates)
                        ss += (x - a.mean_rate) * (x - a.mean_rate);
                    a.std_rate = std::sqrt(ss / (n - 1.0));
                }
                a.mean_energy = energy / n;
                a.mean_e_max = e_max / n;
            }
            if (ks.size() == 1)
            {
                a.K = *ks.begin();
                a.B = spec.scene.slot_count() / a.K;
            }
            if (static_cast<int>(rates.size()) != a.runs)
                a.status = "partial " + std::to_string(rates.size()) + "/" + std::to_string(a.runs);
            res.aggregates.push_back(a);
        }
    }
}

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

} // namespace

std::vector<const RunRow *> ExperimentResult::select(const std::string &series, Scheme baseline,
                                                     double sweep_value) const
{
    std::vector<const RunRow *> out;
    for (const auto &r : runs)
        if (r.series == series && r.baseline == baseline && r.sweep_value == sweep_value)
            out.push_back(&r);
    return out;
}

const AggregateRow *ExperimentResult::aggregate(const std::string &series, Scheme baseline, double sweep_value) const
{
    for (const auto &a : aggregates)
        if (a.series == series && a.baseline == baseline && a.sweep_value == sweep_value)
            return &a;
    return nullptr;
}

ExperimentResult run_experiment(const ExperimentSpec &spec)
{
    spec.validate();
    const std::vector<double> points = spec.sweep == SweepKind::None ? std::vector<double>{0.0} : spec.sweep_values;
    const int n_points = static_cast<int>(points.size());
    const int n_tasks = static_cast<int>(spec.seeds.size()) * n_points;

    std::vector<std::vector<RunRow>> slots(n_tasks);
#pragma omp parallel for schedule(dynamic, 1)
    for (int t = 0; t < n_tasks; ++t)
    {
        const ExperimentSpec snapshot = spec;
        slots[t] = run_task(snapshot, snapshot.seeds[t / n_points], points[t % n_points]);
    }

    ExperimentResult res;
    for (auto &task : slots)
        for (auto &r : task)
            res.runs.push_back(std::move(r));
    aggregate(res, spec, points);
    return res;
}

ExperimentResult run_experiments(const std::vector<ExperimentSpec> &specs)
{
    ExperimentResult all;
    for (const auto &s : specs)
    {
        ExperimentResult r = run_experiment(s);
        all.runs.insert(all.runs.end(), std::make_move_iterator(r.runs.begin()), std::make_move_iterator(r.runs.end()));
        all.aggregates.insert(all.aggregates.end(), r.aggregates.begin(), r.aggregates.end());
    }
    return all;
}

void write_csv(std::ostream &os, const ExperimentResult &result, bool timestamp_header)
{
    if (timestamp_header)
    {
        const std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os << "# leoris experiment generated " << buf << '\n';
    }
    os << "kind,series,seed,sweep,sweep_value,baseline,K,B,slot,avg_rate,rate_std,energy,e_max,feasible,"
          "ao_iterations,penalty_rounds,status\n";
    auto head = [&](const char *kind, const std::string &series, const std::string &seed, SweepKind sweep, double v,
                    Scheme s) {
        os << kind << ',' << series << ',' << seed << ',' << to_string(sweep) << ',' << num(v) << ',' << to_string(s)
           << ',';
    };
    for (const auto &r : result.runs)
    {
        const std::string seed = std::to_string(r.seed);
        head("run", r.series, seed, r.sweep, r.sweep_value, r.baseline);
        os << r.K << ',' << r.B << ",," << num(r.avg_rate) << ",," << num(r.energy) << ',' << num(r.e_max) << ','
           << (r.feasible ? 1 : 0) << ',' << r.ao_iterations << ',' << r.penalty_rounds << ',' << clean(r.status)
           << '\n';
        for (const auto &c : r.candidates)
        {
            head("candidate", r.series, seed, r.sweep, r.sweep_value, r.baseline);
            os << c.K << ',' << c.B << ",," << num(c.avg_rate) << ",," << num(c.energy) << ',' << num(r.e_max) << ','
               << (c.feasible ? 1 : 0) << ',' << c.ao_iterations << ',' << c.penalty_rounds << ",ok\n";
        }
        for (std::size_t n = 0; n < r.slot_rates.size(); ++n)
        {
            head("slot", r.series, seed, r.sweep, r.sweep_value, r.baseline);
            os << r.K << ',' << r.B << ',' << n << ',' << num(r.slot_rates[n]) << ",,,,,,,\n";
        }
    }
    for (const auto &a : result.aggregates)
    {
        head("aggregate", a.series, "", a.sweep, a.sweep_value, a.baseline);
        os << (a.K ? std::to_string(a.K) : "") << ',' << (a.B ? std::to_string(a.B) : "") << ",,"
           << num(a.mean_rate) << ',' << num(a.std_rate) << ',' << num(a.mean_energy) << ',' << num(a.mean_e_max)
           << ',' << a.feasible << ",,," << clean(a.status) << '\n';
    }
}

void write_timing_csv(std::ostream &os, const ExperimentResult &result)
{
    const std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# leoris timing generated " << buf << '\n';
    os << "series,seed,sweep_value,baseline,K,wall_seconds\n";
    for (const auto &r : result.runs)
        os << r.series << ',' << r.seed << ',' << num(r.sweep_value) << ',' << to_string(r.baseline) << ',' << r.K
           << ',' << num(r.wall_seconds) << '\n';
}

namespace
{

ExperimentSpec sized(Profile profile, int mn, const std::string &series)
{
    ExperimentSpec s = default_spec(profile);
    s.fading.ris_rows = s.fading.ris_cols = mn;
    s.series = series + "-MN" + std::to_string(mn);
    return s;
}

} // namespace

std::vector<ExperimentSpec> preset_fig3(Profile profile)
{
    const int mn = profile == Profile::Ci ? 4 : 6;
    ExperimentSpec s = sized(profile, mn, "fig3");
    s.k_candidates = {profile == Profile::Ci ? 5 : 10};
    s.baselines = {Scheme::PenaltySca, Scheme::SdrGr, Scheme::Partial, Scheme::Unoptimized};
    s.per_slot_rows = true;
    s.calibrate_e_max = true;
    return {s};
}

std::vector<ExperimentSpec> preset_fig4(Profile profile)
{
    // Element counts per curve are a reconstruction.
    std::vector<ExperimentSpec> out;
    for (int mn : {4, 6})
    {
        ExperimentSpec s = sized(profile, mn, "fig4");
        s.sweep = SweepKind::HoldingInterval;
        s.sweep_values = {1, 2, 5, 10};
        s.baselines = {Scheme::PenaltySca};
        out.push_back(s);
    }
    return out;
}

std::vector<ExperimentSpec> preset_fig5(Profile profile)
{
    // Distances and array sizes are a reconstruction.
    std::vector<ExperimentSpec> out;
    const std::vector<int> sizes = profile == Profile::Ci ? std::vector<int>{4} : std::vector<int>{4, 6};
    for (int mn : sizes)
    {
        ExperimentSpec s = sized(profile, mn, "fig5");
        s.sweep = SweepKind::RisUserDistance;
        s.sweep_values = {50, 100, 150, 200, 300};
        s.k_candidates = {profile == Profile::Ci ? 5 : 10};
        s.baselines = {Scheme::PenaltySca, Scheme::PassiveRis};
        s.calibrate_e_max = true;
        out.push_back(s);
    }
    return out;
}

} // namespace leoris
