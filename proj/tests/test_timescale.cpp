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

#include "leoris/config.hpp"
#include "leoris/experiment.hpp"
#include "leoris/oracles.hpp"
#include "leoris/timescale.hpp"

#include <catch_amalgamated.hpp>

#include <omp.h>

#include <sstream>

using namespace leoris;
using Catch::Approx;

namespace
{

Scenario tiny(int period, std::uint64_t seed, double e_max = std::numeric_limits<double>::infinity())
{
    SceneConfig c;
    c.period = period;
    FadingParams p;
    p.ris_rows = p.ris_cols = 2;
    p.sat_antennas = 2;
    LinkParams lp;
    lp.e_max = e_max;
    return make_scenario(c, p, lp, seed);
}

std::string body(const std::string &csv)
{
    // drop the timestamp line
    return csv.substr(csv.find('\n') + 1);
}

ExperimentSpec tiny_spec()
{
    ExperimentSpec s;
    s.scene.period = 4;
    s.fading.ris_rows = s.fading.ris_cols = 2;
    s.fading.sat_antennas = 2;
    s.seeds = {1, 2};
    s.series = "tiny";
    return s;
}

ConfigError::Kind error_kind(const std::string &text, const ExperimentSpec &base = ExperimentSpec{})
{
    std::istringstream is(text);
    try
    {
        parse_config(is, base);
    }
    catch (const ConfigError &e)
    {
        return e.kind();
    }
    FAIL("no ConfigError for: " << text);
    return ConfigError::Kind::Io;
}

} // namespace

TEST_CASE("holding interval candidates")
{
    REQUIRE(holding_interval_candidates(100) == std::vector<int>{100, 50, 25, 20, 10, 5, 4, 2, 1});
    REQUIRE(holding_interval_candidates(1) == std::vector<int>{1});
    REQUIRE_THROWS(holding_interval_candidates(0));
}

TEST_CASE("holding interval search without a binding budget")
{
    const Scenario sc = tiny(4, 3);
    const HoldingSearch hs = optimal_holding_interval(sc, {}, Scheme::PenaltySca, AoConfig{});
    REQUIRE(hs.records.size() == 3u);
    REQUIRE(hs.stopped_at_K == 0);
    double best = -1.0;
    int arg = 0;
    for (const auto &r : hs.records)
    {
        REQUIRE(r.feasible);
        REQUIRE(r.feasible == (r.energy <= sc.link.e_max));
        if (r.avg_rate > best)
        {
            best = r.avg_rate;
            arg = r.K;
        }
    }
    REQUIRE(hs.best_K == arg);
    REQUIRE(hs.records.front().K == 4); // descending scan
}

TEST_CASE("holding interval search at the switching floor")
{
    const Scenario base = tiny(4, 4);
    const double floor = switching_energy(1, base.elements(), base.link);
    LinkConstants lc = base.link;
    lc.e_max = floor;
    const Scenario sc = with_link(base, lc);
    const HoldingSearch hs = optimal_holding_interval(sc, {}, Scheme::PenaltySca, AoConfig{});
    REQUIRE(hs.best_K == 4);
    REQUIRE(hs.records.size() == 1u);
    REQUIRE(hs.stopped_at_K == 2);
    REQUIRE(hs.best.theta[0].norm() == 0.0);

    lc.e_max = 0.5 * floor;
    try
    {
        optimal_holding_interval(with_link(base, lc), {}, Scheme::PenaltySca, AoConfig{});
        FAIL("expected BudgetInfeasible");
    }
    catch (const BudgetInfeasible &e)
    {
        REQUIRE(e.floor() == floor);
        REQUIRE(std::string(e.what()).find("B*M*N*P_C") != std::string::npos);
    }
    REQUIRE_THROWS_AS(optimal_holding_interval(base, {3}, Scheme::PenaltySca, AoConfig{}), std::invalid_argument);
}

TEST_CASE("energy budget calibration")
{
    const Scenario sc = tiny(4, 5);
    const double e = calibrate_energy_budget(sc, 2, AoConfig{}, 1.5);
    REQUIRE(e > 1.5 * switching_energy(2, sc.elements(), sc.link));
    REQUIRE(e < 1.5 * switching_energy(2, sc.elements(), sc.link) * 1.01);
}

TEST_CASE("schemes by name")
{
    for (Scheme s : {Scheme::PenaltySca, Scheme::SdrGr, Scheme::Partial, Scheme::Unoptimized, Scheme::PassiveRis})
        REQUIRE(scheme_from_string(to_string(s)) == s);
    REQUIRE_THROWS(scheme_from_string("greedy"));
}

TEST_CASE("config: empty file gives the scenario defaults")
{
    std::istringstream is("");
    const ExperimentSpec s = parse_config(is);
    REQUIRE(s.link.p_s_dbw == 15.0);
    REQUIRE(s.link.g_s_db == 24.5);
    REQUIRE(s.link.g_u_db == 10.0);
    REQUIRE(s.link.sigma1_dbw == -110.0);
    REQUIRE(s.link.sigma2_dbw == -129.0);
    REQUIRE(s.link.p_c_dbm == -10.0);
    REQUIRE(s.link.eta == 1.25);
    REQUIRE(s.link.a_max_db == 10.0);
    REQUIRE(s.fading.rician_kappa == 3.0);
    REQUIRE(s.fading.sat_antennas == 4);
    REQUIRE(s.fading.rain_mu == -0.6);
    REQUIRE(s.fading.rain_sigma2 == 0.4);
    REQUIRE(s.scene.carrier_freq == 2e9);
    REQUIRE(s.scene.period == 100.0);
    REQUIRE(s.fading.ris_rows == 6);
    REQUIRE(s.fading.ris_cols == 6);
}

TEST_CASE("config: units and lists")
{
    std::istringstream is("# comment line\n"
                          "P_C = -40 dBW   # same as -10 dBm\n"
                          "P_S = 10 W\n"
                          "sigma2 = -99 dBm\n"
                          "carrier_freq = 2.4 GHz\n"
                          "ris_pos = 0, 0.1, 0.05 km\n"
                          "T = 20 s\n"
                          "M = 4\nN = 4\n"
                          "seeds = 3, 4, 5\n"
                          "K_candidates = 10, 5\n"
                          "baselines = penalty-sca, passive-ris\n"
                          "sweep = ris-user-distance\n"
                          "sweep_values = 50 m, 0.2 km\n"
                          "E_max = 0.2 J\n"
                          "initial_anomaly = 10 deg\n"
                          "ao_relative_tol = false\n");
    const ExperimentSpec s = parse_config(is);
    REQUIRE(s.link.p_c_dbm == Approx(-10.0));
    REQUIRE(s.link.p_s_dbw == Approx(10.0));
    REQUIRE(s.link.sigma2_dbw == Approx(-129.0));
    REQUIRE(s.scene.carrier_freq == Approx(2.4e9));
    REQUIRE(s.scene.ris_pos(1) == Approx(100.0));
    REQUIRE(s.scene.ris_pos(2) == Approx(50.0));
    REQUIRE(s.seeds == std::vector<std::uint64_t>{3, 4, 5});
    REQUIRE(s.k_candidates == std::vector<int>{10, 5});
    REQUIRE(s.baselines == std::vector<Scheme>{Scheme::PenaltySca, Scheme::PassiveRis});
    REQUIRE(s.sweep == SweepKind::RisUserDistance);
    REQUIRE(s.sweep_values == std::vector<double>{50.0, 200.0});
    REQUIRE(s.link.e_max == 0.2);
    REQUIRE(*s.scene.initial_anomaly == Approx(10.0 * kPi / 180.0));
    REQUIRE_FALSE(s.ao.relative_tol);

    std::istringstream cal("E_max = calibrate\ncalibration_K = 25\n");
    const ExperimentSpec c = parse_config(cal);
    REQUIRE(c.calibrate_e_max);
}

TEST_CASE("config: named validation errors")
{
    using K = ConfigError::Kind;
    REQUIRE(error_kind("L = 0\n") == K::Invalid);
    REQUIRE(error_kind("K_candidates = 7\n") == K::Divisibility);
    REQUIRE(error_kind("bogus = 1\n") == K::UnknownKey);
    REQUIRE(error_kind("P_S = 15 GHz\n") == K::BadUnit);
    REQUIRE(error_kind("G_U = 10 dBW\n") == K::BadUnit);
    REQUIRE(error_kind("M = 4 m\n") == K::BadUnit);
    REQUIRE(error_kind("M = four\n") == K::BadValue);
    REQUIRE(error_kind("baselines = \n") == K::BadValue);
    REQUIRE(error_kind("baselines = greedy\n") == K::BadValue);
    REQUIRE(error_kind("just text\n") == K::BadValue);
    REQUIRE(error_kind("seeds = 1\nT = 20\nsweep = holding-interval\nsweep_values = 3\n") == K::Divisibility);
    REQUIRE(error_kind("sweep = energy-budget\n") == K::Invalid);
    REQUIRE_THROWS_AS(load_config("/nonexistent/leoris.cfg"), ConfigError);

    ExperimentSpec s;
    s.baselines.clear();
    REQUIRE_THROWS_AS(s.validate(), ConfigError);
    ExperimentSpec t;
    t.seeds.clear();
    REQUIRE_THROWS_AS(t.validate(), ConfigError);
}

TEST_CASE("experiment: cartesian row count")
{
    ExperimentSpec s = tiny_spec();
    s.scene.period = 20;
    s.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    s.sweep = SweepKind::HoldingInterval;
    s.sweep_values = {1, 2, 5, 10};
    s.baselines = {Scheme::Partial, Scheme::Unoptimized};
    const ExperimentResult r = run_experiment(s);
    for (Scheme b : s.baselines)
    {
        int n = 0;
        for (const auto &row : r.runs)
            n += row.baseline == b;
        REQUIRE(n == 40);
        int a = 0;
        for (const auto &ag : r.aggregates)
            a += ag.baseline == b;
        REQUIRE(a == 4);
    }
}

TEST_CASE("experiment: order, reproducibility and thread independence")
{
    ExperimentSpec s = tiny_spec();
    s.sweep = SweepKind::HoldingInterval;
    s.sweep_values = {1, 2, 4};
    s.baselines = {Scheme::PenaltySca, Scheme::Partial};
    s.per_slot_rows = true;

    omp_set_num_threads(3);
    const ExperimentResult a = run_experiment(s);
    omp_set_num_threads(1);
    const ExperimentResult b = run_experiment(s);
    omp_set_num_threads(omp_get_num_procs());

    std::ostringstream oa, ob;
    write_csv(oa, a);
    write_csv(ob, b);
    REQUIRE(oa.str().rfind("# ", 0) == 0);
    REQUIRE(body(oa.str()) == body(ob.str()));

    REQUIRE(a.runs.size() == 12u);
    std::size_t i = 0;
    for (std::uint64_t seed : s.seeds)
        for (double v : s.sweep_values)
            for (Scheme sc : s.baselines)
            {
                REQUIRE(a.runs[i].seed == seed);
                REQUIRE(a.runs[i].sweep_value == v);
                REQUIRE(a.runs[i].baseline == sc);
                REQUIRE(a.runs[i].slot_rates.size() == 4u);
                ++i;
            }

    const std::string header = "kind,series,seed,sweep,sweep_value,baseline,K,B,slot,avg_rate,rate_std,energy,e_max,"
                               "feasible,ao_iterations,penalty_rounds,status";
    REQUIRE(body(oa.str()).rfind(header + "\n", 0) == 0);
    std::istringstream lines(body(oa.str()));
    std::string line;
    while (std::getline(lines, line))
        REQUIRE(std::count(line.begin(), line.end(), ',') == 16);

    const AggregateRow *ag = a.aggregate("tiny", Scheme::PenaltySca, 2.0);
    REQUIRE(ag != nullptr);
    REQUIRE(ag->runs == 2);
    const auto rows = a.select("tiny", Scheme::PenaltySca, 2.0);
    REQUIRE(ag->mean_rate == Approx(0.5 * (rows[0]->avg_rate + rows[1]->avg_rate)).epsilon(1e-15));

    std::ostringstream ts;
    write_timing_csv(ts, a);
    REQUIRE(body(ts.str()).rfind("series,seed,sweep_value,baseline,K,wall_seconds\n", 0) == 0);
}

TEST_CASE("experiment: feasible rows recheck independently")
{
    ExperimentSpec s = tiny_spec();
    s.calibrate_e_max = true;
    s.calibration_K = 2;
    s.k_candidates = {};
    s.baselines = {Scheme::PenaltySca, Scheme::PassiveRis, Scheme::Unoptimized};
    const ExperimentResult r = run_experiment(s);
    for (const auto &row : r.runs)
    {
        REQUIRE(row.status.rfind("ok", 0) == 0);
        REQUIRE(row.feasible);
        const Scenario sc = task_scenario(s, row.seed, row.sweep_value);
        LinkConstants lc = sc.link;
        lc.e_max = row.e_max;
        if (row.baseline == Scheme::PassiveRis)
            lc = passive_constants(lc);
        REQUIRE(oracle::energy(row.bundle, sc, lc) <= row.e_max);
        REQUIRE(!row.candidates.empty());
    }
}

TEST_CASE("experiment: solver aborts become status rows")
{
    ExperimentSpec s = tiny_spec();
    s.k_candidates = {1};
    s.link.e_max = 1e-9;
    s.baselines = {Scheme::PenaltySca, Scheme::Partial};
    const ExperimentResult r = run_experiment(s);
    REQUIRE(r.runs.size() == 4u);
    for (const auto &row : r.runs)
    {
        REQUIRE(row.status.rfind("budget-infeasible", 0) == 0);
        REQUIRE_FALSE(row.feasible);
    }
    REQUIRE(r.aggregates.front().status == "partial 0/2");
}

TEST_CASE("presets")
{
    const auto f3 = preset_fig3(Profile::Ci);
    REQUIRE(f3.size() == 1u);
    REQUIRE(f3[0].baselines.size() == 4u);
    REQUIRE(f3[0].scene.slot_count() == 20);
    REQUIRE(f3[0].seeds.size() == 3u);
    const auto f3p = preset_fig3(Profile::Paper);
    REQUIRE(f3p[0].fading.elements() == 36);
    REQUIRE(f3p[0].k_candidates == std::vector<int>{10});
    REQUIRE(f3p[0].seeds.size() == 10u);
    for (const auto &s : preset_fig4(Profile::Paper))
        REQUIRE_NOTHROW(s.validate());
    for (const auto &s : preset_fig5(Profile::Ci))
        REQUIRE_NOTHROW(s.validate());
    REQUIRE_THROWS(profile_from_string("huge"));
}
