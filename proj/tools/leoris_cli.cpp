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

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

using namespace leoris;

namespace
{

struct Common
{
    std::string config;
    std::string out;
    std::string profile = "ci";
    std::int64_t seed = -1;
};

void add_common(CLI::App *cmd, Common &c, bool with_config)
{
    if (with_config)
        cmd->add_option("--config", c.config, "key = value configuration file");
    cmd->add_option("--out", c.out, "CSV output path (stdout when empty)");
    cmd->add_option("--profile", c.profile, "defaults profile")->check(CLI::IsMember({"ci", "paper"}));
    cmd->add_option("--seed", c.seed, "run this single seed instead of the seed list")->check(CLI::NonNegativeNumber);
}

void apply_seed(std::vector<ExperimentSpec> &specs, const Common &c)
{
    if (c.seed >= 0)
        for (auto &s : specs)
            s.seeds = {static_cast<std::uint64_t>(c.seed)};
}

void emit(const ExperimentResult &res, const std::string &out)
{
    if (out.empty())
    {
        write_csv(std::cout, res);
        return;
    }
    std::ofstream os(out);
    if (!os)
        throw std::runtime_error("cannot write '" + out + "'");
    write_csv(os, res);
    std::ofstream ts(out + ".timing.csv");
    write_timing_csv(ts, res);
    std::cerr << "wrote " << out << " (" << res.runs.size() << " runs, " << res.aggregates.size()
              << " aggregates) and " << out << ".timing.csv\n";
}

ExperimentSpec load(const Common &c)
{
    const ExperimentSpec base = default_spec(profile_from_string(c.profile));
    return c.config.empty() ? base : load_config(c.config, base);
}

void write_trace(const ExperimentSpec &spec, const std::string &path)
{
    const Scenario sc = task_scenario(spec, spec.seeds.front(), spec.sweep_values.empty() ? 0.0 : spec.sweep_values.front());
    const int K = spec.k_candidates.empty() ? holding_interval_candidates(sc.slots()).back() : spec.k_candidates.front();
    const AoReport rep = alternating_optimize(sc, K, spec.ao);
    std::ofstream os(path);
    rep.write_trace_csv(os);
    std::ofstream rs(path + ".rounds.csv");
    rs << "index,round,rho,rank_residual,surrogate,rate_sum,status\n";
    for (std::size_t i = 0; i < rep.rounds.size(); ++i)
    {
        const auto &r = rep.rounds[i];
        rs << i << ',' << r.round << ',' << r.rho << ',' << r.rank_residual << ',' << r.surrogate << ',' << r.rate_sum
           << ',' << to_string(r.status) << '\n';
    }
    std::cerr << "wrote AO trace " << path << " (K=" << K << ", " << rep.iterations << " iterations)\n";
}

CMat random_hermitian(int n, std::mt19937_64 &g)
{
    std::normal_distribution<double> nd;
    CMat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = cplx(nd(g), nd(g));
    return 0.5 * (A + A.adjoint());
}

int run_oracles(std::uint64_t seed)
{
    std::mt19937_64 g(seed);
    int failures = 0;
    auto line = [&](const char *what, double got, double ref, bool ok) {
        std::printf("%-34s got %-14.9g oracle %-14.9g %s\n", what, got, ref, ok ? "ok" : "MISMATCH");
        failures += ok ? 0 : 1;
    };

    for (int n : {2, 5, 9, 16})
    {
        SdpProblem p;
        p.dim = n;
        p.objective = random_hermitian(n, g);
        p.constraints.push_back({CMat::Identity(n, n), Sense::Equal, 1.0});
        const SdpSolution s = solve_sdp(p);
        const double ref = oracle::lambda_max(p.objective);
        line(("sdp trace-one n=" + std::to_string(n)).c_str(), s.objective, ref,
             std::abs(s.objective - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
    }

    for (int i = 0; i < 3; ++i)
    {
        const CMat H_sr = random_hermitian(4, g).leftCols(4);
        CVec h = random_hermitian(4, g).col(0), theta = random_hermitian(4, g).col(1);
        const CVec w = optimize_transmit_bf(H_sr, h, theta);
        const CVec a = (h.conjugate().cwiseProduct(theta)).transpose() * H_sr;
        const CMat H1 = a.conjugate() * a.transpose();
        const double got = (w.adjoint() * H1 * w)(0, 0).real();
        const double ref = oracle::best_random_unit(H1, 1000, seed + i);
        line("transmit beam vs random unit", got, ref, got >= ref);
    }

    {
        SceneConfig scene;
        scene.period = 4;
        FadingParams fp;
        fp.ris_rows = fp.ris_cols = 2;
        fp.sat_antennas = 2;
        const Scenario sc = make_scenario(scene, fp, LinkParams{}, seed);
        const auto t0 = std::chrono::steady_clock::now();
        const AoReport rep = alternating_optimize(sc, 2, AoConfig{});
        const oracle::BruteForce bf = oracle::brute_force(sc, 2, 100000, 3600, seed);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        line("AO vs brute force (M=N=2, K=2)", rep.bundle.avg_rate, bf.avg_rate,
             rep.bundle.avg_rate >= 0.98 * bf.avg_rate);
        const double e_ref = oracle::energy(rep.bundle, sc, sc.link);
        line("energy recomputation", rep.bundle.energy, e_ref,
             std::abs(rep.bundle.energy - e_ref) <= 1e-12 * std::max(1.0, e_ref));
        const double r_ref = oracle::average_rate(rep.bundle, sc, sc.link);
        line("rate recomputation", rep.bundle.avg_rate, r_ref,
             std::abs(rep.bundle.avg_rate - r_ref) <= 1e-12 * std::max(1.0, r_ref));
        std::printf("(brute force and AO took %.1f s)\n", secs);
    }
    std::printf("%d mismatch(es)\n", failures);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Three-timescale active-RIS LEO downlink optimizer"};
    app.require_subcommand(1);

    Common run_c, fig_c[3], val_c;
    std::string trace;
    auto *run = app.add_subcommand("run", "run the experiment described by a config file");
    add_common(run, run_c, true);
    run->add_option("--trace", trace, "also write the AO convergence trace of the first seed to this CSV");

    const char *fig_names[3] = {"fig3", "fig4", "fig5"};
    const char *fig_help[3] = {"rates per slot for every scheme", "average rate versus holding interval",
                               "average rate versus aRIS-user distance, active and passive"};
    CLI::App *figs[3];
    for (int i = 0; i < 3; ++i)
    {
        figs[i] = app.add_subcommand(fig_names[i], fig_help[i]);
        add_common(figs[i], fig_c[i], false);
    }

    auto *validate = app.add_subcommand("validate", "parse and check a config file");
    validate->add_option("--config", val_c.config, "configuration file")->required();
    validate->add_option("--profile", val_c.profile, "defaults profile")->check(CLI::IsMember({"ci", "paper"}));

    std::int64_t oracle_seed = 1;
    auto *orc = app.add_subcommand("oracle", "compare solver outputs with brute-force references");
    orc->add_option("--seed", oracle_seed, "seed of the random instances")->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            ExperimentSpec spec = load(run_c);
            if (run_c.seed >= 0)
                spec.seeds = {static_cast<std::uint64_t>(run_c.seed)};
            const std::string out = run_c.out.empty() ? spec.output : run_c.out;
            emit(run_experiment(spec), out);
            if (!trace.empty())
                write_trace(spec, trace);
        }
        for (int i = 0; i < 3; ++i)
        {
            if (!*figs[i])
                continue;
            const Profile p = profile_from_string(fig_c[i].profile);
            std::vector<ExperimentSpec> specs =
                i == 0 ? preset_fig3(p) : (i == 1 ? preset_fig4(p) : preset_fig5(p));
            apply_seed(specs, fig_c[i]);
            emit(run_experiments(specs), fig_c[i].out);
        }
        if (*validate)
        {
            const ExperimentSpec spec = load(val_c);
            std::cout << "ok: T/delta = " << spec.scene.slot_count() << ", M x N = " << spec.fading.ris_rows << " x "
                      << spec.fading.ris_cols << ", L = " << spec.fading.sat_antennas << ", " << spec.seeds.size()
                      << " seed(s), " << spec.baselines.size() << " baseline(s), sweep " << to_string(spec.sweep)
                      << "\n";
        }
        if (*orc)
            return run_oracles(static_cast<std::uint64_t>(oracle_seed));
    }
    catch (const ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
