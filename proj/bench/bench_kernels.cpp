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

// Serial reference vs OpenMP kernels, plus one full RIS SDP solve.

#include "leoris/channel.hpp"
#include "leoris/optimizer.hpp"
#include "leoris/scenario.hpp"
#include "leoris/sdp.hpp"
#include "leoris/sdp_kernels.hpp"

#include <benchmark/benchmark.h>

#include <limits>
#include <random>

using namespace leoris;

namespace
{

struct SchurInput
{
    RMat W;
    std::vector<kernels::SymConstraint> A;
};

// n x n scaling matrix with m dense constraints and n diagonal ones, like a lifted RIS problem.
SchurInput schur_input(int n, int m)
{
    std::mt19937_64 g(7);
    std::normal_distribution<double> nd;
    SchurInput in;
    const RMat R = RMat::NullaryExpr(n, n, [&] { return nd(g); });
    in.W = R * R.transpose() + n * RMat::Identity(n, n);
    for (int i = 0; i < m; ++i)
    {
        const RMat S = RMat::NullaryExpr(n, n, [&] { return nd(g); });
        kernels::SymConstraint c;
        c.dense = S + S.transpose();
        in.A.push_back(std::move(c));
    }
    for (int j = 0; j < n; ++j)
    {
        kernels::SymConstraint c;
        c.diagonal = true;
        c.diag = RVec::Unit(n, j);
        in.A.push_back(std::move(c));
    }
    return in;
}

void BM_SchurSerial(benchmark::State &st)
{
    const SchurInput in = schur_input(static_cast<int>(st.range(0)), 4);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::schur_complement_serial(in.W, in.A));
}

void BM_SchurParallel(benchmark::State &st)
{
    const SchurInput in = schur_input(static_cast<int>(st.range(0)), 4);
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::schur_complement(in.W, in.A));
}

BENCHMARK(BM_SchurSerial)->Arg(32)->Arg(72)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SchurParallel)->Arg(32)->Arg(72)->Unit(benchmark::kMicrosecond);

SceneConfig bench_scene()
{
    SceneConfig c;
    c.period = 100;
    return c;
}

void BM_ChannelsSerial(benchmark::State &st)
{
    const SceneConfig c = bench_scene();
    const FadingParams p;
    const auto geo = slot_geometries(c);
    for (auto _ : st)
        benchmark::DoNotOptimize(generate_channels_serial(c, p, geo, 1));
}

void BM_ChannelsParallel(benchmark::State &st)
{
    const SceneConfig c = bench_scene();
    const FadingParams p;
    const auto geo = slot_geometries(c);
    for (auto _ : st)
        benchmark::DoNotOptimize(generate_channels(c, p, geo, 1));
}

BENCHMARK(BM_ChannelsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChannelsParallel)->Unit(benchmark::kMillisecond);

// One penalty-round SDP of a 6x6 array over a 10-slot interval.
void BM_RisSdpSolve(benchmark::State &st)
{
    SceneConfig c;
    c.period = 10;
    const Scenario sc = make_scenario(c, FadingParams{}, LinkParams{}, 3);
    const SolutionBundle b = initial_bundle(sc, 10);
    const RisIntervalData d = ris_interval_data(sc, b, 0, std::numeric_limits<double>::infinity());
    std::vector<FpAux> aux;
    for (int k = 0; k < d.slots(); ++k)
    {
        const SlotTerms t = d.terms(k, b.theta[0]);
        aux.push_back(fp_update_aux(t.snr(), t.signal, t.noise));
    }
    const SdpProblem p = build_ris_sdp(d, aux, b.theta[0] * b.theta[0].adjoint(), 1e-3);
    for (auto _ : st)
        benchmark::DoNotOptimize(solve_sdp(p));
}

BENCHMARK(BM_RisSdpSolve)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
