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

#include "leoris/timescale.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace leoris
{

std::string to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::PenaltySca:
        return "penalty-sca";
    case Scheme::SdrGr:
        return "sdr-gr";
    case Scheme::Partial:
        return "partial";
    case Scheme::Unoptimized:
        return "unoptimized";
    case Scheme::PassiveRis:
        return "passive-ris";
    }
    return "unknown";
}

Scheme scheme_from_string(const std::string &name)
{
    for (Scheme s : {Scheme::PenaltySca, Scheme::SdrGr, Scheme::Partial, Scheme::Unoptimized, Scheme::PassiveRis})
        if (to_string(s) == name)
            return s;
    throw std::invalid_argument("unknown baseline '" + name + "'");
}

SchemeResult run_scheme(const Scenario &sc, int K, Scheme scheme, const AoConfig &cfg)
{
    SchemeResult out;
    switch (scheme)
    {
    case Scheme::PenaltySca:
    case Scheme::SdrGr:
    {
        AoConfig c = cfg;
        c.ris_method = scheme == Scheme::PenaltySca ? RisMethod::PenaltySca : RisMethod::SdrGr;
        const AoReport rep = alternating_optimize(sc, K, c);
        out.bundle = rep.bundle;
        out.ao_iterations = rep.iterations;
        out.penalty_rounds = rep.penalty_rounds;
        out.converged = rep.converged;
        break;
    }
    case Scheme::PassiveRis:
    {
        const Scenario passive = with_link(sc, passive_constants(sc.link));
        AoConfig c = cfg;
        c.ris_method = RisMethod::PenaltySca;
        const AoReport rep = alternating_optimize(passive, K, c);
        out.bundle = rep.bundle;
        out.ao_iterations = rep.iterations;
        out.penalty_rounds = rep.penalty_rounds;
        out.converged = rep.converged;
        break;
    }
    case Scheme::Partial:
        out.bundle = partial_baseline(sc, K);
        break;
    case Scheme::Unoptimized:
        out.bundle = unoptimized_baseline(sc, K);
        break;
    }
    return out;
}

std::vector<int> holding_interval_candidates(int slots)
{
    if (slots < 1)
        throw std::invalid_argument("holding_interval_candidates: slot count must be positive");
    std::vector<int> out;
    for (int k = slots; k >= 1; --k)
        if (slots % k == 0)
            out.push_back(k);
    return out;
}

namespace
{

std::string format_floor(double floor)
{
    std::ostringstream os;
    os << "energy budget infeasible: E_max is below the minimal switching energy B*M*N*P_C = " << floor
       << " J at K = T/delta";
    return os.str();
}

} // namespace

BudgetInfeasible::BudgetInfeasible(double floor) : std::runtime_error(format_floor(floor)), floor_(floor) {}

HoldingSearch optimal_holding_interval(const Scenario &sc, std::vector<int> candidates, Scheme scheme,
                                       const AoConfig &cfg)
{
    const int slots = sc.slots();
    if (candidates.empty())
        candidates = holding_interval_candidates(slots);
    for (int K : candidates)
        if (K < 1 || slots % K != 0)
            throw std::invalid_argument("holding interval candidate " + std::to_string(K) +
                                        " does not divide T/delta = " + std::to_string(slots));
    std::sort(candidates.begin(), candidates.end(), std::greater<>());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const double floor = switching_energy(1, sc.elements(), sc.link);
    if (floor > sc.link.e_max)
        throw BudgetInfeasible(floor);

    HoldingSearch hs;
    double best_rate = -std::numeric_limits<double>::infinity();
    for (int K : candidates)
    {
        const int B = slots / K;
        if (switching_energy(B, sc.elements(), sc.link) > sc.link.e_max)
        {
            // Switching energy grows as K shrinks, so every later candidate fails as well.
            hs.stopped_at_K = K;
            break;
        }
        const SchemeResult r = run_scheme(sc, K, scheme, cfg);
        CandidateRecord rec;
        rec.K = K;
        rec.B = B;
        rec.bundle = r.bundle;
        rec.avg_rate = r.bundle.avg_rate;
        // Energy as evaluated under the scheme's own constants (passive drops amplification).
        rec.energy = r.bundle.energy;
        rec.feasible = rec.energy <= sc.link.e_max;
        rec.ao_iterations = r.ao_iterations;
        rec.penalty_rounds = r.penalty_rounds;
        if (rec.feasible && rec.avg_rate > best_rate)
        {
            best_rate = rec.avg_rate;
            hs.best_K = K;
            hs.best = rec.bundle;
        }
        hs.records.push_back(std::move(rec));
    }
    if (hs.best_K == 0)
        throw BudgetInfeasible(floor);
    return hs;
}

double calibrate_energy_budget(const Scenario &sc, int calibration_K, const AoConfig &cfg, double factor)
{
    if (!(factor > 0.0))
        throw std::invalid_argument("calibration factor must be positive");
    LinkConstants lc = sc.link;
    lc.e_max = std::numeric_limits<double>::infinity();
    const Scenario free = with_link(sc, lc);
    AoConfig c = cfg;
    c.ris_method = RisMethod::PenaltySca;
    const AoReport rep = alternating_optimize(free, calibration_K, c);
    return factor * rep.bundle.energy;
}

} // namespace leoris
