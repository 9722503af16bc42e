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

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace leoris
{

namespace
{

RMat lift_cross(const Vec3 &l)
{
    RMat A = RMat::Zero(4, 4);
    A.block<3, 1>(0, 3) = 0.5 * l;
    A.block<1, 3>(3, 0) = 0.5 * l.transpose();
    return A;
}

RMat lift_product(const Vec3 &a, const Vec3 &b)
{
    RMat A = RMat::Zero(4, 4);
    A.topLeftCorner<3, 3>() = 0.5 * (a * b.transpose() + b * a.transpose());
    return A;
}

double tr(const RMat &A, const RMat &R)
{
    return (A.array() * R.array()).sum();
}

RMat lift(const Vec3 &r)
{
    RVec v(4);
    v << r, 1.0;
    return v * v.transpose();
}

std::vector<FpAux> lifted_aux(const OrientationData &d, const RMat &R, std::vector<double> *t_out)
{
    const double f_ru = tr(lift_cross(d.l_ru), R);
    std::vector<FpAux> aux;
    for (std::size_t n = 0; n < d.l_sr.size(); ++n)
    {
        const double t = std::max(0.0, tr(lift_product(d.l_sr[n], d.l_ru), R));
        const double sig = d.c8[n] * std::sqrt(t);
        const double den = d.c9sq[n] * std::max(0.0, f_ru) + d.sigma2_sq;
        aux.push_back(fp_update_aux(sig * sig / den, sig, den));
        if (t_out)
            t_out->push_back(t);
    }
    return aux;
}

double lifted_rate(const std::vector<FpAux> &aux)
{
    double r = 0.0;
    for (const auto &a : aux)
        r += std::log2(1.0 + a.v);
    return r / static_cast<double>(aux.size());
}

double rank_residual(const RMat &R)
{
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (R + R.transpose()), Eigen::EigenvaluesOnly);
    const RVec ev = es.eigenvalues().cwiseMax(0.0);
    const double nuc = ev.sum();
    return nuc > 0.0 ? (nuc - ev.maxCoeff()) / nuc : 0.0;
}

} // namespace

OrientationData orientation_data(const Scenario &sc, const SolutionBundle &bundle)
{
    const LinkConstants &lc = sc.link;
    OrientationData d;
    d.sigma2_sq = lc.sigma2_sq;
    d.l_ru = sc.geometry.front().l_ru;
    double fixed_energy = switching_energy(bundle.B, sc.elements(), lc);
    for (int n = 0; n < bundle.slots(); ++n)
    {
        const CVec &theta = bundle.theta[bundle.interval_of(n)];
        const auto &ch = sc.channels[n];
        const CVec hw = ch.H_sr * bundle.w[n];
        const cplx cascade = ch.H_ru.conjugate().cwiseProduct(theta).cwiseProduct(hw).sum();
        d.l_sr.push_back(sc.geometry[n].l_sr);
        d.c8.push_back(lc.c1 * std::abs(cascade));
        d.c9sq.push_back(lc.c2 * lc.c2 * lc.sigma1_sq * ch.H_ru.cwiseProduct(theta).squaredNorm());
        d.e6.push_back(lc.eta * lc.slot_len * lc.c1 * lc.c1 * theta.cwiseProduct(hw).squaredNorm());
        fixed_energy += lc.eta * lc.slot_len * theta.squaredNorm() * lc.sigma1_sq;
    }
    d.budget = lc.e_max - fixed_energy;
    return d;
}

SdpProblem build_orientation_sdp(const OrientationData &data, std::span<const FpAux> aux, const RMat &Rq,
                                 double rho)
{
    const std::size_t slots = data.l_sr.size();
    if (aux.size() != slots)
        throw std::invalid_argument("build_orientation_sdp: one auxiliary pair per slot expected");

    const RMat A5 = lift_cross(data.l_ru);
    RMat G = RMat::Zero(4, 4);
    for (std::size_t n = 0; n < slots; ++n)
    {
        const RMat A4 = lift_product(data.l_sr[n], data.l_ru);
        const double t = std::max(0.0, tr(A4, Rq));
        const double mu2 = std::norm(aux[n].mu);
        const double c8 = data.c8[n];
        const double lin = t > 0.0 ? std::abs(aux[n].mu) * std::sqrt(1.0 + aux[n].v) * c8 / std::sqrt(t)
                                   : (1.0 + aux[n].v) * c8 * c8 / data.sigma2_sq;
        G += (lin - mu2 * c8 * c8) * A4;
        G -= mu2 * data.c9sq[n] * A5;
    }
    G /= std::numbers::ln2;
    Eigen::SelfAdjointEigenSolver<RMat> es(G, Eigen::EigenvaluesOnly);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    if (scale > 0.0)
        G /= scale;

    if (rho > 0.0)
    {
        Eigen::SelfAdjointEigenSolver<RMat> eq(0.5 * (Rq + Rq.transpose()));
        const RVec u = eq.eigenvectors().col(3);
        G += rho * (u * u.transpose() - RMat::Identity(4, 4));
    }

    auto as_c = [](const RMat &M) { return CMat(M.cast<cplx>()); };

    SdpProblem p;
    p.dim = 4;
    p.objective = as_c(G);
    p.constraints.push_back({CMat::Identity(4, 4), Sense::Equal, 2.0});
    p.constraints.push_back({as_c(A5), Sense::GreaterEqual, 0.0});
    p.constraints.push_back({as_c(A5), Sense::LessEqual, 1.0});
    RMat energy = RMat::Zero(4, 4);
    double energy_cap = 1.0;
    for (std::size_t n = 0; n < slots; ++n)
    {
        const RMat A6 = lift_cross(data.l_sr[n]);
        p.constraints.push_back({as_c(A6), Sense::GreaterEqual, 0.0});
        p.constraints.push_back({as_c(A6), Sense::LessEqual, 1.0});
        energy += data.e6[n] * A6;
        energy_cap += 2.0 * data.e6[n];
    }
    const double rhs = std::isfinite(data.budget) ? std::min(data.budget, energy_cap) : energy_cap;
    p.constraints.push_back({as_c(energy), Sense::LessEqual, rhs});
    CMat E44 = CMat::Zero(4, 4);
    E44(3, 3) = 1.0;
    p.constraints.push_back({E44, Sense::Equal, 1.0});
    return p;
}

Vec3 recover_direction(const RMat &R)
{
    if (R.rows() != 4 || R.cols() != 4)
        throw std::invalid_argument("recover_direction: expected a 4x4 matrix");
    if (R(3, 3) < 0.5)
        throw std::domain_error("recover_direction: R_44 below 0.5, lifting degenerate");
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (R + R.transpose()));
    RVec u = es.eigenvectors().col(3);
    if (std::abs(u(3)) < 1e-12)
        throw std::domain_error("recover_direction: principal eigenvector has no homogeneous component");
    u /= u(3);
    const Vec3 r = u.head<3>();
    if (!(r.norm() > 0.0))
        throw std::domain_error("recover_direction: zero direction");
    return r.normalized();
}

Vec3 project_front(const Vec3 &r, const std::vector<Vec3> &l_sr, const Vec3 &l_ru, bool *projected)
{
    auto ok = [&](const Vec3 &x)
    {
        if (x.dot(l_ru) < 0.0)
            return false;
        for (const auto &l : l_sr)
            if (x.dot(l) < 0.0)
                return false;
        return true;
    };
    if (projected)
        *projected = false;
    if (ok(r))
        return r;

    Vec3 mean = Vec3::Zero();
    for (const auto &l : l_sr)
        mean += l;
    const Vec3 bis = (mean.normalized() + l_ru).normalized();
    if (projected)
        *projected = true;
    if (!ok(bis))
        return bis;

    // The feasible part of the chord r -> bis is an interval ending at bis.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 60; ++i)
    {
        const double mid = 0.5 * (lo + hi);
        if (ok(((1.0 - mid) * r + mid * bis).normalized()))
            hi = mid;
        else
            lo = mid;
    }
    return ((1.0 - hi) * r + hi * bis).normalized();
}

Vec3 bisector_orientation(const Scenario &sc)
{
    Vec3 mean = Vec3::Zero();
    for (const auto &g : sc.geometry)
        mean += g.l_sr;
    return (mean.normalized() + sc.geometry.front().l_ru).normalized();
}

OrientationResult optimize_orientation(const Scenario &sc, const SolutionBundle &bundle, const AoConfig &cfg)
{
    OrientationResult res;
    res.r = bundle.r;
    SolutionBundle work = bundle;
    evaluate_bundle(sc, work);
    res.avg_rate = work.avg_rate;

    // The lifting is exact only for a linear radiation pattern.
    if (sc.link.beta != 1.0)
        return res;

    const OrientationData data = orientation_data(sc, bundle);
    if (std::isfinite(data.budget) && data.budget < 0.0)
        return res;

    RMat Rq = lift(bundle.r);
    double rho = cfg.rho0;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int q = 0; q < cfg.max_penalty_rounds; ++q)
    {
        const std::vector<FpAux> aux = lifted_aux(data, Rq, nullptr);
        const SdpSolution sol = solve_sdp(build_orientation_sdp(data, aux, Rq, rho), cfg.sdp_tol, cfg.sdp_max_iter);

        PenaltyRound pr;
        pr.round = q;
        pr.rho = rho;
        pr.surrogate = lifted_rate(aux);
        pr.status = sol.status;
        if (sol.status == SdpStatus::Infeasible || sol.X(3, 3).real() < 0.5)
        {
            pr.rate_sum = res.avg_rate;
            res.trace.push_back(pr);
            break;
        }
        const RMat R = sol.X.real();
        pr.rank_residual = rank_residual(R);

        bool projected = false;
        const Vec3 r = project_front(recover_direction(R), data.l_sr, data.l_ru, &projected);
        work.r = r;
        evaluate_bundle(sc, work);
        pr.rate_sum = work.avg_rate;
        if (work.avg_rate > res.avg_rate && work.energy <= sc.link.e_max)
        {
            res.avg_rate = work.avg_rate;
            res.r = r;
            res.projected = projected;
        }
        res.trace.push_back(pr);
        Rq = R;

        const double obj = lifted_rate(lifted_aux(data, R, nullptr));
        if (pr.rank_residual <= cfg.rank_tol && objective_settled(prev, obj, cfg))
            break;
        prev = obj;
        rho = std::min(rho * cfg.rho_step, cfg.rho_max);
    }
    return res;
}

} // namespace leoris
