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

#include "leoris/linalg.hpp"
#include "leoris/optimizer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace leoris
{

FpAux fp_update_aux(double gamma, cplx signal, double denom)
{
    if (!(denom > 0.0))
        throw std::domain_error("fp_update_aux: denominator must be positive");
    if (gamma < 0.0)
        throw std::domain_error("fp_update_aux: negative SNR");
    FpAux a;
    a.v = gamma;
    a.mu = std::sqrt(1.0 + a.v) * signal / (std::norm(signal) + denom);
    return a;
}

double fp_surrogate(std::span<const SlotTerms> terms, std::span<const FpAux> aux)
{
    if (terms.size() != aux.size())
        throw std::invalid_argument("fp_surrogate: size mismatch");
    double f = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i)
    {
        const cplx s = terms[i].signal;
        const double d = terms[i].noise;
        const double v = aux[i].v;
        const cplx mu = aux[i].mu;
        const double quad = -v + 2.0 * std::sqrt(1.0 + v) * std::real(std::conj(mu) * s) - std::norm(mu) * (std::norm(s) + d);
        f += std::log2(1.0 + v) + quad / std::numbers::ln2;
    }
    return f;
}

SlotTerms RisIntervalData::terms(int k, const CVec &theta) const
{
    SlotTerms t;
    t.signal = c4[k] * g[k].cwiseProduct(theta).sum();
    t.noise = sigma2_sq + noise_w[k].dot(theta.cwiseAbs2());
    return t;
}

double RisIntervalData::rate_sum(const CVec &theta) const
{
    double r = 0.0;
    for (int k = 0; k < slots(); ++k)
        r += std::log2(1.0 + terms(k, theta).snr());
    return r;
}

RVec RisIntervalData::energy_diag() const
{
    RVec e = RVec::Zero(elements());
    for (const auto &w : energy_w)
        e += w;
    return e;
}

double RisIntervalData::energy(const CVec &theta) const
{
    return energy_diag().dot(theta.cwiseAbs2());
}

RisIntervalData ris_interval_data(const Scenario &sc, const SolutionBundle &bundle, int b, double budget)
{
    const LinkConstants &lc = sc.link;
    RisIntervalData d;
    d.sigma2_sq = lc.sigma2_sq;
    d.a_max = lc.a_max;
    d.budget = budget;
    for (int k = 0; k < bundle.K; ++k)
    {
        const int n = b * bundle.K + k;
        const auto &ch = sc.channels[n];
        const auto &geo = sc.geometry[n];
        const double f_sr = radiation_pattern(bundle.r, geo.l_sr, lc.beta);
        const double f_ru = radiation_pattern(bundle.r, geo.l_ru, lc.beta);
        const CVec hw = ch.H_sr * bundle.w[n];
        const bool front = f_sr > 0.0 && f_ru > 0.0;

        d.g.push_back(ch.H_ru.conjugate().cwiseProduct(hw));
        d.c4.push_back(front ? lc.c1 * std::sqrt(f_sr * f_ru) : 0.0);
        d.noise_w.push_back(front ? RVec(lc.c2 * lc.c2 * f_ru * lc.sigma1_sq * ch.H_ru.cwiseAbs2())
                                  : RVec::Zero(hw.size()));
        d.energy_w.push_back(lc.eta * lc.slot_len *
                             (lc.c1 * lc.c1 * f_sr * hw.cwiseAbs2().array() + lc.sigma1_sq).matrix());
    }
    return d;
}

namespace
{

// FP auxiliaries evaluated on the lifted iterate V.
std::vector<FpAux> lifted_aux(const RisIntervalData &data, const CMat &V, std::vector<double> *t_out)
{
    std::vector<FpAux> aux;
    const RVec diagV = V.diagonal().real();
    for (int k = 0; k < data.slots(); ++k)
    {
        const double t = std::max(0.0, (data.g[k].transpose() * V * data.g[k].conjugate())(0).real());
        const double sig = data.c4[k] * std::sqrt(t);
        const double d = data.sigma2_sq + data.noise_w[k].dot(diagV);
        aux.push_back(fp_update_aux(sig * sig / d, sig, d));
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
    return r;
}

double rank_residual(const CMat &V)
{
    const RVec ev = hermitian_eig(0.5 * (V + V.adjoint())).values;
    const double nuc = ev.cwiseMax(0.0).sum();
    if (nuc <= 0.0)
        return 0.0;
    return (nuc - std::max(ev(0), 0.0)) / nuc;
}

CVec fit_budget(const RisIntervalData &data, CVec theta)
{
    const double e = data.energy(theta);
    if (e > data.budget && e > 0.0)
        theta *= std::sqrt(data.budget / e);
    return theta;
}

// Uniform amplitude start inside the constraints when no usable iterate exists.
CVec uniform_start(const RisIntervalData &data)
{
    const double s = data.energy_diag().sum();
    double a = data.a_max;
    if (s > 0.0 && std::isfinite(data.budget))
        a = std::min(a, std::sqrt(0.5 * data.budget / s));
    return CVec::Constant(data.elements(), cplx(a, 0.0));
}

double finite_energy_rhs(const RisIntervalData &data)
{
    const double cap = 2.0 * data.a_max * data.a_max * data.energy_diag().sum() + 1.0;
    return std::isfinite(data.budget) ? std::min(data.budget, cap) : cap;
}

bool budget_exhausted(const RisIntervalData &data)
{
    return data.budget <= 0.0;
}

} // namespace

SdpProblem build_ris_sdp(const RisIntervalData &data, std::span<const FpAux> aux, const CMat &Vq, double rho)
{
    const int n = data.elements();
    if (static_cast<int>(aux.size()) != data.slots())
        throw std::invalid_argument("build_ris_sdp: one auxiliary pair per slot expected");

    CMat G = CMat::Zero(n, n);
    RVec noise_diag = RVec::Zero(n);
    for (int k = 0; k < data.slots(); ++k)
    {
        const double c4 = data.c4[k];
        const double mu2 = std::norm(aux[k].mu);
        if (c4 > 0.0)
        {
            const double t = std::max(0.0, (data.g[k].transpose() * Vq * data.g[k].conjugate())(0).real());
            // Gradient of c4 sqrt(Tr(A1 V)) at Vq; its t -> 0 limit when Vq carries no signal.
            const double lin = t > 0.0 ? std::abs(aux[k].mu) * std::sqrt(1.0 + aux[k].v) * c4 / std::sqrt(t)
                                       : (1.0 + aux[k].v) * c4 * c4 / data.sigma2_sq;
            const double coef = lin - mu2 * c4 * c4;
            G += coef * (data.g[k].conjugate() * data.g[k].transpose());
        }
        noise_diag += mu2 * data.noise_w[k];
    }
    G.diagonal() -= noise_diag.cast<cplx>();
    G /= std::numbers::ln2;
    G = 0.5 * (G + G.adjoint()).eval();

    const double scale = G.cwiseAbs().maxCoeff() > 0.0 ? spectral_norm(G) : 0.0;
    if (scale > 0.0)
        G /= scale;

    if (rho > 0.0)
    {
        const HermitianEigen eig = hermitian_eig(0.5 * (Vq + Vq.adjoint()));
        const CVec u = eig.vectors.col(0);
        G += rho * (u * u.adjoint() - CMat::Identity(n, n));
    }

    SdpProblem p;
    p.dim = n;
    p.objective = G;
    p.constraints.push_back({CMat(data.energy_diag().cast<cplx>().asDiagonal()), Sense::LessEqual,
                             finite_energy_rhs(data)});
    p.diag_upper = RVec::Constant(n, data.a_max * data.a_max);
    return p;
}

CVec recover_rank_one(const CMat &V, double a_max)
{
    const HermitianEigen eig = hermitian_eig(0.5 * (V + V.adjoint()));
    const double lam = std::max(0.0, eig.values(0));
    CVec theta = std::sqrt(lam) * eig.vectors.col(0);
    for (Eigen::Index i = 0; i < theta.size(); ++i)
    {
        const double a = std::abs(theta(i));
        if (a > a_max)
            theta(i) *= a_max / a;
    }
    const double a0 = std::abs(theta(0));
    if (a0 > 0.0)
        theta *= std::conj(theta(0)) / a0;
    return theta;
}

namespace
{

// Shared SCA loop. Without the penalty a single relaxed solve is made.
RisResult sca_loop(const RisIntervalData &data, const CVec &theta0, const AoConfig &cfg, bool penalty)
{
    RisResult res;
    const int n = data.elements();
    if (budget_exhausted(data))
    {
        res.theta = CVec::Zero(n);
        res.rate_sum = data.rate_sum(res.theta);
        res.V = CMat::Zero(n, n);
        return res;
    }

    CVec theta = fit_budget(data, theta0);
    if (theta.cwiseAbs().maxCoeff() == 0.0)
        theta = fit_budget(data, uniform_start(data));
    res.theta = theta;
    res.rate_sum = data.rate_sum(theta);

    // Linearize first at a scaled identity inside C4/C5, not at theta0 theta0^H;
    // theta0 only serves as the incumbent.
    double a2 = data.a_max * data.a_max;
    const double s = data.energy_diag().sum();
    if (s > 0.0 && std::isfinite(data.budget))
        a2 = std::min(a2, data.budget / s);
    CMat Vq = a2 * CMat::Identity(n, n);
    double rho = penalty ? cfg.rho0 : 0.0;
    double prev = std::numeric_limits<double>::quiet_NaN();

    const int rounds = penalty ? cfg.max_penalty_rounds : 1;
    for (int q = 0; q < rounds; ++q)
    {
        const std::vector<FpAux> aux = lifted_aux(data, Vq, nullptr);
        const SdpProblem prob = build_ris_sdp(data, aux, Vq, rho);
        const SdpSolution sol = solve_sdp(prob, cfg.sdp_tol, cfg.sdp_max_iter);

        PenaltyRound pr;
        pr.round = q;
        pr.rho = rho;
        pr.surrogate = lifted_rate(aux);
        pr.status = sol.status;
        if (sol.status == SdpStatus::Infeasible)
        {
            pr.rank_residual = rank_residual(Vq);
            pr.rate_sum = res.rate_sum;
            res.trace.push_back(pr);
            break;
        }

        const CMat V = 0.5 * (sol.X + sol.X.adjoint());
        pr.rank_residual = rank_residual(V);

        const CVec cand = fit_budget(data, recover_rank_one(V, data.a_max));
        pr.rate_sum = data.rate_sum(cand);
        if (penalty && pr.rate_sum > res.rate_sum)
        {
            res.rate_sum = pr.rate_sum;
            res.theta = cand;
        }
        res.trace.push_back(pr);
        res.V = V;
        Vq = V;

        const double obj = lifted_rate(lifted_aux(data, V, nullptr));
        const bool rank_ok = !penalty || pr.rank_residual <= cfg.rank_tol;
        if (rank_ok && objective_settled(prev, obj, cfg))
            break;
        prev = obj;
        if (penalty)
            rho = std::min(rho * cfg.rho_step, cfg.rho_max);
    }
    if (res.V.size() == 0)
        res.V = Vq;
    return res;
}

} // namespace

RisResult optimize_ris_interval(const RisIntervalData &data, const CVec &theta0, const AoConfig &cfg)
{
    return sca_loop(data, theta0, cfg, true);
}

CVec gaussian_randomization(const CMat &V, const RisIntervalData &data, int n_samples, const CounterRng &rng,
                            std::uint64_t slot)
{
    if (n_samples < 1)
        throw std::invalid_argument("gaussian_randomization: n_samples must be >= 1");
    const int n = data.elements();
    const HermitianEigen eig = hermitian_eig(0.5 * (V + V.adjoint()));
    const CMat root = eig.vectors * eig.values.cwiseMax(0.0).cwiseSqrt().cast<cplx>().asDiagonal();
    const RVec ediag = data.energy_diag();

    CVec best;
    double best_rate = -1.0;
    for (int s = 0; s < n_samples; ++s)
    {
        CVec z(n);
        for (int i = 0; i < n; ++i)
        {
            const auto [re, im] = rng.complex_normal(RngStream::GaussianRandomization, slot,
                                                     static_cast<std::uint64_t>(s) * n + i);
            z(i) = cplx(re, im);
        }
        CVec theta = root * z;
        const double amax = theta.cwiseAbs().maxCoeff();
        if (!(amax > 0.0))
            continue;
        double alpha = data.a_max / amax;
        const double e = ediag.dot(theta.cwiseAbs2());
        if (e > 0.0 && std::isfinite(data.budget))
            alpha = std::min(alpha, std::sqrt(std::max(0.0, data.budget) / e));
        theta *= alpha;
        const double r = data.rate_sum(theta);
        if (r > best_rate)
        {
            best_rate = r;
            best = theta;
        }
    }
    if (best_rate < 0.0)
        return fit_budget(data, recover_rank_one(V, data.a_max));
    return best;
}

RisResult sdr_gr_interval(const RisIntervalData &data, const CVec &theta0, const AoConfig &cfg,
                          const CounterRng &rng, std::uint64_t slot)
{
    RisResult res = sca_loop(data, theta0, cfg, false);
    if (budget_exhausted(data))
        return res;
    res.theta = gaussian_randomization(res.V, data, cfg.gr_samples, rng, slot);
    res.rate_sum = data.rate_sum(res.theta);
    return res;
}

} // namespace leoris
