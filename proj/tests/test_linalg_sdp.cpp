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
#include "leoris/oracles.hpp"
#include "leoris/sdp.hpp"
#include "leoris/sdp_kernels.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace leoris;
using Catch::Approx;

namespace
{

CMat random_hermitian(int n, std::mt19937_64 &g)
{
    std::normal_distribution<double> nd;
    CMat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            A(i, j) = cplx(nd(g), nd(g));
    return 0.5 * (A + A.adjoint());
}

CMat random_psd(int n, std::mt19937_64 &g)
{
    const CMat A = random_hermitian(n, g);
    return A * A.adjoint();
}

} // namespace

TEST_CASE("Hermitian eigen-decomposition")
{
    const HermitianEigen id = hermitian_eig(CMat::Identity(5, 5));
    for (int i = 0; i < 5; ++i)
        REQUIRE(id.values(i) == Approx(1.0).epsilon(1e-14));

    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 1.0;
    const HermitianEigen e = hermitian_eig(d);
    REQUIRE(e.values(0) == Approx(2.0));
    REQUIRE(e.values(1) == Approx(1.0));
    REQUIRE(std::abs(e.vectors(0, 0)) == Approx(1.0).epsilon(1e-14));

    std::mt19937_64 g(1);
    for (int t = 0; t < 50; ++t)
    {
        const CMat A = random_hermitian(2, g);
        const auto ref = oracle::hermitian2x2_eigs(A);
        const HermitianEigen h = hermitian_eig(A);
        REQUIRE(h.values(0) == Approx(ref[1]).margin(1e-10));
        REQUIRE(h.values(1) == Approx(ref[0]).margin(1e-10));
    }
    for (int n : {3, 7, 16})
    {
        const CMat A = random_hermitian(n, g);
        const HermitianEigen h = hermitian_eig(A);
        const CMat rec = h.vectors * h.values.cast<cplx>().asDiagonal() * h.vectors.adjoint();
        REQUIRE((A - rec).norm() <= 1e-9 * A.norm());
        REQUIRE(h.values(0) == Approx(oracle::lambda_max(A)).epsilon(1e-10));
    }
    CMat bad = CMat::Zero(2, 2);
    bad(0, 1) = 1.0;
    REQUIRE_THROWS_AS(hermitian_eig(bad), std::invalid_argument);
}

TEST_CASE("real embedding")
{
    std::mt19937_64 g(2);
    const RMat S = random_hermitian(3, g).real();
    const RMat E = complex_to_real_embed(S.cast<cplx>());
    REQUIRE((E.topLeftCorner(3, 3) - S).norm() == 0.0);
    REQUIRE((E.bottomRightCorner(3, 3) - S).norm() == 0.0);
    REQUIRE(E.topRightCorner(3, 3).norm() == 0.0);

    CMat J(2, 2);
    J << 0.0, cplx(0, 1), cplx(0, -1), 0.0;
    Eigen::SelfAdjointEigenSolver<RMat> es(complex_to_real_embed(J));
    REQUIRE(es.eigenvalues()(0) == Approx(-1.0));
    REQUIRE(es.eigenvalues()(1) == Approx(-1.0));
    REQUIRE(es.eigenvalues()(2) == Approx(1.0));
    REQUIRE(es.eigenvalues()(3) == Approx(1.0));

    const CMat H = random_hermitian(6, g);
    REQUIRE(complex_to_real_embed(H).trace() == Approx(2.0 * H.trace().real()).epsilon(1e-13));
    REQUIRE((real_to_complex(complex_to_real_embed(H)) - H).norm() <= 1e-14 * H.norm());
}

TEST_CASE("nuclear and spectral norms")
{
    std::mt19937_64 g(3);
    CVec v(3);
    v << 1.0, cplx(0.0, 1.0), 1.0;
    const CMat R1 = v * v.adjoint();
    REQUIRE(nuclear_norm(R1) == Approx(3.0).epsilon(1e-12));
    REQUIRE(spectral_norm(R1) == Approx(3.0).epsilon(1e-12));
    REQUIRE(nuclear_norm(CMat::Identity(4, 4)) == Approx(4.0));
    REQUIRE(spectral_norm(CMat::Identity(4, 4)) == Approx(1.0));
    const CMat P = random_psd(5, g);
    REQUIRE(nuclear_norm(P) == Approx(P.trace().real()).margin(1e-10));
}

TEST_CASE("SDP: diagonal bounds")
{
    SdpProblem p;
    p.dim = 2;
    p.objective = CMat::Identity(2, 2);
    p.diag_upper = RVec::Ones(2);
    const SdpSolution s = solve_sdp(p);
    REQUIRE(s.status == SdpStatus::Optimal);
    REQUIRE(s.objective == Approx(2.0).epsilon(1e-7));
    REQUIRE((s.X - CMat::Identity(2, 2)).norm() < 1e-6);
}

TEST_CASE("SDP: trace-one problems match lambda_max")
{
    std::mt19937_64 g(4);
    for (int n = 1; n <= 12; ++n)
    {
        SdpProblem p;
        p.dim = n;
        p.objective = random_hermitian(n, g);
        p.constraints.push_back({CMat::Identity(n, n), Sense::Equal, 1.0});
        const SdpSolution s = solve_sdp(p, 1e-9, 200);
        REQUIRE(s.status == SdpStatus::Optimal);
        const double ref = oracle::lambda_max(p.objective);
        REQUIRE(std::abs(s.objective - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
        REQUIRE(s.kkt.max() <= 1e-7);
    }
}

TEST_CASE("SDP: real data skips the embedding and agrees with it")
{
    std::mt19937_64 g(5);
    for (int t = 0; t < 5; ++t)
    {
        const int n = 4 + t;
        SdpProblem p;
        p.dim = n;
        p.objective = random_hermitian(n, g).real().cast<cplx>();
        p.constraints.push_back({CMat::Identity(n, n), Sense::Equal, 1.0});
        const SdpSolution s = solve_sdp(p);
        REQUIRE(s.objective == Approx(oracle::lambda_max(p.objective)).epsilon(1e-6));
    }
}

TEST_CASE("SDP: contradictory equalities are infeasible")
{
    SdpProblem p;
    p.dim = 3;
    p.objective = CMat::Identity(3, 3);
    p.constraints.push_back({CMat::Identity(3, 3), Sense::Equal, 1.0});
    p.constraints.push_back({CMat::Identity(3, 3), Sense::Equal, 2.0});
    REQUIRE(solve_sdp(p).status == SdpStatus::Infeasible);
}

TEST_CASE("SDP: rank-one optimum")
{
    std::mt19937_64 g(6);
    std::normal_distribution<double> nd;
    CVec v(6);
    for (int i = 0; i < 6; ++i)
        v(i) = cplx(nd(g), nd(g));
    SdpProblem p;
    p.dim = 6;
    p.objective = v * v.adjoint();
    p.constraints.push_back({CMat::Identity(6, 6), Sense::Equal, 1.0});
    const SdpSolution s = solve_sdp(p);
    REQUIRE(spectral_norm(s.X) / nuclear_norm(s.X) >= 1.0 - 1e-6);
    REQUIRE(s.objective == Approx(v.squaredNorm()).epsilon(1e-7));
}

TEST_CASE("SDP: inequality rows and dual signs")
{
    // maximize Tr(C X) with Tr(X) <= 2 and X_11 >= 0.5
    std::mt19937_64 g(7);
    SdpProblem p;
    p.dim = 4;
    p.objective = random_hermitian(4, g);
    p.constraints.push_back({CMat::Identity(4, 4), Sense::LessEqual, 2.0});
    CMat E = CMat::Zero(4, 4);
    E(0, 0) = 1.0;
    p.constraints.push_back({E, Sense::GreaterEqual, 0.5});
    const SdpSolution s = solve_sdp(p);
    REQUIRE(s.status == SdpStatus::Optimal);
    REQUIRE(s.X.trace().real() <= 2.0 + 1e-6);
    REQUIRE(s.X(0, 0).real() >= 0.5 - 1e-6);
    REQUIRE(s.kkt.max() <= 1e-7);
    for (int i = 0; i < s.duals.size(); ++i)
        REQUIRE(s.duals(i) >= -1e-8);
    Eigen::SelfAdjointEigenSolver<CMat> es(s.X);
    REQUIRE(es.eigenvalues().minCoeff() >= -1e-8);
}

TEST_CASE("SDP: malformed problems are rejected")
{
    SdpProblem p;
    p.dim = 2;
    p.objective = CMat::Identity(3, 3);
    REQUIRE_THROWS(solve_sdp(p));
}

TEST_CASE("SDP text dump")
{
    SdpProblem p;
    p.dim = 2;
    p.objective = CMat::Identity(2, 2);
    p.constraints.push_back({CMat::Identity(2, 2), Sense::Equal, 1.0});
    std::ostringstream os;
    write_sdp_text(os, p);
    REQUIRE(os.str().rfind("leoris-sdp 1\n", 0) == 0);
    REQUIRE(os.str().find("constraint 0 eq 1") != std::string::npos);
}

TEST_CASE("Schur complement: parallel and serial kernels agree")
{
    std::mt19937_64 g(8);
    for (int n : {4, 10, 24})
    {
        const RMat Wh = random_hermitian(n, g).real();
        const RMat W = Wh * Wh.transpose() + RMat::Identity(n, n);
        std::vector<kernels::SymConstraint> A;
        for (int i = 0; i < n; ++i)
        {
            kernels::SymConstraint c;
            if (i % 3 == 0)
            {
                c.diagonal = true;
                c.diag = RVec::Zero(n);
                c.diag(i) = 1.0;
            }
            else
            {
                const RMat M = random_hermitian(n, g).real();
                c.dense = M;
            }
            A.push_back(c);
        }
        const RMat par = kernels::schur_complement(W, A);
        const RMat ser = kernels::schur_complement_serial(W, A);
        REQUIRE((par - ser).norm() <= 1e-12 * ser.norm());
        REQUIRE((par - par.transpose()).norm() <= 1e-12 * par.norm());

        RVec y(n);
        for (int i = 0; i < n; ++i)
            y(i) = 0.1 * i - 1.0;
        const RMat adj = kernels::adjoint_constraints(A, y, n);
        const RVec ax = kernels::apply_constraints(A, W);
        REQUIRE(ax.dot(y) == Approx((adj.array() * W.array()).sum()).epsilon(1e-12));
    }
}
