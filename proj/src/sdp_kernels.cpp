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

#include "leoris/sdp_kernels.hpp"

namespace leoris::kernels
{

double inner(const SymConstraint &a, const RMat &X)
{
    if (a.diagonal)
        return a.diag.dot(X.diagonal());
    return (a.dense.array() * X.array()).sum();
}

RVec apply_constraints(const std::vector<SymConstraint> &A, const RMat &X)
{
    RVec out(static_cast<Eigen::Index>(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = inner(A[i], X);
    return out;
}

RMat adjoint_constraints(const std::vector<SymConstraint> &A, const RVec &y, Eigen::Index n)
{
    RMat S = RMat::Zero(n, n);
    for (std::size_t i = 0; i < A.size(); ++i)
    {
        const double yi = y(static_cast<Eigen::Index>(i));
        if (yi == 0.0)
            continue;
        if (A[i].diagonal)
            S.diagonal() += yi * A[i].diag;
        else
            S += yi * A[i].dense;
    }
    return S;
}

RMat schur_complement(const RMat &W, const std::vector<SymConstraint> &A)
{
    const int m = static_cast<int>(A.size());
    RMat M(m, m);

    // W A_j W for dense constraints; (W o W) d_j for diagonal ones.
    std::vector<RMat> WAW(m);
    std::vector<RVec> WWd(m);
    const RMat WW = W.cwiseProduct(W);

#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < m; ++j)
    {
        if (A[j].diagonal)
            WWd[j] = WW * A[j].diag;
        else
            WAW[j] = W * A[j].dense * W;
    }

#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < m; ++j)
    {
        for (int i = 0; i <= j; ++i)
        {
            double v;
            if (A[j].diagonal)
                v = A[i].diagonal ? A[i].diag.dot(WWd[j]) : A[j].diag.dot(WAW[i].diagonal());
            else
                v = inner(A[i], WAW[j]);
            M(i, j) = v;
            M(j, i) = v;
        }
    }
    return M;
}

RMat schur_complement_serial(const RMat &W, const std::vector<SymConstraint> &A)
{
    const int m = static_cast<int>(A.size());
    const Eigen::Index n = W.rows();
    RMat M(m, m);
    for (int j = 0; j < m; ++j)
    {
        RMat Aj = A[j].diagonal ? RMat(A[j].diag.asDiagonal()) : A[j].dense;
        const RMat WAjW = W * Aj * W;
        for (int i = 0; i <= j; ++i)
        {
            double v = 0.0;
            if (A[i].diagonal)
            {
                for (Eigen::Index p = 0; p < n; ++p)
                    v += A[i].diag(p) * WAjW(p, p);
            }
            else
            {
                for (Eigen::Index q = 0; q < n; ++q)
                    for (Eigen::Index p = 0; p < n; ++p)
                        v += A[i].dense(p, q) * WAjW(p, q);
            }
            M(i, j) = v;
            M(j, i) = v;
        }
    }
    return M;
}

} // namespace leoris::kernels
