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

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace leoris
{

bool is_hermitian(const CMat &H, double rel_tol)
{
    if (H.rows() != H.cols())
        return false;
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    return (H - H.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

HermitianEigen hermitian_eig(const CMat &H)
{
    if (!is_hermitian(H, 1e-9))
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
    const CMat Hs = 0.5 * (H + H.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(Hs);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigensolver failed");

    // Eigen returns ascending order.
    HermitianEigen out;
    out.values = es.eigenvalues().reverse();
    out.vectors = es.eigenvectors().rowwise().reverse();
    return out;
}

RMat complex_to_real_embed(const CMat &H)
{
    const Eigen::Index n = H.rows();
    RMat E(2 * n, 2 * n);
    E.topLeftCorner(n, n) = H.real();
    E.topRightCorner(n, n) = -H.imag();
    E.bottomLeftCorner(n, n) = H.imag();
    E.bottomRightCorner(n, n) = H.real();
    return E;
}

CMat real_to_complex(const RMat &X)
{
    const Eigen::Index n = X.rows() / 2;
    const RMat re = 0.5 * (X.topLeftCorner(n, n) + X.bottomRightCorner(n, n));
    const RMat im = 0.5 * (X.bottomLeftCorner(n, n) - X.topRightCorner(n, n));
    CMat out(n, n);
    out.real() = re;
    out.imag() = im;
    return out;
}

double nuclear_norm(const CMat &H)
{
    return hermitian_eig(H).values.cwiseAbs().sum();
}

double spectral_norm(const CMat &H)
{
    return hermitian_eig(H).values.cwiseAbs().maxCoeff();
}

} // namespace leoris
